//! Elementary constructions: Cayley graphs, inflation, induction, and the
//! subdivided simplex on a group.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupSet};

use super::{GCWComplex, Provenance};

/// One free vertex orbit and one free edge orbit from `e` to `s` for every
/// non-identity `s`.
pub fn cayley_one_complex(k: Arc<FiniteGroup>) -> Result<GCWComplex> {
    let trivial = SubgroupSet::trivial(k.order());
    let mut x = GCWComplex::new(k.clone());
    x.attach(0, trivial.clone(), &[], Provenance::Base)?;
    for s in 1..k.order() {
        x.attach(1, trivial.clone(), &[(0, s, 1), (0, 0, -1)], Provenance::Base)?;
    }
    Ok(x)
}

fn relabel(
    x: &GCWComplex,
    target: Arc<FiniteGroup>,
    isotropy: impl Fn(&SubgroupSet) -> SubgroupSet,
    element: impl Fn(usize) -> usize,
    provenance: impl Fn(Provenance) -> Provenance,
) -> Result<GCWComplex> {
    let mut out = GCWComplex::new(target.clone());
    for dim in 0..(x.dimension() + 1) as usize {
        for cell in x.cells(dim) {
            let boundary: Vec<(usize, usize, i64)> = cell
                .boundary
                .iter()
                .map(|t| {
                    let lower = &out.cells(dim - 1)[t.cell];
                    (t.cell, lower.cosets().coset_of(element(t.element)), t.coeff)
                })
                .collect();
            out.attach(dim, isotropy(&cell.isotropy), &boundary, provenance(cell.provenance))?;
        }
    }
    Ok(out)
}

/// Pulls a complex over `N/P` back to `N` along `projection`; isotropy
/// groups become preimages.
pub fn inflate(x: &GCWComplex, n: Arc<FiniteGroup>, projection: &[usize]) -> Result<GCWComplex> {
    if projection.len() != n.order() {
        return Err(Error::Input("projection does not match the group".into()));
    }
    let q = x.group().clone();
    let mut lift = vec![usize::MAX; q.order()];
    for (g, &image) in projection.iter().enumerate() {
        if image >= q.order() {
            return Err(Error::Input("projection leaves the quotient".into()));
        }
        if lift[image] == usize::MAX {
            lift[image] = g;
        }
    }
    if lift.contains(&usize::MAX) || (0..n.order()).any(|a| {
        (0..n.order()).any(|b| projection[n.mul(a, b)] != q.mul(projection[a], projection[b]))
    }) {
        return Err(Error::Input("projection is not a surjective homomorphism".into()));
    }
    let n2 = n.clone();
    relabel(
        x,
        n,
        |k| SubgroupSet::from_elements(n2.order(), (0..n2.order()).filter(|&g| k.contains(projection[g]))),
        |e| lift[e],
        |p| p,
    )
}

/// `G ×_H X` for a complex `X` over `H`, where `embedding` sends the
/// elements of `H` into `G`. Cells keep their ids; orbits grow by `[G:H]`.
pub fn induce(g: Arc<FiniteGroup>, embedding: &[usize], x: &GCWComplex) -> Result<GCWComplex> {
    let h = x.group().clone();
    if embedding.len() != h.order() || embedding.iter().any(|&e| e >= g.order()) {
        return Err(Error::Input("embedding does not match the groups".into()));
    }
    let mut seen = vec![false; g.order()];
    for &e in embedding {
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::Input("H is not a subgroup: the embedding is not injective".into()));
        }
    }
    for a in 0..h.order() {
        for b in 0..h.order() {
            if embedding[h.mul(a, b)] != g.mul(embedding[a], embedding[b]) {
                return Err(Error::Input("H is not a subgroup: the embedding is not a homomorphism".into()));
            }
        }
    }
    let order = g.order();
    let same = embedding.len() == order;
    relabel(
        x,
        g,
        |k| SubgroupSet::from_elements(order, k.elements().map(|e| embedding[e])),
        |e| embedding[e],
        |p| if same || p != Provenance::Base { p } else { Provenance::Induced },
    )
}

/// Barycentric subdivision of the full simplex on `G` with the translation
/// action: `k`-cells are chains `S₀ ⊂ … ⊂ S_k` of nonempty subsets.
pub fn subdivided_simplex(g: Arc<FiniteGroup>) -> Result<GCWComplex> {
    let n = g.order();
    if n > 5 {
        return Err(Error::CapExceeded { what: "subdivided simplex group order", requested: n, limit: 5 });
    }
    let translate = |x: usize, s: u32| -> u32 {
        (0..n).filter(|&i| s >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << g.mul(x, i))
    };
    let act = |x: usize, chain: &[u32]| -> Vec<u32> { chain.iter().map(|&s| translate(x, s)).collect() };
    let full: u32 = (1u32 << n) - 1;
    let mut chains: Vec<Vec<Vec<u32>>> = vec![(1..=full).map(|s| vec![s]).collect()];
    loop {
        let next: Vec<Vec<u32>> = chains
            .last()
            .unwrap()
            .iter()
            .flat_map(|c| {
                let top = *c.last().unwrap();
                (1..=full).filter(move |&t| t != top && t & top == top).map(move |t| {
                    let mut d = c.clone();
                    d.push(t);
                    d
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        chains.push(next);
    }
    let mut x = GCWComplex::new(g.clone());
    // representative chain → (cell id); orbit reps are least in their orbit
    let mut reps: Vec<BTreeMap<Vec<u32>, usize>> = Vec::new();
    for (dim, list) in chains.iter().enumerate() {
        let mut table = BTreeMap::new();
        let mut sorted = list.clone();
        sorted.sort();
        for chain in sorted {
            let least = (0..n).map(|y| act(y, &chain)).min().unwrap();
            if least != chain {
                continue;
            }
            let isotropy = SubgroupSet::from_elements(n, (0..n).filter(|&y| act(y, &chain) == chain));
            let mut boundary = Vec::new();
            if dim > 0 {
                for i in 0..=dim {
                    let mut face = chain.clone();
                    face.remove(i);
                    let (y, rep) = (0..n)
                        .map(|y| (y, act(g.inv(y), &face)))
                        .min_by(|a, b| a.1.cmp(&b.1))
                        .unwrap();
                    let cell = reps[dim - 1][&rep];
                    let coset = x.cells(dim - 1)[cell].cosets().coset_of(y);
                    boundary.push((cell, coset, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            let id = x.attach(dim, isotropy, &boundary, Provenance::Base)?;
            table.insert(chain, id);
        }
        reps.push(table);
    }
    Ok(x)
}
