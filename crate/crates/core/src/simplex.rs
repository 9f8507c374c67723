//! Skeleta of simplices on a group, their fixed subcomplexes, and the
//! combinatorial identification of those fixed sets with smaller skeleta.

use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{CosetTable, FiniteGroup, SubgroupSet};
use crate::homology::{homology, ChainComplex, Coefficients, SparseMatrix};

/// A simplicial complex whose vertices are blocks of a vertex set.
///
/// For an ordinary complex every block is a single vertex. For the fixed set
/// of a subgroup acting on a skeleton, the blocks are cosets: a face is a
/// union of blocks and its dimension is the number of blocks minus one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletalComplex {
    vertex_count: usize,
    blocks: Vec<Vec<usize>>,
    /// `faces[k]` holds the k-faces as consecutive sorted block lists of length `k + 1`.
    faces: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    /// Largest `c` with reduced homology vanishing through degree `c`;
    /// −2 for the empty complex, −1 for a disconnected one.
    Finite(i64),
    /// The complex is a full simplex.
    ContractibleByFullness,
    /// All reduced homology vanishes but the complex is not a full simplex.
    Acyclic,
}

fn face_budget(blocks: usize, max_size: usize) -> u128 {
    (1..=max_size.min(blocks) as u64).map(|j| binomial(blocks as u64, j)).sum()
}

/// Visits every `j`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, j: usize, mut visit: impl FnMut(&[u32])) {
    if j == 0 || j > n {
        return;
    }
    let mut combo: Vec<u32> = (0..j as u32).collect();
    loop {
        visit(&combo);
        let mut i = j;
        while i > 0 && combo[i - 1] as usize == n - j + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        combo[i - 1] += 1;
        for k in i..j {
            combo[k] = combo[k - 1] + 1;
        }
    }
}

impl SkeletalComplex {
    fn from_blocks(vertex_count: usize, blocks: Vec<Vec<usize>>, max_size: usize, caps: &Caps) -> Result<Self> {
        let max_size = max_size.min(blocks.len());
        let budget = face_budget(blocks.len(), max_size);
        if budget > caps.faces as u128 {
            return Err(Error::CapExceeded {
                what: "face count",
                requested: usize::try_from(budget).unwrap_or(usize::MAX),
                limit: caps.faces,
            });
        }
        let faces = (1..=max_size)
            .map(|j| {
                let mut flat = Vec::with_capacity(j * binomial(blocks.len() as u64, j as u64) as usize);
                for_each_combination(blocks.len(), j, |c| flat.extend_from_slice(c));
                flat
            })
            .collect();
        Ok(SkeletalComplex { vertex_count, blocks, faces })
    }

    /// All subsets of size at most `n + 1` of `m` vertices.
    pub fn skeleton(m: usize, n: usize, caps: &Caps) -> Result<Self> {
        Self::from_blocks(m, (0..m).map(|v| vec![v]).collect(), n + 1, caps)
    }

    /// The empty complex on `m` vertices.
    pub fn empty(m: usize) -> Self {
        SkeletalComplex { vertex_count: m, blocks: (0..m).map(|v| vec![v]).collect(), faces: Vec::new() }
    }

    /// The fixed set of `h` acting on the `n`-skeleton of the simplex on `G`
    /// by right translation: faces are unions of left cosets `gH` with at
    /// most `n + 1` elements.
    pub fn fixed_subcomplex(g: &FiniteGroup, h: &SubgroupSet, n: usize, caps: &Caps) -> Result<Self> {
        let cosets = g.left_cosets(h);
        let blocks = (0..cosets.count()).map(|c| cosets.members(c).to_vec()).collect();
        Self::from_blocks(g.order(), blocks, (n + 1) / h.size(), caps)
    }

    /// Downward closure of the given facets, on singleton blocks.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>], caps: &Caps) -> Result<Self> {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<u32>>> = Vec::new();
        for facet in facets {
            let mut f: Vec<u32> = facet.iter().map(|&v| v as u32).collect();
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::Input(format!("facet {facet:?} uses a vertex outside 0..{vertex_count}")));
            }
            if f.len() > 24 {
                return Err(Error::CapExceeded { what: "facet size", requested: f.len(), limit: 24 });
            }
            for mask in 1u32..(1 << f.len()) {
                let sub: Vec<u32> = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                let k = sub.len() - 1;
                if by_dim.len() <= k {
                    by_dim.resize_with(k + 1, Default::default);
                }
                by_dim[k].insert(sub);
            }
            let total: usize = by_dim.iter().map(|s| s.len()).sum();
            caps.check("face count", total, caps.faces)?;
        }
        let faces = by_dim.into_iter().map(|set| set.into_iter().flatten().collect()).collect();
        Ok(SkeletalComplex { vertex_count, blocks: (0..vertex_count).map(|v| vec![v]).collect(), faces })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Top dimension, −1 when empty.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn face_count(&self) -> usize {
        (0..self.faces.len()).map(|k| self.faces_in_dim(k)).sum()
    }

    pub fn faces_in_dim(&self, k: usize) -> usize {
        self.faces.get(k).map_or(0, |f| f.len() / (k + 1))
    }

    /// The `i`-th `k`-face as a block list.
    pub fn face(&self, k: usize, i: usize) -> &[u32] {
        &self.faces[k][i * (k + 1)..(i + 1) * (k + 1)]
    }

    pub fn face_vertices(&self, k: usize, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.face(k, i).iter().flat_map(|&b| self.blocks[b as usize].iter().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn find_face(&self, face: &[u32]) -> Option<usize> {
        let k = face.len().checked_sub(1)?;
        let flat = self.faces.get(k)?;
        let count = flat.len() / (k + 1);
        let (mut lo, mut hi) = (0, count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * (k + 1)..(mid + 1) * (k + 1)].cmp(face) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// True when every subset of the used blocks is a face.
    pub fn is_full_simplex(&self) -> bool {
        let used = self.faces_in_dim(0);
        used > 0 && self.faces.len() == used && self.face_count() as u128 == face_budget(used, used)
    }

    /// Faces as sorted vertex arrays, dimension by dimension.
    pub fn dump(&self) -> Vec<Vec<usize>> {
        (0..self.faces.len())
            .flat_map(|k| (0..self.faces_in_dim(k)).map(move |i| (k, i)))
            .map(|(k, i)| self.face_vertices(k, i))
            .collect()
    }

    /// Simplicial chain complex with the orientation given by block order.
    pub fn chain_complex(&self, coefficients: Coefficients, reduced: bool) -> Result<ChainComplex> {
        let top = self.faces.len();
        let mut dims: Vec<usize> = Vec::with_capacity(top + 1);
        let mut boundaries = Vec::with_capacity(top);
        if reduced {
            dims.push(1);
        }
        for k in 0..top {
            let count = self.faces_in_dim(k);
            if k == 0 {
                if reduced {
                    boundaries.push(SparseMatrix::from_columns(1, vec![vec![(0, 1)]; count]));
                }
            } else {
                let mut columns = Vec::with_capacity(count);
                let mut sub = Vec::with_capacity(k);
                for i in 0..count {
                    let face = self.face(k, i);
                    let mut col = Vec::with_capacity(k + 1);
                    for drop in 0..=k {
                        sub.clear();
                        sub.extend(face.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &b)| b));
                        let row = self.find_face(&sub).ok_or_else(|| {
                            Error::ConstructionDefect(format!("face {face:?} is missing the facet {sub:?}"))
                        })?;
                        col.push((row as u32, if drop % 2 == 0 { 1 } else { -1 }));
                    }
                    columns.push(col);
                }
                boundaries.push(SparseMatrix::from_columns(self.faces_in_dim(k - 1), columns));
            }
            dims.push(count);
        }
        ChainComplex::new(coefficients, if reduced { -1 } else { 0 }, dims, boundaries)
    }

    pub fn connectivity(&self, caps: &Caps) -> Result<Connectivity> {
        if self.faces.is_empty() {
            return Ok(Connectivity::Finite(-2));
        }
        if self.is_full_simplex() {
            return Ok(Connectivity::ContractibleByFullness);
        }
        caps.check("homology cells", self.face_count(), caps.homology_cells)?;
        let h = homology(&self.chain_complex(Coefficients::Integers, true)?)?;
        Ok(match h.first_nonzero_degree() {
            Some(d) => Connectivity::Finite(d - 1),
            None => Connectivity::Acyclic,
        })
    }
}

/// Outcome of checking the fixed-point identification for one `(G, H)` pair
/// over a range of skeleton dimensions.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointIso {
    pub group_order: usize,
    pub subgroup_order: usize,
    /// Skeleton dimensions that were checked; the rest exceeded the face cap.
    pub checked_n: Vec<usize>,
    pub skipped_n: Vec<usize>,
    /// Fixed faces examined across all checked dimensions (shared between `n`).
    pub faces: usize,
    pub equivariance_checks: usize,
    #[serde(skip)]
    cosets: CosetTable,
}

impl FixedPointIso {
    /// Face map `S ↦ {gH ⊆ S}`.
    pub fn forward(&self, face: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = face.iter().map(|&g| self.cosets.coset_of(g)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Face map `T ↦ ⋃ T`.
    pub fn backward(&self, cosets: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = cosets.iter().flat_map(|&c| self.cosets.members(c).iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// Dimension of the target skeleton on `G/H`.
    pub fn target_dimension(&self, n: usize) -> i64 {
        ((n + 1) / self.subgroup_order) as i64 - 1
    }
}

/// Checks that the `H`-fixed faces of `Δ^G_n` correspond to the faces of the
/// `(⌊(n+1)/|H|⌋ − 1)`-skeleton on `G/H`, by mutually inverse maps that
/// commute with the action of `N(H)/H`, for every `n` in `ns`.
///
/// Faces with `j` cosets belong to every `n` with `⌊(n+1)/|H|⌋ ≥ j`, so each
/// face is examined once and its verdict shared by those `n`. An `n` whose
/// fixed complex exceeds the face cap is skipped and reported.
pub fn verify_fixed_point_formula(
    g: &FiniteGroup,
    h: &SubgroupSet,
    ns: impl IntoIterator<Item = usize>,
    caps: &Caps,
) -> Result<FixedPointIso> {
    let order = g.order();
    let hs = h.size();
    let cosets = g.left_cosets(h);
    let b = cosets.count();
    let mut checked_n = Vec::new();
    let mut skipped_n = Vec::new();
    let mut max_blocks = 0;
    for n in ns {
        let j = ((n + 1) / hs).min(b);
        if face_budget(b, j) > caps.faces as u128 {
            skipped_n.push(n);
        } else {
            checked_n.push(n);
            max_blocks = max_blocks.max(j);
        }
    }

    let normalizer: Vec<usize> = g.normalizer(h).to_vec();
    let h_elems = h.to_vec();
    // x̄ acts on cosets through the least element of xH
    let coset_action: Vec<Vec<u32>> = normalizer
        .iter()
        .map(|&x| {
            let r = cosets.representative(cosets.coset_of(x));
            let r_inv = g.inv(r);
            (0..b).map(|c| cosets.coset_of(g.mul(cosets.representative(c), r_inv)) as u32).collect()
        })
        .collect();
    let inverses: Vec<usize> = normalizer.iter().map(|&x| g.inv(x)).collect();

    let mut stamp = vec![0u32; order];
    let mut generation = 0u32;
    let mut support: Vec<usize> = Vec::with_capacity(order);
    let mut image: Vec<u32> = Vec::with_capacity(b);
    let mut expected: Vec<u32> = Vec::with_capacity(b);
    let mut faces = 0usize;
    let mut checks = 0usize;
    let mut failure: Option<String> = None;

    for j in 1..=max_blocks {
        let mut previous: Option<Vec<u32>> = None;
        for_each_combination(b, j, |combo| {
            if failure.is_some() {
                return;
            }
            faces += 1;
            // the face as a vertex set
            support.clear();
            for &c in combo {
                support.extend_from_slice(cosets.members(c as usize));
            }
            support.sort_unstable();
            generation += 1;
            for &s in &support {
                stamp[s] = generation;
            }
            if support.len() != j * hs {
                failure = Some(format!("cosets {combo:?} overlap"));
                return;
            }
            if let Some(&(s, k)) = support
                .iter()
                .flat_map(|&s| h_elems.iter().map(move |&k| (s, k)))
                .find(|&(s, k)| stamp[g.mul(s, k)] != generation)
                .as_ref()
            {
                failure = Some(format!("face {support:?} is not H-invariant: {s}·{k} leaves it"));
                return;
            }
            // forward, read off the vertices
            image.clear();
            image.extend(support.iter().map(|&s| cosets.coset_of(s) as u32));
            image.sort_unstable();
            image.dedup();
            if image != combo {
                failure = Some(format!("forward({support:?}) = {image:?}, expected {combo:?}"));
                return;
            }
            // backward, by scanning the whole group
            let back_len = (0..order).filter(|&x| combo.binary_search(&(cosets.coset_of(x) as u32)).is_ok()).count();
            if back_len != support.len() || (0..order).any(|x| {
                (stamp[x] == generation) != combo.binary_search(&(cosets.coset_of(x) as u32)).is_ok()
            }) {
                failure = Some(format!("backward({combo:?}) differs from {support:?}"));
                return;
            }
            // target faces arrive in lexicographic order, so the map is a bijection onto them
            if previous.as_deref().is_some_and(|p| p >= combo) {
                failure = Some(format!("target faces out of order at {combo:?}"));
                return;
            }
            previous = Some(combo.to_vec());

            for (xi, &x_inv) in inverses.iter().enumerate() {
                checks += 1;
                image.clear();
                image.extend(support.iter().map(|&s| cosets.coset_of(g.mul(s, x_inv)) as u32));
                image.sort_unstable();
                image.dedup();
                expected.clear();
                expected.extend(combo.iter().map(|&c| coset_action[xi][c as usize]));
                expected.sort_unstable();
                if image != expected {
                    failure = Some(format!(
                        "equivariance fails for x = {} on face {support:?}: {image:?} vs {expected:?}",
                        normalizer[xi]
                    ));
                    return;
                }
            }
        });
        if let Some(msg) = failure {
            return Err(Error::InvariantViolation(format!(
                "fixed-point formula, |G| = {order}, |H| = {hs}: {msg}"
            )));
        }
        let total = binomial(b as u64, j as u64) as usize;
        let seen = faces - (1..j).map(|i| binomial(b as u64, i as u64) as usize).sum::<usize>();
        if seen != total {
            return Err(Error::InvariantViolation(format!(
                "{seen} fixed faces with {j} cosets, expected C({b}, {j}) = {total}"
            )));
        }
    }
    Ok(FixedPointIso {
        group_order: order,
        subgroup_order: hs,
        checked_n,
        skipped_n,
        faces,
        equivariance_checks: checks,
        cosets,
    })
}
