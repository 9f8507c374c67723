//! Named groups: `Cn`, `Dn` (order 2n), `Sn`, `An`, `Q8`, and products `AxB`.

use crate::config::Caps;
use crate::error::{Error, Result};

use super::{FiniteGroup, Permutation};

/// Direct products included in the default corpus.
const PRODUCTS: &[&str] = &[
    "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3", "C2xC6", "C2xC8", "C4xC4", "C2xD4", "C2xQ8", "C3xS3",
    "C3xC6", "C2xC10", "C2xA4", "C4xS3", "C3xQ8", "C5xC5", "C3xC3xC3", "C5xS3", "C3xD5", "S3xS3",
    "C3xA4", "C6xC6", "C2xS4", "C4xA4", "C5xA4",
];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
}

pub fn catalog(name: &str, caps: &Caps) -> Result<FiniteGroup> {
    let name = name.trim();
    if name.contains('x') {
        let mut factors = name.split('x');
        let first = catalog(factors.next().unwrap_or_default(), caps)?;
        return factors.try_fold(first, |acc, f| {
            let next = catalog(f, caps)?;
            caps.check("group order", acc.order() * next.order(), caps.order)?;
            Ok(acc.direct_product(&next))
        });
    }
    if name == "Q8" {
        return Ok(quaternion());
    }
    let unknown = || Error::Input(format!("unknown catalog group `{name}`"));
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let order = match family {
        'C' if n >= 1 => n,
        'D' if n >= 3 => 2 * n,
        'S' if n >= 1 => (1..=n).product(),
        'A' if n >= 1 => ((1..=n).product::<usize>() / 2).max(1),
        _ => return Err(unknown()),
    };
    if family == 'S' || family == 'A' {
        // keep the factorial from overflowing before the cap check
        if n > 10 {
            return Err(Error::CapExceeded { what: "group order", requested: usize::MAX, limit: caps.order });
        }
    }
    caps.check("group order", order, caps.order)?;
    Ok(match family {
        'C' => cyclic(n),
        'D' => dihedral(n),
        'S' => symmetric(n, caps)?,
        _ => alternating(n, caps)?,
    })
}

/// Every corpus group of order `2..=max_order`, sorted by order then name.
///
/// `D3` is left out since it coincides with `S3`.
pub fn catalog_groups(max_order: usize, caps: &Caps) -> Result<Vec<CatalogEntry>> {
    let max_order = max_order.min(caps.order);
    let mut names: Vec<(usize, String)> = Vec::new();
    names.extend((2..=max_order).map(|n| (n, format!("C{n}"))));
    names.extend((4..=max_order / 2).map(|n| (2 * n, format!("D{n}"))));
    for (name, order) in [("S3", 6), ("S4", 24), ("S5", 120), ("A4", 12), ("A5", 60), ("Q8", 8)] {
        if order <= max_order {
            names.push((order, name.to_string()));
        }
    }
    for name in PRODUCTS {
        let order = name.split('x').map(factor_order).product::<usize>();
        if order <= max_order {
            names.push((order, name.to_string()));
        }
    }
    names.sort();
    names
        .into_iter()
        .map(|(_, name)| Ok(CatalogEntry { group: catalog(&name, caps)?, name }))
        .collect()
}

fn factor_order(name: &str) -> usize {
    let n: usize = name[1..].parse().unwrap_or(0);
    match &name[..1] {
        "C" => n,
        "D" => 2 * n,
        "S" => (1..=n).product(),
        "A" => (1..=n).product::<usize>() / 2,
        _ => 8,
    }
}

fn cyclic(n: usize) -> FiniteGroup {
    let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    let labels = (0..n).map(|k| k.to_string()).collect();
    FiniteGroup::from_trusted_table(n, mul, Some(labels))
}

/// `r^i s^j` sits at index `i + n j`.
fn dihedral(n: usize) -> FiniteGroup {
    let order = 2 * n;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (a, b) = (x % n, x / n);
        for y in 0..order {
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            mul[x * order + y] = (rot + n * ((b + d) % 2)) as u32;
        }
    }
    let labels = (0..order)
        .map(|x| match (x % n, x / n) {
            (0, 0) => "e".to_string(),
            (0, _) => "s".to_string(),
            (i, 0) => format!("r^{i}"),
            (i, _) => format!("r^{i}s"),
        })
        .collect();
    FiniteGroup::from_trusted_table(order, mul, Some(labels))
}

fn symmetric(n: usize, caps: &Caps) -> Result<FiniteGroup> {
    if n < 2 {
        return Ok(FiniteGroup::trivial());
    }
    let swap = Permutation::parse_cycles("(1 2)", n)?;
    let cycle = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    FiniteGroup::from_permutations(&[swap, cycle], caps)
}

fn alternating(n: usize, caps: &Caps) -> Result<FiniteGroup> {
    if n < 3 {
        return Ok(FiniteGroup::trivial());
    }
    let gens = (3..=n)
        .map(|k| Permutation::parse_cycles(&format!("(1 2 {k})"), n))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_permutations(&gens, caps)
}

/// Index `2u + sign` for the unit `u ∈ {1, i, j, k}`.
fn quaternion() -> FiniteGroup {
    // (sign, unit) of u * v
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mul = vec![0u32; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (sign, unit) = UNITS[x / 2][y / 2];
            mul[x * 8 + y] = (2 * unit + ((x + y + sign) % 2)) as u32;
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_trusted_table(8, mul, Some(labels))
}
