use std::collections::HashMap;
use std::fmt;

use crate::config::Caps;
use crate::error::{Error, Result};

use super::FiniteGroup;

/// A permutation of `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    /// From a 0-based image array; rejects non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Input(format!("{images:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Permutation(images.into_iter().map(|x| x as u32).collect()))
    }

    /// From a 1-based one-line image array such as `[2, 3, 1]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Input(format!("one-line permutation {images:?} must be 1-based")));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Parses cycle notation such as `(1 2)(3 4)` or `(1,2,3)`; points are 1-based.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest
                .find(')')
                .filter(|_| rest.starts_with('('))
                .ok_or_else(|| Error::Input(format!("malformed cycle notation `{text}`")))?;
            let points = rest[1..body_end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(p) if (1..=degree).contains(&p) => Ok(p - 1),
                    _ => Err(Error::Input(format!("bad point `{s}` in `{text}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let mut sorted = points.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("repeated point in `{text}`")));
            }
            // apply this cycle after what has been read so far
            let mut cycle = Permutation::identity(degree);
            for (i, &p) in points.iter().enumerate() {
                cycle.0[p] = points[(i + 1) % points.len()] as u32;
            }
            let prev = Permutation::from_images(images)?;
            images = cycle.compose(&prev).0.into_iter().map(|x| x as usize).collect();
            rest = rest[body_end + 1..].trim_start();
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    fn padded(&self, n: usize) -> Permutation {
        let mut images = self.0.clone();
        images.extend(self.0.len() as u32..n as u32);
        Permutation(images)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            let pts: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FiniteGroup {
    /// Closure of the generators under composition.
    ///
    /// Elements are sorted by image array, so the identity comes first.
    /// Generators of different degrees are padded with fixed points.
    pub fn from_permutations(generators: &[Permutation], caps: &Caps) -> Result<FiniteGroup> {
        let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
        let gens: Vec<Permutation> = generators.iter().map(|g| g.padded(degree)).collect();
        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, usize> = HashMap::from([(identity.clone(), 0)]);
        let mut elements = vec![identity];
        let mut cursor = 0;
        while cursor < elements.len() {
            for g in &gens {
                let next = g.compose(&elements[cursor]);
                if !index.contains_key(&next) {
                    if elements.len() + 1 > caps.order {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            requested: elements.len() + 1,
                            limit: caps.order,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            cursor += 1;
        }
        elements.sort();
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone(), i);
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * n + b] = index[&pa.compose(pb)] as u32;
            }
        }
        let labels = elements.iter().map(ToString::to_string).collect();
        Ok(FiniteGroup::from_trusted_table(n, mul, Some(labels)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn cycle_parsing_and_display() {
        let p = cyc("(1 2)(3 4)", 4);
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(cyc("(1,2,3)", 3).to_string(), "(1 2 3)");
        assert_eq!(cyc("", 3).to_string(), "()");
        // (1 2)(2 3) read left to right: apply (1 2) first
        assert_eq!(cyc("(1 2)(2 3)", 3), cyc("(2 3)", 3).compose(&cyc("(1 2)", 3)));
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
    }

    #[test]
    fn one_line() {
        let p = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)");
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
    }

    #[test]
    fn small_closures() {
        let caps = Caps::default();
        let s3 = FiniteGroup::from_permutations(&[cyc("(1 2)", 3), cyc("(1 2 3)", 3)], &caps).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), "()");
        s3.validate(&caps).unwrap();
        let c4 = FiniteGroup::from_permutations(&[cyc("(1 2 3 4)", 4)], &caps).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        let a4 = FiniteGroup::from_permutations(
            &[cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4), cyc("(1 2 3)", 4)],
            &caps,
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn mixed_degrees_are_padded() {
        let caps = Caps::default();
        let g = FiniteGroup::from_permutations(
            &[Permutation::from_one_line(&[2, 1]).unwrap(), Permutation::from_one_line(&[1, 2, 4, 3]).unwrap()],
            &caps,
        )
        .unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn closure_respects_cap() {
        let caps = Caps { order: 10, ..Caps::default() };
        let err = FiniteGroup::from_permutations(&[cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)], &caps).unwrap_err();
        assert!(err.to_string().contains("cap exceeded"), "{err}");
    }
}
