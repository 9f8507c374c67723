use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{CosetTable, FiniteGroup, SubgroupSet};
use crate::homology::{ChainComplex, Coefficients, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Base,
    Induced,
    Attached { stage: usize },
    Completion,
}

/// `coeff · (element · cell)` in the boundary of an orbit representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryTerm {
    pub element: usize,
    pub cell: usize,
    pub coeff: i64,
}

#[derive(Clone, Debug)]
pub struct OrbitCell {
    pub isotropy: SubgroupSet,
    /// Boundary of the representative, one term per lower cell point, with
    /// `element` the least member of its coset.
    pub boundary: Vec<BoundaryTerm>,
    pub provenance: Provenance,
    cosets: Arc<CosetTable>,
}

impl OrbitCell {
    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    /// Number of cells in the orbit.
    pub fn orbit_size(&self) -> usize {
        self.cosets.count()
    }
}

/// A point of the underlying complex: the coset `gK` of an orbit cell.
pub type CellPoint = (usize, usize);

/// An equivariant CW complex held at chain level: orbit cells `G/K` in each
/// dimension and the boundary of one representative per orbit.
#[derive(Clone, Debug)]
pub struct GCWComplex {
    group: Arc<FiniteGroup>,
    cells: Vec<Vec<OrbitCell>>,
    coset_cache: BTreeMap<SubgroupSet, Arc<CosetTable>>,
}

/// A chain complex on the fixed points of a subgroup, with the cell point
/// behind each basis element.
#[derive(Clone, Debug)]
pub struct FixedComplex {
    pub chain: ChainComplex,
    /// `basis[k]` lists the fixed points of dimension `k`.
    pub basis: Vec<Vec<CellPoint>>,
    index: Vec<HashMap<CellPoint, usize>>,
}

impl FixedComplex {
    pub fn index_of(&self, dim: usize, point: CellPoint) -> Option<usize> {
        self.index.get(dim)?.get(&point).copied()
    }
}

#[derive(Serialize)]
struct CellDump<'a> {
    id: usize,
    isotropy: Vec<usize>,
    provenance: &'a Provenance,
    boundary: Vec<(usize, usize, i64)>,
}

impl GCWComplex {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        GCWComplex { group, cells: Vec::new(), coset_cache: BTreeMap::new() }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Top dimension, −1 when there are no cells.
    pub fn dimension(&self) -> i64 {
        self.cells.len() as i64 - 1
    }

    pub fn cells(&self, dim: usize) -> &[OrbitCell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn orbit_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Cells of the underlying space.
    pub fn point_count(&self) -> usize {
        self.cells.iter().flatten().map(OrbitCell::orbit_size).sum()
    }

    fn cosets_for(&mut self, k: &SubgroupSet) -> Arc<CosetTable> {
        if let Some(t) = self.coset_cache.get(k) {
            return t.clone();
        }
        let t = Arc::new(self.group.left_cosets(k));
        self.coset_cache.insert(k.clone(), t.clone());
        t
    }

    /// Boundary of `x · cell` as points of the dimension below.
    fn translated_boundary(&self, dim: usize, cell: usize, x: usize) -> Vec<(CellPoint, i64)> {
        let g = &self.group;
        self.cells[dim][cell]
            .boundary
            .iter()
            .map(|t| {
                let target = &self.cells[dim - 1][t.cell];
                ((t.cell, target.cosets.coset_of(g.mul(x, t.element))), t.coeff)
            })
            .collect()
    }

    /// Appends an orbit cell whose representative has the given boundary,
    /// written as `(lower cell, coset, coefficient)`. Returns the cell id.
    ///
    /// Rejects boundaries that are not invariant under the isotropy group
    /// or whose own boundary is nonzero.
    pub fn attach(
        &mut self,
        dim: usize,
        isotropy: SubgroupSet,
        boundary: &[(usize, usize, i64)],
        provenance: Provenance,
    ) -> Result<usize> {
        let g = self.group.clone();
        if isotropy.ambient_order() != g.order() || !g.is_subgroup(&isotropy) {
            return Err(Error::ConstructionDefect("isotropy is not a subgroup of the acting group".into()));
        }
        if dim > self.cells.len() {
            return Err(Error::ConstructionDefect(format!("no cells of dimension {} to attach to", dim - 1)));
        }
        if dim == 0 && !boundary.is_empty() {
            return Err(Error::ConstructionDefect("0-cells have empty boundary".into()));
        }
        let id = self.cells.get(dim).map_or(0, Vec::len);
        let mut merged: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(cell, coset, coeff) in boundary {
            let lower = self.cells[dim - 1]
                .get(cell)
                .ok_or_else(|| Error::ConstructionDefect(format!("boundary names missing cell {cell} in dimension {}", dim - 1)))?;
            if coset >= lower.orbit_size() {
                return Err(Error::ConstructionDefect(format!("coset {coset} out of range for cell {cell}")));
            }
            *merged.entry((cell, coset)).or_default() += coeff;
        }
        let terms: Vec<BoundaryTerm> = merged
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((cell, coset), coeff)| BoundaryTerm {
                element: self.cells[dim - 1][cell].cosets.representative(coset),
                cell,
                coeff,
            })
            .collect();
        let cosets = self.cosets_for(&isotropy);
        if self.cells.len() == dim {
            self.cells.push(Vec::new());
        }
        self.cells[dim].push(OrbitCell { isotropy, boundary: terms, provenance, cosets });
        if let Err(e) = self.check_cell(dim, id) {
            self.cells[dim].pop();
            if self.cells[dim].is_empty() {
                self.cells.pop();
            }
            return Err(e);
        }
        Ok(id)
    }

    fn check_cell(&self, dim: usize, id: usize) -> Result<()> {
        let cell = &self.cells[dim][id];
        let mut base = self.translated_boundary(dim, id, 0);
        base.sort_unstable();
        for k in cell.isotropy.elements() {
            let mut moved = self.translated_boundary(dim, id, k);
            moved.sort_unstable();
            if moved != base {
                return Err(Error::ConstructionDefect(format!(
                    "boundary of cell {id} in dimension {dim} is not invariant under isotropy element {k}"
                )));
            }
        }
        if dim == 1 && cell.boundary.iter().map(|t| t.coeff).sum::<i64>() != 0 {
            return Err(Error::ConstructionDefect(format!(
                "boundary of cell {id} in dimension 1 has nonzero augmentation"
            )));
        }
        if dim >= 2 {
            let mut total: BTreeMap<CellPoint, i64> = BTreeMap::new();
            for t in &cell.boundary {
                for ((c, j), a) in self.translated_boundary(dim - 1, t.cell, t.element) {
                    *total.entry((c, j)).or_default() += a * t.coeff;
                }
            }
            if total.values().any(|&v| v != 0) {
                return Err(Error::ConstructionDefect(format!(
                    "boundary of boundary is nonzero on cell {id} in dimension {dim}"
                )));
            }
        }
        Ok(())
    }

    /// Re-checks every cell: isotropy invariance and `∂∂ = 0`.
    pub fn validate(&self) -> Result<()> {
        for dim in 0..self.cells.len() {
            for id in 0..self.cells[dim].len() {
                self.check_cell(dim, id)?;
            }
        }
        Ok(())
    }

    /// Appends the cells of `other`, which must act through the same group.
    pub fn disjoint_union(&self, other: &GCWComplex) -> Result<GCWComplex> {
        if *self.group != *other.group {
            return Err(Error::ConstructionDefect("disjoint union of complexes over different groups".into()));
        }
        let mut out = self.clone();
        for dim in 0..other.cells.len() {
            let below = if dim == 0 { 0 } else { self.cells(dim - 1).len() };
            for cell in &other.cells[dim] {
                let boundary: Vec<(usize, usize, i64)> = cell
                    .boundary
                    .iter()
                    .map(|t| {
                        let lower = &other.cells[dim - 1][t.cell];
                        (t.cell + below, lower.cosets.coset_of(t.element), t.coeff)
                    })
                    .collect();
                out.attach(dim, cell.isotropy.clone(), &boundary, cell.provenance)?;
            }
        }
        Ok(out)
    }

    /// Cellular chain complex of the fixed set of `h`; the cell `gK` is fixed
    /// exactly when `g⁻¹hg ∈ K` for all `h`.
    pub fn fixed_complex(
        &self,
        h: &SubgroupSet,
        coefficients: Coefficients,
        reduced: bool,
        caps: &Caps,
    ) -> Result<FixedComplex> {
        let g = &self.group;
        if h.ambient_order() != g.order() {
            return Err(Error::Input("subgroup of a different group".into()));
        }
        let h_elems = h.to_vec();
        caps.check("homology cells", self.point_count(), caps.homology_cells)?;
        let mut basis: Vec<Vec<CellPoint>> = Vec::with_capacity(self.cells.len());
        let mut index: Vec<HashMap<CellPoint, usize>> = Vec::with_capacity(self.cells.len());
        for cells in &self.cells {
            let mut pts = Vec::new();
            let mut idx = HashMap::new();
            for (c, cell) in cells.iter().enumerate() {
                for j in 0..cell.orbit_size() {
                    let r = cell.cosets.representative(j);
                    if h_elems.iter().all(|&x| cell.cosets.coset_of(g.mul(x, r)) == j) {
                        idx.insert((c, j), pts.len());
                        pts.push((c, j));
                    }
                }
            }
            basis.push(pts);
            index.push(idx);
        }
        let mut dims: Vec<usize> = Vec::new();
        let mut boundaries = Vec::new();
        if reduced {
            dims.push(1);
        }
        for (dim, pts) in basis.iter().enumerate() {
            if dim == 0 {
                if reduced {
                    boundaries.push(SparseMatrix::from_columns(1, vec![vec![(0, 1)]; pts.len()]));
                }
            } else {
                let mut columns = Vec::with_capacity(pts.len());
                for &(c, j) in pts {
                    let rep = self.cells[dim][c].cosets.representative(j);
                    let mut col = Vec::new();
                    for (point, a) in self.translated_boundary(dim, c, rep) {
                        let row = index[dim - 1].get(&point).ok_or_else(|| {
                            Error::ConstructionDefect(format!(
                                "boundary of cell {c} in dimension {dim} leaves the fixed set"
                            ))
                        })?;
                        col.push((*row as u32, a));
                    }
                    columns.push(col);
                }
                boundaries.push(SparseMatrix::from_triplets(
                    basis[dim - 1].len(),
                    pts.len(),
                    columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&(r, v)| (r as usize, j, v))),
                ));
            }
            dims.push(pts.len());
        }
        let chain = ChainComplex::new(coefficients, if reduced { -1 } else { 0 }, dims, boundaries)?;
        Ok(FixedComplex { chain, basis, index })
    }

    /// Point-level integral chain complex.
    pub fn expand(&self, reduced: bool, caps: &Caps) -> Result<ChainComplex> {
        let trivial = SubgroupSet::trivial(self.group.order());
        Ok(self.fixed_complex(&trivial, Coefficients::Integers, reduced, caps)?.chain)
    }

    /// Fixed chain complex of `h`, unreduced, over the integers.
    pub fn fixed_chain_complex(&self, h: &SubgroupSet, caps: &Caps) -> Result<ChainComplex> {
        Ok(self.fixed_complex(h, Coefficients::Integers, false, caps)?.chain)
    }

    /// Image of a fixed point under `x`.
    pub fn translate_point(&self, dim: usize, (c, j): CellPoint, x: usize) -> CellPoint {
        let cell = &self.cells[dim][c];
        (c, cell.cosets.coset_of(self.group.mul(x, cell.cosets.representative(j))))
    }

    /// JSON dump: per dimension, cells with isotropy, provenance and boundary.
    pub fn dump(&self) -> serde_json::Value {
        let dims: Vec<Vec<CellDump>> = self
            .cells
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(id, c)| CellDump {
                        id,
                        isotropy: c.isotropy.to_vec(),
                        provenance: &c.provenance,
                        boundary: c.boundary.iter().map(|t| (t.element, t.cell, t.coeff)).collect(),
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "group_order": self.group.order(), "cells": dims })
    }
}
