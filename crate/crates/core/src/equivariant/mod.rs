//! Equivariant cell complexes at chain level and the constructions built
//! from them.

mod build;
mod complex;
mod kill;
mod ops;

pub use build::{
    build_x, build_x_p, build_x_p_report, build_x_report, certified_upper_bound, check_fixed_set, obstruction_bound,
    smith_acyclicity_check, Certificate, FixedCheck, SmithReport, StageReport, XBuild, XpBuild,
};
pub use complex::{BoundaryTerm, CellPoint, FixedComplex, GCWComplex, OrbitCell, Provenance};
pub use kill::{attach_cells_to_kill, KillReport, SplittingReport};
pub use ops::{cayley_one_complex, induce, inflate, subdivided_simplex};
