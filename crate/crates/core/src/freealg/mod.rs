//! Free associative algebra, quadratic presentations and Hilbert functions by exact rank.

mod algebra;
mod ideal;
mod ncpoly;

pub use algebra::QuadraticAlgebra;
pub use ideal::{hilbert_function, hilbert_series, ideal_degree_span, IdealTower, MAX_DEGREE, MAX_GENERATORS};
pub use ncpoly::{default_generator_names, NcPoly, NcPolyDisplay, Word};

use crate::error::Result;

/// Free-algebra product of f and g.
pub fn nc_multiply(f: &NcPoly, g: &NcPoly) -> Result<NcPoly> {
    f.mul(g)
}
