//! Zhang twists, point schemes and twist equivalence for quadratic algebras, computed
//! exactly over fields of rational functions.

pub mod autext;
pub mod error;
pub mod families;
pub mod freealg;
pub mod linalg;
pub mod pointscheme;
pub mod scalars;
pub mod twist;

pub use error::{Error, Result};
pub use scalars::{ParamRing, Scalar};
