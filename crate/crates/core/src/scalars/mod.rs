//! Exact arithmetic in F(p₁,…,p_k) with F = Q or Q(ω).

mod coeff;
mod gcd;
mod mono;
mod parse;
mod poly;
mod ring;
mod scalar;

pub use coeff::Coeff;
pub use gcd::poly_gcd;
pub use mono::Mono;
pub use parse::{identifiers, parse_expr, parse_scalar, ExprValue};
pub use poly::Poly;
pub use ring::ParamRing;
pub use scalar::{Scalar, ScalarDisplay};
