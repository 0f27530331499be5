//! Coefficients in Q or Q(ω), with ω² + ω + 1 = 0.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `re + om·ω`. The ω part is `None` when it is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff {
    re: BigRational,
    om: Option<BigRational>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff {
            re: BigRational::zero(),
            om: None,
        }
    }

    pub fn one() -> Self {
        Coeff::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Coeff {
            re: BigRational::from_integer(BigInt::from(v)),
            om: None,
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Coeff { re: r, om: None }
    }

    pub fn from_parts(re: BigRational, om: BigRational) -> Self {
        Coeff {
            re,
            om: if om.is_zero() { None } else { Some(om) },
        }
    }

    pub fn omega() -> Self {
        Coeff::from_parts(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn om(&self) -> Option<&BigRational> {
        self.om.as_ref()
    }

    pub fn has_omega(&self) -> bool {
        self.om.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.om.is_none() && self.re.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.om.is_none() && self.re.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.re.is_integer() && self.om.as_ref().is_none_or(|o| o.is_integer())
    }

    pub fn neg(&self) -> Coeff {
        Coeff {
            re: -&self.re,
            om: self.om.as_ref().map(|o| -o),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let re = &self.re + &other.re;
        let om = match (&self.om, &other.om) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => {
                let s = a + b;
                if s.is_zero() {
                    None
                } else {
                    Some(s)
                }
            }
        };
        Coeff { re, om }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (&self.om, &other.om) {
            (None, None) => Coeff {
                re: &self.re * &other.re,
                om: None,
            },
            (Some(b), None) => Coeff::from_parts(&self.re * &other.re, b * &other.re),
            (None, Some(d)) => Coeff::from_parts(&self.re * &other.re, &self.re * d),
            (Some(b), Some(d)) => {
                // (a + bω)(c + dω) = ac - bd + (ad + bc - bd)ω
                let a = &self.re;
                let c = &other.re;
                let bd = b * d;
                Coeff::from_parts(a * c - &bd, a * d + b * c - bd)
            }
        }
    }

    /// Complex-conjugate in Q(ω): ω ↦ ω² = -1 - ω.
    fn conj(&self) -> Coeff {
        match &self.om {
            None => self.clone(),
            Some(b) => Coeff::from_parts(&self.re - b, -b),
        }
    }

    /// Norm down to Q: (a + bω)(a + bω²) = a² - ab + b².
    fn norm(&self) -> BigRational {
        match &self.om {
            None => &self.re * &self.re,
            Some(b) => &self.re * &self.re - &self.re * b + b * b,
        }
    }

    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero coefficient");
        match &self.om {
            None => Coeff::from_rational(self.re.recip()),
            Some(_) => {
                let n = self.norm();
                let c = self.conj();
                Coeff::from_parts(&c.re / &n, c.om.map(|o| o / &n).unwrap_or_else(BigRational::zero))
            }
        }
    }

    pub fn div(&self, other: &Coeff) -> Coeff {
        self.mul(&other.inv())
    }

    /// Least common multiple of all rational denominators.
    pub fn denom_lcm(&self) -> BigInt {
        let d = self.re.denom().clone();
        match &self.om {
            None => d,
            Some(o) => d.lcm(o.denom()),
        }
    }

    /// Gcd of all numerators (for integral coefficients this is the integer content).
    pub fn numer_gcd(&self) -> BigInt {
        let n = self.re.numer().abs();
        match &self.om {
            None => n,
            Some(o) => n.gcd(o.numer()),
        }
    }

    /// Sign used for normalization: sign of the rational part, or of the ω part when the
    /// rational part vanishes.
    pub fn is_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.om.as_ref().is_some_and(|o| o.is_negative())
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Coeff {
        let k = BigRational::from_integer(k.clone());
        Coeff {
            re: &self.re * &k,
            om: self.om.as_ref().map(|o| o * &k),
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Coeff {
        let k = BigRational::from_integer(k.clone());
        Coeff {
            re: &self.re / &k,
            om: self.om.as_ref().map(|o| o / &k),
        }
    }

    /// True when printing needs parentheses as a factor (two components).
    pub(crate) fn is_compound(&self) -> bool {
        self.om.is_some() && !self.re.is_zero()
    }
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.om {
            None => fmt_rat(&self.re, f),
            Some(o) => {
                if !self.re.is_zero() {
                    fmt_rat(&self.re, f)?;
                    if o.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    let a = o.abs();
                    if !a.is_one() {
                        fmt_rat(&a, f)?;
                        write!(f, "*")?;
                    }
                    write!(f, "omega")
                } else {
                    if o.is_one() {
                        write!(f, "omega")
                    } else if (-o).is_one() {
                        write!(f, "-omega")
                    } else {
                        fmt_rat(o, f)?;
                        write!(f, "*omega")
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_a_primitive_cube_root() {
        let w = Coeff::omega();
        let w2 = w.mul(&w);
        let w3 = w2.mul(&w);
        assert!(w3.is_one());
        assert!(Coeff::one().add(&w).add(&w2).is_zero());
        assert_eq!(w2, Coeff::from_i64(-1).sub(&w));
    }

    #[test]
    fn inverse_in_q_omega() {
        let x = Coeff::from_parts(BigRational::from_integer(2.into()), BigRational::from_integer(3.into()));
        assert!(x.mul(&x.inv()).is_one());
    }
}
