use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coeff;
use super::gcd::poly_gcd;
use super::mono::Mono;
use super::poly::Poly;
use super::ring::ParamRing;
use crate::error::{Error, Result};

/// An element of F(p₁,…,p_k) kept as a reduced fraction of polynomials.
///
/// Canonical form: the denominator is integral, primitive and has a positive
/// leading coefficient; numerator and denominator share no common factor (exact
/// over Q, best effort when ω occurs). Equality is exact in every case.
#[derive(Clone)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Scalar {
            num: Poly::from_i64(v),
            den: Poly::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_coeff(Coeff::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    pub fn from_coeff(c: Coeff) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_coeff(Coeff::from_rational(r))
    }

    pub fn omega() -> Self {
        Scalar::from_coeff(Coeff::omega())
    }

    /// The parameter with the given index.
    pub fn param(index: usize) -> Self {
        Scalar {
            num: Poly::var(index),
            den: Poly::one(),
        }
    }

    /// Parameter looked up by name in `ring`.
    pub fn named(ring: &ParamRing, name: &str) -> Result<Self> {
        ring.index_of(name)
            .map(Scalar::param)
            .ok_or_else(|| Error::Parse(format!("unknown parameter `{name}`")))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Canonical form of `raw_num / raw_den`.
    pub fn simplify(raw_num: Poly, raw_den: Poly) -> Result<Self> {
        if raw_den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if raw_num.is_zero() {
            return Ok(Scalar::zero());
        }
        let g = poly_gcd(&raw_num, &raw_den);
        let (n, d) = if g.is_constant() {
            (raw_num, raw_den)
        } else {
            (
                raw_num.div_exact(&g).expect("gcd divides numerator"),
                raw_den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::normalize_den(n, d))
    }

    /// Makes the denominator primitive with positive leading coefficient, assuming
    /// the fraction is already reduced.
    fn normalize_den(num: Poly, den: Poly) -> Scalar {
        if den.is_constant() {
            let c = den.as_constant().unwrap();
            let num = if c.is_one() { num } else { num.scale(&c.inv()) };
            return Scalar { num, den: Poly::one() };
        }
        let k = den.rational_content();
        if k.is_one() {
            return Scalar { num, den };
        }
        let kinv = k.inv();
        Scalar {
            num: num.scale(&kinv),
            den: den.scale(&kinv),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when no parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Constant value if rational (no ω, no parameters).
    pub fn as_rational(&self) -> Option<BigRational> {
        let c = self.as_constant()?;
        if c.has_omega() {
            None
        } else {
            Some(c.re().clone())
        }
    }

    pub fn has_omega(&self) -> bool {
        self.num.has_omega() || self.den.has_omega()
    }

    /// Rough size used to pick cheap pivots.
    pub fn weight(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let t = self.num.nterms() + self.den.nterms();
        let d = (self.num.total_degree() + self.den.total_degree()) as usize;
        t * 4 + d + if self.is_constant() { 0 } else { 1 }
    }

    pub fn uses_param(&self, index: usize) -> bool {
        self.num.uses_var(index) || self.den.uses_var(index)
    }

    pub fn nparams_used(&self) -> usize {
        self.num.nvars_used().max(self.den.nvars_used())
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(Scalar {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    fn add_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Scalar { num, den: Poly::one() };
            }
            return Scalar::simplify(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = poly_gcd(&self.den, &other.den);
        if g.is_constant() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            if self.has_omega() || other.has_omega() {
                return Scalar::simplify(num, den).expect("nonzero denominator");
            }
            return Self::normalize_den(num, den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        let den = self.den.mul(&d1);
        if num.is_zero() {
            return Scalar::zero();
        }
        let h = poly_gcd(&num, &g);
        if h.is_constant() {
            Self::normalize_den(num, den)
        } else {
            Self::normalize_den(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let a = if g1.is_constant() {
            self.num.clone()
        } else {
            self.num.div_exact(&g1).unwrap()
        };
        let d = if g1.is_constant() {
            other.den.clone()
        } else {
            other.den.div_exact(&g1).unwrap()
        };
        let c = if g2.is_constant() {
            other.num.clone()
        } else {
            other.num.div_exact(&g2).unwrap()
        };
        let b = if g2.is_constant() {
            self.den.clone()
        } else {
            self.den.div_exact(&g2).unwrap()
        };
        Self::normalize_den(a.mul(&c), b.mul(&d))
    }

    /// Substitutes a value for each parameter index that has one.
    pub fn substitute(&self, values: &[Option<Scalar>]) -> Result<Scalar> {
        let n = Self::substitute_poly(&self.num, values);
        let d = Self::substitute_poly(&self.den, values);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        n.checked_div(&d)
    }

    fn substitute_poly(p: &Poly, values: &[Option<Scalar>]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in p.terms() {
            let mut kept = Vec::with_capacity(m.nvars_used());
            let mut term = Scalar::from_coeff(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                match values.get(i).and_then(|v| v.as_ref()) {
                    Some(v) if e > 0 => {
                        term = &term * &v.pow(e as i32).expect("nonnegative power");
                        kept.push(0);
                    }
                    _ => kept.push(e),
                }
            }
            let mono = Scalar::from_poly(Poly::monomial(Mono::from_exps(&kept), Coeff::one()));
            acc = &acc + &(&term * &mono);
        }
        acc
    }

    /// Evaluates at a rational point. Every parameter occurring must be assigned.
    pub fn eval_at(&self, ring: &ParamRing, assignment: &BTreeMap<String, BigRational>) -> Result<Scalar> {
        let mut values = vec![None; ring.nparams()];
        for (name, v) in assignment {
            let i = ring
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown parameter `{name}` in assignment")))?;
            values[i] = Some(Scalar::from_rational(v.clone()));
        }
        for i in 0..self.nparams_used() {
            if self.uses_param(i) && values.get(i).is_none_or(|v| v.is_none()) {
                let name = ring.names().get(i).cloned().unwrap_or_else(|| format!("p{i}"));
                return Err(Error::Parse(format!("assignment does not cover parameter `{name}`")));
            }
        }
        self.substitute(&values)
    }

    /// Formats with parameter names from `ring`.
    pub fn display<'a>(&'a self, ring: &'a ParamRing) -> ScalarDisplay<'a> {
        ScalarDisplay {
            s: self,
            names: ring.names(),
        }
    }

    pub fn to_string_in(&self, ring: &ParamRing) -> String {
        self.display(ring).to_string()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if !self.has_omega() && !other.has_omega() {
            return self.num == other.num && self.den == other.den;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ScalarDisplay { s: self, names: &[] })
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_i64(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_impl(b));
binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_impl(&-b));
binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_impl(b));
binop!(Div, div, |a: &Scalar, b: &Scalar| a
    .checked_div(b)
    .expect("scalar division by zero"));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub struct ScalarDisplay<'a> {
    s: &'a Scalar,
    names: &'a [String],
}

fn var_name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("p{i}"))
}

/// Writes a polynomial in infix syntax that the scalar parser reads back.
pub(crate) fn write_poly(p: &Poly, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative() && !c.is_compound();
        let mag = if neg { c.neg() } else { c.clone() };
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || m.is_one() {
            if mag.is_compound() {
                factors.push(format!("({mag})"));
            } else {
                factors.push(mag.to_string());
            }
        }
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(var_name(names, i)),
                _ => factors.push(format!("{}^{}", var_name(names, i), e)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.s;
        if s.den.is_one() {
            return write_poly(&s.num, self.names, f);
        }
        let paren_num = s.num.nterms() > 1 || s.num.terms()[0].1.is_compound();
        if paren_num {
            write!(f, "(")?;
        }
        write_poly(&s.num, self.names, f)?;
        if paren_num {
            write!(f, ")")?;
        }
        write!(f, "/")?;
        let paren_den = s.den.nterms() > 1 || {
            let (m, c) = &s.den.terms()[0];
            usize::from(!c.is_one()) + m.exps().iter().filter(|&&e| e != 0).count() > 1
        };
        if paren_den {
            write!(f, "(")?;
        }
        write_poly(&s.den, self.names, f)?;
        if paren_den {
            write!(f, ")")?;
        }
        Ok(())
    }
}
