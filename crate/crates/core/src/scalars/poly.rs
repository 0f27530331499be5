//! Sparse multivariate polynomials with Q or Q(ω) coefficients.
//!
//! Terms are kept sorted by descending graded-lex order of their monomials and
//! no stored coefficient is zero, so structural equality is polynomial equality.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::mono::Mono;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Coeff)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::one(), c)],
            }
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Poly::constant(Coeff::from_i64(v))
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Mono::var(index), Coeff::one())
    }

    pub fn monomial(m: Mono, c: Coeff) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Coeff)>) -> Self {
        let mut map: HashMap<Mono, Coeff> = HashMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Mono, Coeff>) -> Self {
        let mut terms: Vec<(Mono, Coeff)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn has_omega(&self) -> bool {
        self.terms.iter().any(|(_, c)| c.has_omega())
    }

    /// Constant coefficient value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Coeff> {
        if self.terms.is_empty() {
            Some(Coeff::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Coeff)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).min().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Highest parameter index in use plus one.
    pub fn nvars_used(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.nvars_used()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut map: HashMap<Mono, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = acc.add(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(map)
    }

    /// Multiplication by a single term preserves the term order.
    pub fn mul_term(&self, m: &Mono, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Mono::one(), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.terms.len() == 1 {
            let (dm, dc) = &divisor.terms[0];
            let inv = dc.inv();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c.mul(&inv)));
            }
            return Some(Poly { terms });
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.inv();
        if self.total_degree() < divisor.total_degree() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, Coeff)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(&lm)?;
            let qc = rc.mul(&lc_inv);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // quotient terms emerge in descending order
        Some(Poly { terms: quot })
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Mono::one(),
        };
        it.fold(first, |acc, (m, _)| acc.gcd(m))
    }

    /// Rational scalar `k` with `self / k` integral and primitive, sign fixed so the
    /// leading coefficient of `self / k` is positive.
    pub fn rational_content(&self) -> Coeff {
        if self.is_zero() {
            return Coeff::one();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(&c.denom_lcm());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(&c.scale_int(&den).numer_gcd());
        }
        let mut k = BigRational::new(g, den);
        if self.terms[0].1.is_negative() {
            k = -k;
        }
        Coeff::from_rational(k)
    }

    /// Integral primitive representative with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let k = self.rational_content();
        if k.is_one() {
            return self.clone();
        }
        self.scale(&k.inv())
    }

    /// Monic representative (leading coefficient one).
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Coefficients as a univariate polynomial in `var`, keyed by exponent.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u16, Poly> {
        let mut groups: BTreeMap<u16, Vec<(Mono, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            groups.entry(e).or_default().push((m.with_exp(var, 0), c.clone()));
        }
        groups
            .into_iter()
            .map(|(e, ts)| {
                // removing one variable from a sorted list can break grlex order
                let mut ts = ts;
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                (e, Poly { terms: ts })
            })
            .collect()
    }

    /// Rebuilds `Σ coeffs[e] · var^e`.
    pub fn from_coefficients_in(var: usize, coeffs: &BTreeMap<u16, Poly>) -> Poly {
        let mut terms = Vec::new();
        for (&e, p) in coeffs {
            for (m, c) in &p.terms {
                terms.push((m.with_exp(var, m.exp(var) + e), c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes polynomials for parameters; parameters without an entry stay symbolic.
    pub fn substitute(&self, values: &[Option<Poly>]) -> Poly {
        let mut acc = Poly::zero();
        let mut power_cache: HashMap<(usize, u16), Poly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::with_capacity(m.nvars_used());
            let mut term = Poly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                match values.get(i).and_then(|v| v.as_ref()) {
                    Some(v) if e > 0 => {
                        let p = power_cache.entry((i, e)).or_insert_with(|| v.pow(e as u32)).clone();
                        term = term.mul(&p);
                        kept.push(0);
                    }
                    _ => kept.push(e),
                }
            }
            acc = acc.add(&term.mul_term(&Mono::from_exps(&kept), &Coeff::one()));
        }
        acc
    }

    /// Evaluates at rational values for the listed parameters.
    pub fn eval_partial(&self, values: &[Option<Coeff>]) -> Poly {
        let polys: Vec<Option<Poly>> = values
            .iter()
            .map(|v| v.as_ref().map(|c| Poly::constant(c.clone())))
            .collect();
        self.substitute(&polys)
    }

    /// Renumbers parameters: parameter `i` becomes `map[i]`.
    pub fn remap_vars(&self, map: &[usize]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let width = map.iter().copied().max().map(|x| x + 1).unwrap_or(0);
            let mut e = vec![0u16; width.max(m.nvars_used())];
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            (Mono::from_exps(&e), c.clone())
        });
        Poly::from_terms(terms)
    }
}
