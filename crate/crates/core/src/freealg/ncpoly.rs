use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::{parse_expr, Coeff, ExprValue, ParamRing, Scalar};

/// A word in the generators x₀…x_n. The empty word is the unit.
///
/// Words of equal length compare lexicographically, which is also the numeric order
/// of their indices in V^⊗d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(SmallVec<[u8; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn new(letters: &[usize]) -> Self {
        Word(
            letters
                .iter()
                .map(|&l| u8::try_from(l).expect("generator index fits in u8"))
                .collect(),
        )
    }

    pub fn letter(i: usize) -> Self {
        Word::new(&[i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn at(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position of the word in the lexicographic basis of V^⊗len.
    pub fn index(&self, ngens: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * ngens + l as usize)
    }

    pub fn from_index(mut index: usize, len: usize, ngens: usize) -> Word {
        let mut v: SmallVec<[u8; 8]> = SmallVec::from_elem(0, len);
        for k in (0..len).rev() {
            v[k] = (index % ngens) as u8;
            index /= ngens;
        }
        Word(v)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { w: self, names }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

struct WordDisplay<'a> {
    w: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self.w.letters().map(|l| self.names[l].as_str()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Default generator names: x, y, z for up to three generators, else x0…xn.
pub fn default_generator_names(ngens: usize) -> Vec<String> {
    if ngens <= 3 {
        ["x", "y", "z"][..ngens].iter().map(|s| s.to_string()).collect()
    } else {
        (0..ngens).map(|i| format!("x{i}")).collect()
    }
}

/// Element of the free algebra k⟨x₀,…,x_n⟩ with coefficients in the parameter field.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPoly {
    ring: ParamRing,
    ngens: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(ring: &ParamRing, ngens: usize) -> Self {
        NcPoly {
            ring: ring.clone(),
            ngens,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &ParamRing, ngens: usize, c: Scalar) -> Self {
        NcPoly::term(ring, ngens, Word::empty(), c)
    }

    pub fn term(ring: &ParamRing, ngens: usize, w: Word, c: Scalar) -> Self {
        let mut p = NcPoly::zero(ring, ngens);
        assert!(w.letters().all(|l| l < ngens), "letter out of range");
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn generator(ring: &ParamRing, ngens: usize, i: usize) -> Self {
        NcPoly::term(ring, ngens, Word::letter(i), Scalar::one())
    }

    pub fn from_terms(ring: &ParamRing, ngens: usize, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NcPoly::zero(ring, ngens);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        assert!(w.letters().all(|l| l < self.ngens), "letter out of range");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn ring(&self) -> &ParamRing {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    fn check_compatible(&self, other: &NcPoly) -> Result<ParamRing> {
        if self.ngens != other.ngens {
            return Err(Error::Dimension(format!(
                "{} vs {} generators",
                self.ngens, other.ngens
            )));
        }
        self.ring.join(&other.ring)
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        let ring = self.check_compatible(other)?;
        let mut out = self.clone();
        out.ring = ring;
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&Scalar::from(-1))
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero(&self.ring, self.ngens);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect();
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly> {
        let ring = self.check_compatible(other)?;
        let mut out = NcPoly::zero(&ring, self.ngens);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<NcPoly> {
        let mut acc = NcPoly::constant(&self.ring, self.ngens, Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Coefficient vector in the word basis of V^⊗d, as a sparse row.
    pub fn to_sparse(&self, d: usize) -> Result<Vec<(usize, Scalar)>> {
        if self.terms.keys().any(|w| w.len() != d) {
            return Err(Error::Invalid(format!("element is not homogeneous of degree {d}")));
        }
        Ok(self
            .terms
            .iter()
            .map(|(w, c)| (w.index(self.ngens), c.clone()))
            .collect())
    }

    pub fn from_sparse(ring: &ParamRing, ngens: usize, d: usize, v: &[(usize, Scalar)]) -> NcPoly {
        NcPoly::from_terms(
            ring,
            ngens,
            v.iter().map(|(i, c)| (Word::from_index(*i, d, ngens), c.clone())),
        )
    }

    /// Substitutes x_j ↦ Σ_i m[i][j] x_i in every letter.
    pub fn linear_substitute(&self, m: &crate::linalg::Matrix) -> Result<NcPoly> {
        if m.nrows() != self.ngens || m.ncols() != self.ngens {
            return Err(Error::Dimension("substitution matrix size".into()));
        }
        let images: Vec<NcPoly> = (0..self.ngens)
            .map(|j| {
                NcPoly::from_terms(
                    &self.ring,
                    self.ngens,
                    (0..self.ngens).map(|i| (Word::letter(i), m.get(i, j).clone())),
                )
            })
            .collect();
        let mut out = NcPoly::zero(&self.ring, self.ngens);
        for (w, c) in &self.terms {
            let mut t = NcPoly::constant(&self.ring, self.ngens, c.clone());
            for l in w.letters() {
                t = t.mul(&images[l])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Parses e.g. `x2*x1 - alpha*x1*x2`. Identifiers are generator names, then
    /// ring parameters, then `omega` when the ring has ω.
    pub fn parse(src: &str, ring: &ParamRing, gen_names: &[String]) -> Result<NcPoly> {
        let ngens = gen_names.len();
        let resolve = |name: &str| -> Result<NcExpr> {
            if let Some(i) = gen_names.iter().position(|g| g == name) {
                return Ok(NcExpr::single(Word::letter(i), Scalar::one()));
            }
            if name == "omega" {
                if ring.has_omega() {
                    return Ok(NcExpr::single(Word::empty(), Scalar::from_coeff(Coeff::omega())));
                }
                return Err(Error::Parse("`omega` used but the field is Q".into()));
            }
            match ring.index_of(name) {
                Some(i) => Ok(NcExpr::single(Word::empty(), Scalar::param(i))),
                None => Err(Error::Parse(format!("undeclared identifier `{name}`"))),
            }
        };
        let e = parse_expr(src, &resolve)?;
        Ok(NcPoly::from_terms(ring, ngens, e.0))
    }

    pub fn display<'a>(&'a self, gen_names: &'a [String]) -> NcPolyDisplay<'a> {
        NcPolyDisplay { p: self, gen_names }
    }

    pub fn to_string_with(&self, gen_names: &[String]) -> String {
        self.display(gen_names).to_string()
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_generator_names(self.ngens);
        write!(f, "NcPoly({})", self.display(&names))
    }
}

pub struct NcPolyDisplay<'a> {
    p: &'a NcPoly,
    gen_names: &'a [String],
}

impl fmt::Display for NcPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.p.terms.iter().enumerate() {
            let mut s = c.to_string_in(&self.p.ring);
            let negative = s.starts_with('-') && !needs_parens(&s[1..]);
            if negative {
                s.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let word = w.display(self.gen_names).to_string();
            if w.is_empty() {
                write!(f, "{s}")?;
            } else if s == "1" {
                write!(f, "{word}")?;
            } else if needs_parens(&s) {
                write!(f, "({s})*{word}")?;
            } else {
                write!(f, "{s}*{word}")?;
            }
        }
        Ok(())
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains(' ') || s.contains('/')
}

/// Parser value: a map from words to scalars with no fixed ring yet.
struct NcExpr(BTreeMap<Word, Scalar>);

impl NcExpr {
    fn single(w: Word, c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        m.insert(w, c);
        NcExpr(m)
    }

    fn combine(mut self, other: NcExpr, sign: i64) -> NcExpr {
        for (w, c) in other.0 {
            let c = if sign < 0 { -c } else { c };
            let v = match self.0.remove(&w) {
                Some(old) => &old + &c,
                None => c,
            };
            if !v.is_zero() {
                self.0.insert(w, v);
            }
        }
        self
    }

    fn as_scalar(&self) -> Option<Scalar> {
        match self.0.len() {
            0 => Some(Scalar::zero()),
            1 => self.0.get(&Word::empty()).cloned(),
            _ => None,
        }
    }
}

impl ExprValue for NcExpr {
    fn from_int(v: BigInt) -> Result<Self> {
        Ok(NcExpr::single(
            Word::empty(),
            Scalar::from_rational(BigRational::from_integer(v)),
        ))
    }
    fn from_ident(_name: &str) -> Result<Self> {
        unreachable!("identifiers are resolved by the caller")
    }
    fn add(self, other: Self) -> Result<Self> {
        Ok(self.combine(other, 1))
    }
    fn sub(self, other: Self) -> Result<Self> {
        Ok(self.combine(other, -1))
    }
    fn mul(self, other: Self) -> Result<Self> {
        let mut out = NcExpr(BTreeMap::new());
        for (u, a) in &self.0 {
            for (v, b) in &other.0 {
                out = out.combine(NcExpr::single(u.concat(v), a * b), 1);
            }
        }
        Ok(out)
    }
    fn div(self, other: Self) -> Result<Self> {
        let d = other
            .as_scalar()
            .ok_or_else(|| Error::Parse("division by a non-scalar expression".into()))?;
        let inv = d.inv()?;
        Ok(NcExpr(self.0.into_iter().map(|(w, c)| (w, &c * &inv)).collect()))
    }
    fn neg(self) -> Result<Self> {
        Ok(NcExpr(self.0.into_iter().map(|(w, c)| (w, -c)).collect()))
    }
    fn pow(self, e: i64) -> Result<Self> {
        if e < 0 {
            let s = self
                .as_scalar()
                .ok_or_else(|| Error::Parse("negative power of a non-scalar expression".into()))?;
            return Ok(NcExpr::single(Word::empty(), Scalar::pow(&s, e as i32)?));
        }
        let mut acc = NcExpr::single(Word::empty(), Scalar::one());
        for _ in 0..e {
            acc = acc.mul(NcExpr(self.0.clone()))?;
        }
        Ok(acc)
    }
}
