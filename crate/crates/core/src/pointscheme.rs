//! Multilinearized relations, the linear system M(p) cutting out the graph of σ,
//! the determinantal equation of the point scheme and σ as a nullspace map.
//!
//! A point p ∈ P(V*) has coordinates p_i = x_i(p). A relation r = Σ r_ij x_i x_j
//! becomes the bilinear form r̃(p, q) = Σ r_ij p_i q_j; the graph of σ is where all
//! of them vanish.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{NcPoly, QuadraticAlgebra};
use crate::linalg::Matrix;
use crate::scalars::{parse_scalar, Mono, ParamRing, Poly, Scalar};

/// Multihomogeneous polynomial of multidegree (1,…,1): one index per slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiHomPoly {
    ngens: usize,
    slots: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl MultiHomPoly {
    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn add(&self, other: &MultiHomPoly) -> Result<MultiHomPoly> {
        if self.slots != other.slots || self.ngens != other.ngens {
            return Err(Error::Dimension("multilinear forms of different shapes".into()));
        }
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let s = terms.get(k).map(|x| x + v).unwrap_or_else(|| v.clone());
            if s.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(k.clone(), s);
            }
        }
        Ok(MultiHomPoly {
            ngens: self.ngens,
            slots: self.slots,
            terms,
        })
    }

    /// Value at one point per slot.
    pub fn eval(&self, points: &[&[Scalar]]) -> Result<Scalar> {
        if points.len() != self.slots || points.iter().any(|p| p.len() != self.ngens) {
            return Err(Error::Dimension("evaluation points".into()));
        }
        let mut s = Scalar::zero();
        for (idx, c) in &self.terms {
            let mut t = c.clone();
            for (slot, &i) in idx.iter().enumerate() {
                t = &t * &points[slot][i];
                if t.is_zero() {
                    break;
                }
            }
            s = &s + &t;
        }
        Ok(s)
    }

    /// Prints with slot-subscripted generators, e.g. `z_0*y_1 - alpha*y_0*z_1`.
    pub fn to_string_with(&self, ring: &ParamRing, gen_names: &[String]) -> String {
        let mut out = String::new();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> = idx
                .iter()
                .enumerate()
                .map(|(s, &i)| format!("{}_{s}", gen_names[i]))
                .collect();
            let mut cs = c.to_string_in(ring);
            let neg = cs.starts_with('-') && !cs[1..].contains(' ');
            if neg {
                cs.remove(0);
            }
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if cs != "1" {
                if cs.contains(' ') || cs.contains('/') {
                    out.push_str(&format!("({cs})*"));
                } else {
                    out.push_str(&format!("{cs}*"));
                }
            }
            out.push_str(&vars.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// f̃: the word [i₀,…,i_{d−1}] becomes the slot tuple (i₀,…,i_{d−1}).
pub fn multilinearize(f: &NcPoly) -> Result<MultiHomPoly> {
    let d = match f.degree() {
        Some(d) => d,
        None if f.is_zero() => 0,
        None => return Err(Error::Invalid("multilinearization needs a homogeneous element".into())),
    };
    Ok(MultiHomPoly {
        ngens: f.ngens(),
        slots: d,
        terms: f
            .terms()
            .iter()
            .map(|(w, c)| (w.letters().collect(), c.clone()))
            .collect(),
    })
}

/// A point of Pⁿ with scalar coordinates, compared projectively.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("all coordinates are zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        ProjPoint::new(coords.iter().map(|&c| Scalar::from(c)).collect())
    }

    /// Parses `c0:c1:…:cn`.
    pub fn parse(text: &str, ring: &ParamRing) -> Result<Self> {
        let coords = text
            .split(':')
            .map(|c| parse_scalar(c.trim(), ring))
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::new(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Scaled so the first nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjPoint {
        let lead = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        let inv = lead.inv().expect("nonzero");
        ProjPoint {
            coords: self.coords.iter().map(|c| c * &inv).collect(),
        }
    }

    pub fn apply(&self, m: &Matrix) -> Result<ProjPoint> {
        ProjPoint::new(m.mul_vec(&self.coords)?)
    }

    pub fn to_string_in(&self, ring: &ParamRing) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string_in(ring)).collect();
        format!("({})", parts.join(" : "))
    }
}

impl PartialEq for ProjPoint {
    /// All 2×2 minors of the coordinate pair vanish.
    fn eq(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let n = self.coords.len();
        (0..n).all(|i| (i + 1..n).all(|j| &self.coords[i] * &other.coords[j] == &self.coords[j] * &other.coords[i]))
    }
}

/// Row k, column j holds the linear form Σ_i coeff(r_k, x_i x_j)·p_i, stored as its
/// coefficient vector over p₀…p_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMatrix {
    ngens: usize,
    entries: Vec<Vec<Vec<Scalar>>>,
}

impl SigmaMatrix {
    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.ngens
    }

    /// Coefficient of p_i in entry (k, j).
    pub fn coeff(&self, k: usize, j: usize, i: usize) -> &Scalar {
        &self.entries[k][j][i]
    }

    /// M(p) for a concrete point.
    pub fn at(&self, p: &[Scalar]) -> Result<Matrix> {
        if p.len() != self.ngens {
            return Err(Error::Dimension("point has the wrong number of coordinates".into()));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|form| {
                        form.iter()
                            .zip(p)
                            .filter(|(c, x)| !c.is_zero() && !x.is_zero())
                            .fold(Scalar::zero(), |s, (c, x)| &s + &(c * x))
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// Entries as polynomials in coordinate parameters appended to `ring`.
    pub fn symbolic(&self, ring: &ParamRing, coord_names: &[String]) -> Result<(CoordRing, Matrix)> {
        let cr = CoordRing::new(ring, coord_names)?;
        let vars: Vec<Scalar> = cr.coord_params.iter().map(|&i| Scalar::param(i)).collect();
        Ok((cr, self.at(&vars)?))
    }
}

/// The algebra's sigma matrix.
pub fn sigma_matrix(a: &QuadraticAlgebra) -> SigmaMatrix {
    let n = a.ngens();
    let entries = a
        .relations()
        .iter()
        .map(|r| {
            let mut row = vec![vec![Scalar::zero(); n]; n];
            for (w, c) in r.terms() {
                let (i, j) = (w.at(0), w.at(1));
                row[j][i] = &row[j][i] + c;
            }
            row
        })
        .collect();
    SigmaMatrix { ngens: n, entries }
}

/// A parameter ring extended by coordinate variables p₀…p_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordRing {
    pub ring: ParamRing,
    /// Parameter index of each coordinate.
    pub coord_params: Vec<usize>,
}

impl CoordRing {
    pub fn new(base: &ParamRing, coord_names: &[String]) -> Result<Self> {
        let mut ring = base.clone();
        let mut coord_params = Vec::with_capacity(coord_names.len());
        for name in coord_names {
            let (r, idx) = ring.extend_fresh(name);
            ring = r;
            coord_params.push(idx);
        }
        Ok(CoordRing { ring, coord_params })
    }

    pub fn is_coordinate_free(&self, s: &Scalar) -> bool {
        self.coord_params.iter().all(|&i| !s.uses_param(i))
    }
}

/// det M(p): a form of degree n+1 in the coordinates.
#[derive(Clone, Debug)]
pub struct PointSchemeEquation {
    pub coords: CoordRing,
    pub poly: Scalar,
}

impl PointSchemeEquation {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// True when `other` = unit·self for a unit free of coordinates.
    pub fn equals_up_to_unit(&self, other: &Scalar) -> bool {
        if self.poly.is_zero() || other.is_zero() {
            return self.poly.is_zero() && other.is_zero();
        }
        let ratio = other.checked_div(&self.poly).expect("nonzero");
        self.coords.is_coordinate_free(&ratio)
    }

    /// Value at a point.
    pub fn vanishes_at(&self, p: &[Scalar]) -> Result<bool> {
        let nparams = self.coords.ring.nparams();
        let mut values: Vec<Option<Scalar>> = vec![None; nparams];
        for (k, &i) in self.coords.coord_params.iter().enumerate() {
            values[i] = Some(p.get(k).cloned().ok_or_else(|| Error::Dimension("point size".into()))?);
        }
        Ok(self.poly.substitute(&values)?.is_zero())
    }
}

impl fmt::Display for PointSchemeEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display(&self.coords.ring))
    }
}

/// det of the sigma matrix when the system is square; coordinates are named after
/// the generators.
pub fn point_scheme_equation(a: &QuadraticAlgebra) -> Result<PointSchemeEquation> {
    let sm = sigma_matrix(a);
    if sm.nrows() != sm.ncols() {
        return Err(Error::NotDeterminantal);
    }
    let (coords, m) = sm.symbolic(a.ring(), a.gen_names())?;
    let poly = m.det()?;
    Ok(PointSchemeEquation { coords, poly })
}

/// Coordinates whose powers divide g, and the cofactor after removing the largest
/// monomial factor in the coordinates.
pub fn coordinate_line_components(eq: &PointSchemeEquation) -> (Vec<usize>, Scalar) {
    let g = &eq.poly;
    if g.is_zero() {
        return (Vec::new(), Scalar::zero());
    }
    let content = g.numer().monomial_content();
    let mut exps = vec![0u16; content.exps().len()];
    let mut lines = Vec::new();
    for (k, &i) in eq.coords.coord_params.iter().enumerate() {
        let e = content.exp(i);
        if e > 0 {
            lines.push(k);
            if i < exps.len() {
                exps[i] = e;
            }
        }
    }
    let m = Poly::monomial(Mono::from_exps(&exps), crate::scalars::Coeff::one());
    let cofactor = g.checked_div(&Scalar::from_poly(m)).expect("nonzero monomial");
    (lines, cofactor)
}

/// σ(p): the unique projective solution q of r̃_k(p, q) = 0 for all k.
pub fn sigma_at(a: &QuadraticAlgebra, p: &ProjPoint) -> Result<ProjPoint> {
    let m = sigma_matrix(a).at(p.coords())?;
    let n1 = a.ngens();
    let ker = m.nullspace();
    match ker.len() {
        0 => Err(Error::NotOnPointScheme),
        1 => Ok(ProjPoint::new(ker.into_iter().next().expect("one vector"))?.normalized()),
        _ if n1 - ker.len() < n1 - 1 => Err(Error::SigmaNotUnique),
        _ => Err(Error::SigmaNotUnique),
    }
}

/// Whether every multilinearized relation vanishes at (p, q).
pub fn graph_check(a: &QuadraticAlgebra, p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
    if p.dim() != a.ngens() || q.dim() != a.ngens() {
        return Err(Error::Dimension("point size".into()));
    }
    for r in a.relations() {
        if !multilinearize(r)?.eval(&[p.coords(), q.coords()])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
