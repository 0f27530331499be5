//! Graded pieces of the two-sided ideal generated by R.
//!
//! The degree-d piece satisfies I_d = V⊗I_{d-1} + R⊗V^{⊗(d-2)}. If I_{d-1} is in
//! reduced echelon form then so is V⊗I_{d-1} (block diagonal), so only the rows of
//! R⊗V^{⊗(d-2)} need eliminating, and only modulo V⊗I_{d-1}, which replaces each
//! suffix by its normal form. The residual system is small: its columns are
//! V ⊗ (standard words of degree d-1).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{rank_of_rows, Echelon, SparseRow};
use crate::scalars::Scalar;

use super::algebra::QuadraticAlgebra;
use super::ncpoly::NcPoly;

pub const MAX_DEGREE: usize = 8;
pub const MAX_GENERATORS: usize = 5;

fn check_caps(a: &QuadraticAlgebra, d: usize) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::TooLarge(format!("degree {d} exceeds the cap {MAX_DEGREE}")));
    }
    if a.ngens() > MAX_GENERATORS {
        return Err(Error::TooLarge(format!(
            "{} generators exceed the cap {MAX_GENERATORS}",
            a.ngens()
        )));
    }
    Ok(())
}

/// Reduced echelon bases of I_2, I_3, … built on demand.
pub struct IdealTower<'a> {
    alg: &'a QuadraticAlgebra,
    rel_rows: Vec<SparseRow>,
    spans: Vec<Echelon>,
}

impl<'a> IdealTower<'a> {
    pub fn new(alg: &'a QuadraticAlgebra) -> Self {
        IdealTower {
            alg,
            rel_rows: alg.relation_rows(),
            spans: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &QuadraticAlgebra {
        self.alg
    }

    /// Rows of R⊗V^{⊗(d-2)} reduced modulo V⊗I_{d-1}.
    fn residual_rows(&self, prev: &Echelon, d: usize) -> Vec<SparseRow> {
        let n = self.alg.ngens();
        let tail = n.pow(d as u32 - 2);
        let block = tail * n;
        let mut out = Vec::new();
        for r in &self.rel_rows {
            for w in 0..tail {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                let mut add = |col: usize, v: Scalar| {
                    let e = acc.entry(col).or_insert_with(Scalar::zero);
                    *e = &*e + &v;
                };
                for (idx, c) in r {
                    let (i, j) = (idx / n, idx % n);
                    let s = j * tail + w;
                    let base = i * block;
                    match prev.row_for_pivot(s) {
                        Some(prow) => {
                            for (col, v) in prow.iter().skip(1) {
                                add(base + col, -(c * v));
                            }
                        }
                        None => add(base + s, c.clone()),
                    }
                }
                let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    out.push(row);
                }
            }
        }
        out
    }

    fn residual(&self, prev: &Echelon, d: usize) -> Echelon {
        let ncols = self.alg.ngens().pow(d as u32);
        Echelon::from_rows(ncols, self.residual_rows(prev, d))
    }

    fn prev_span(&mut self, d: usize) -> Echelon {
        if d == 1 {
            Echelon::new(self.alg.ngens())
        } else {
            self.span(d).clone()
        }
    }

    /// I_d in reduced echelon form, d ≥ 1 (I_1 = 0).
    pub fn span(&mut self, d: usize) -> &Echelon {
        assert!(d >= 1);
        let n = self.alg.ngens();
        if d == 1 {
            if self.spans.is_empty() {
                self.spans.push(Echelon::new(n));
            }
            return &self.spans[0];
        }
        while self.spans.len() < d {
            let k = self.spans.len() + 1;
            let next = if k == 1 {
                Echelon::new(n)
            } else {
                let prev = &self.spans[k - 2];
                let res = self.residual(prev, k);
                let block = n.pow(k as u32 - 1);
                let mut rows: Vec<SparseRow> = Vec::with_capacity(n * prev.dim() + res.dim());
                for a in 0..n {
                    for prow in prev.rows() {
                        let shifted: SparseRow = prow.iter().map(|(c, v)| (a * block + c, v.clone())).collect();
                        rows.push(res.reduce(&shifted));
                    }
                }
                rows.extend(res.rows().cloned());
                Echelon::from_rref_rows(n * block, rows)
            };
            self.spans.push(next);
        }
        &self.spans[d - 1]
    }

    /// dim A_d.
    pub fn hilbert(&mut self, d: usize) -> usize {
        let n = self.alg.ngens();
        match d {
            0 => 1,
            1 => n,
            _ => {
                if self.spans.len() >= d {
                    return n.pow(d as u32) - self.spans[d - 1].dim();
                }
                let prev = self.prev_span(d - 1);
                let h_prev = n.pow(d as u32 - 1) - prev.dim();
                n * h_prev - rank_of_rows(self.residual_rows(&prev, d))
            }
        }
    }

    /// Normal form of a homogeneous element of degree d modulo I_d.
    pub fn reduce(&mut self, p: &NcPoly) -> Result<NcPoly> {
        let Some(d) = p.degree() else {
            return Ok(p.clone());
        };
        let v = p.to_sparse(d)?;
        let r = if d >= 2 { self.span(d).reduce(&v) } else { v };
        Ok(NcPoly::from_sparse(p.ring(), p.ngens(), d, &r))
    }
}

/// Reduced echelon basis of Σ_i V^{⊗i}·R·V^{⊗(d−2−i)} inside V^{⊗d}.
pub fn ideal_degree_span(a: &QuadraticAlgebra, d: usize) -> Result<Echelon> {
    if d < 2 {
        return Err(Error::Invalid("ideal span needs degree at least 2".into()));
    }
    check_caps(a, d)?;
    Ok(IdealTower::new(a).span(d).clone())
}

/// dim A_d = (n+1)^d − dim I_d.
pub fn hilbert_function(a: &QuadraticAlgebra, d: usize) -> Result<usize> {
    check_caps(a, d)?;
    Ok(IdealTower::new(a).hilbert(d))
}

/// dim A_0, …, dim A_max.
pub fn hilbert_series(a: &QuadraticAlgebra, max_degree: usize) -> Result<Vec<usize>> {
    check_caps(a, max_degree)?;
    let mut t = IdealTower::new(a);
    Ok((0..=max_degree).map(|d| t.hilbert(d)).collect())
}
