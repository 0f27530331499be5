//! Zhang twists of quadratic algebras and twisting-system checks.
//!
//! Matrices act on V = A₁ by columns: M·x_j = Σ_i M[i][j] x_i. For a quadratic
//! algebra the twist by τ has relation space (id ⊗ τ₁⁻¹)(R).

use crate::error::{Error, Result};
use crate::freealg::QuadraticAlgebra;
use crate::linalg::{dense_to_sparse, Echelon, Matrix, SparseRow};
use crate::scalars::{parse_scalar, ParamRing, Scalar};

/// An invertible linear map of V, given by its matrix on the generator basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearEndo {
    matrix: Matrix,
    ring: ParamRing,
}

impl LinearEndo {
    pub fn new(ring: &ParamRing, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::Dimension(
                "a linear map of V needs a nonempty square matrix".into(),
            ));
        }
        if matrix.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(LinearEndo {
            matrix,
            ring: ring.clone(),
        })
    }

    pub fn identity(ring: &ParamRing, n: usize) -> Self {
        LinearEndo {
            matrix: Matrix::identity(n),
            ring: ring.clone(),
        }
    }

    pub fn diagonal(ring: &ParamRing, entries: &[Scalar]) -> Result<Self> {
        LinearEndo::new(ring, Matrix::diagonal(entries))
    }

    /// The map x_i ↦ x_{perm[i]}.
    pub fn permutation(ring: &ParamRing, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(Error::Invalid(format!("permutation entry {p} out of range")));
            }
            m.set(p, i, Scalar::one());
        }
        LinearEndo::new(ring, m)
    }

    /// Parses one row per line, entries separated by commas.
    pub fn parse(text: &str, ring: &ParamRing) -> Result<Self> {
        LinearEndo::new(ring, parse_matrix(text, ring)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> &ParamRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn inverse(&self) -> LinearEndo {
        LinearEndo {
            matrix: self.matrix.inverse().expect("invertible by construction"),
            ring: self.ring.clone(),
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearEndo) -> Result<LinearEndo> {
        Ok(LinearEndo {
            matrix: self.matrix.mul(&other.matrix)?,
            ring: self.ring.join(&other.ring)?,
        })
    }

    pub fn pow(&self, k: u32) -> LinearEndo {
        LinearEndo {
            matrix: self.matrix.pow(k).expect("square"),
            ring: self.ring.clone(),
        }
    }
}

/// Parses a matrix: one row per line, scalar expressions separated by commas.
pub fn parse_matrix(text: &str, ring: &ParamRing) -> Result<Matrix> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(',')
                .map(|e| parse_scalar(e.trim(), ring))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    Matrix::from_rows(rows)
}

/// The degree-one data M₁,…,M_k of a twisting system; τ₀ is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingSystem {
    maps: Vec<LinearEndo>,
}

impl TwistingSystem {
    pub fn new(maps: Vec<LinearEndo>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::Invalid("a twisting system needs at least one map".into()));
        };
        if maps.iter().any(|m| m.dim() != first.dim()) {
            return Err(Error::Dimension("maps of a twisting system differ in size".into()));
        }
        Ok(TwistingSystem { maps })
    }

    /// Matrices separated by blank lines.
    pub fn parse(text: &str, ring: &ParamRing) -> Result<Self> {
        let mut blocks: Vec<Vec<&str>> = vec![Vec::new()];
        for line in text.lines() {
            if line.trim().is_empty() {
                if !blocks.last().expect("nonempty").is_empty() {
                    blocks.push(Vec::new());
                }
            } else {
                blocks.last_mut().expect("nonempty").push(line);
            }
        }
        let maps = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|b| LinearEndo::parse(&b.join("\n"), ring))
            .collect::<Result<Vec<_>>>()?;
        TwistingSystem::new(maps)
    }

    pub fn maps(&self) -> &[LinearEndo] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

fn check_dim(a: &QuadraticAlgebra, m: &LinearEndo) -> Result<()> {
    if m.dim() != a.ngens() {
        return Err(Error::Dimension(format!(
            "{}x{} map on an algebra with {} generators",
            m.dim(),
            m.dim(),
            a.ngens()
        )));
    }
    Ok(())
}

/// The Zhang twist of A by the system with τ₁ = t1: relations (id ⊗ t1⁻¹)(R).
pub fn twist_relations(a: &QuadraticAlgebra, t1: &LinearEndo) -> Result<QuadraticAlgebra> {
    check_dim(a, t1)?;
    let s = Matrix::identity(a.ngens()).kron(t1.inverse().matrix());
    let out = a.map_relations(&s)?;
    let ring = a.ring().join(t1.ring())?;
    out.over(&ring)
}

fn preserves(a: &QuadraticAlgebra, s: &Matrix) -> bool {
    let span = a.relation_space();
    let n2 = a.ngens() * a.ngens();
    a.relation_rows().iter().all(|r| {
        let mut v = vec![Scalar::zero(); n2];
        for (c, x) in r {
            v[*c] = x.clone();
        }
        span.contains(&dense_to_sparse(&s.mul_vec(&v).expect("sizes match")))
    })
}

/// Whether S = M_m ⊗ (M_{m+1}·M₁⁻¹) maps R into itself.
pub fn twisting_step_check(a: &QuadraticAlgebra, mm: &LinearEndo, mm1: &LinearEndo, m1: &LinearEndo) -> Result<bool> {
    for m in [mm, mm1, m1] {
        check_dim(a, m)?;
    }
    let right = mm1.matrix().mul(m1.inverse().matrix())?;
    Ok(preserves(a, &mm.matrix().kron(&right)))
}

/// Checks the step condition for every consecutive pair of the system.
pub fn twisting_system_check(a: &QuadraticAlgebra, sys: &TwistingSystem) -> Result<bool> {
    let maps = sys.maps();
    for m in 0..maps.len().saturating_sub(1) {
        if !twisting_step_check(a, &maps[m], &maps[m + 1], &maps[0])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of all M₂ with (M₁ ⊗ M₂M₁⁻¹)(R) ⊆ R. The condition is linear in
/// N = M₂M₁⁻¹; the returned matrices are N·M₁ for a basis of solutions N.
pub fn solve_second_map(a: &QuadraticAlgebra, m1: &LinearEndo) -> Result<Vec<Matrix>> {
    check_dim(a, m1)?;
    let n = a.ngens();
    let span = a.relation_space();
    let m = m1.matrix();
    let nunk = n * n;
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for r in a.relation_rows() {
        // remainder of (M₁ ⊗ E_bj)(r) modulo R for each unknown N[b][j]
        let mut rems: Vec<SparseRow> = Vec::with_capacity(nunk);
        for b in 0..n {
            for j in 0..n {
                let mut v = vec![Scalar::zero(); n * n];
                for (idx, c) in &r {
                    let (i, jj) = (idx / n, idx % n);
                    if jj != j {
                        continue;
                    }
                    for aa in 0..n {
                        let x = m.get(aa, i);
                        if !x.is_zero() {
                            v[aa * n + b] = &v[aa * n + b] + &(c * x);
                        }
                    }
                }
                rems.push(span.reduce(&dense_to_sparse(&v)));
            }
        }
        for col in (0..n * n).filter(|c| !span.is_pivot(*c)) {
            let eq: Vec<Scalar> = rems
                .iter()
                .map(|rem| {
                    rem.iter()
                        .find(|(c, _)| *c == col)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_default()
                })
                .collect();
            if eq.iter().any(|e| !e.is_zero()) {
                eqs.push(eq);
            }
        }
    }
    let kernel = if eqs.is_empty() {
        Matrix::identity(nunk).rows()
    } else {
        Matrix::from_rows(eqs)?.nullspace()
    };
    kernel
        .into_iter()
        .map(|v| {
            let nm = Matrix::from_rows(v.chunks(n).map(|c| c.to_vec()).collect())?;
            nm.mul(m)
        })
        .collect()
}

/// The algebraic twisting system {M, M², …, M^k}.
pub fn algebraic_system(m: &LinearEndo, k: usize) -> Result<TwistingSystem> {
    if k == 0 {
        return Err(Error::Invalid("length must be at least 1".into()));
    }
    TwistingSystem::new((1..=k as u32).map(|e| m.pow(e)).collect())
}

/// Span of a list of equally sized matrices, as a subspace of flattened entries.
pub fn matrix_span(mats: &[Matrix]) -> Echelon {
    let ncols = mats.first().map(|m| m.nrows() * m.ncols()).unwrap_or(0);
    Echelon::from_rows(ncols, mats.iter().map(|m| dense_to_sparse(m.entries())))
}
