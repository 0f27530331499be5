use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::scalars::ParamRing;

use super::ncpoly::{default_generator_names, NcPoly};

/// A = k⟨x₀,…,x_n⟩/⟨R⟩ with R ⊆ V⊗V given by a linearly independent list of
/// degree-2 relations.
#[derive(Clone)]
pub struct QuadraticAlgebra {
    ring: ParamRing,
    gen_names: Vec<String>,
    relations: Vec<NcPoly>,
    name: Option<String>,
}

impl QuadraticAlgebra {
    pub fn new(ring: &ParamRing, gen_names: Vec<String>, relations: Vec<NcPoly>, name: Option<String>) -> Result<Self> {
        let ngens = gen_names.len();
        if ngens == 0 || ngens > 255 {
            return Err(Error::Invalid(format!("unsupported generator count {ngens}")));
        }
        let mut span = Echelon::new(ngens * ngens);
        let mut ring = ring.clone();
        for r in &relations {
            if r.ngens() != ngens {
                return Err(Error::Dimension(format!(
                    "relation on {} generators, expected {ngens}",
                    r.ngens()
                )));
            }
            ring = ring.join(r.ring())?;
            match r.degree() {
                Some(2) => {}
                Some(d) => return Err(Error::NotQuadratic { got: d }),
                None if r.is_zero() => return Err(Error::DependentRelations),
                None => return Err(Error::Invalid("relation is not homogeneous".into())),
            }
            if !span.insert(r.to_sparse(2)?) {
                return Err(Error::DependentRelations);
            }
        }
        Ok(QuadraticAlgebra {
            ring,
            gen_names,
            relations,
            name,
        })
    }

    /// Builds an algebra from relation vectors in the word basis of V⊗V.
    pub fn from_rows(
        ring: &ParamRing,
        gen_names: Vec<String>,
        rows: &[SparseRow],
        name: Option<String>,
    ) -> Result<Self> {
        let n = gen_names.len();
        let rels = rows.iter().map(|r| NcPoly::from_sparse(ring, n, 2, r)).collect();
        QuadraticAlgebra::new(ring, gen_names, rels, name)
    }

    /// Parses relations written in generator names, one per string.
    pub fn parse(ring: &ParamRing, gen_names: &[&str], relations: &[&str]) -> Result<Self> {
        let names: Vec<String> = gen_names.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|s| NcPoly::parse(s, ring, &names))
            .collect::<Result<Vec<_>>>()?;
        QuadraticAlgebra::new(ring, names, rels, None)
    }

    pub fn free(ring: &ParamRing, ngens: usize) -> Self {
        QuadraticAlgebra::new(ring, default_generator_names(ngens), Vec::new(), None).expect("valid")
    }

    pub fn ring(&self) -> &ParamRing {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn relation_rows(&self) -> Vec<SparseRow> {
        self.relations
            .iter()
            .map(|r| r.to_sparse(2).expect("degree 2"))
            .collect()
    }

    pub fn relation_space(&self) -> Echelon {
        Echelon::from_rows(self.ngens() * self.ngens(), self.relation_rows())
    }

    /// Relations in reduced row echelon form over the (n+1)² word basis of V⊗V.
    pub fn relation_space_canonical(&self) -> Matrix {
        let rows = self.relation_space().to_dense();
        if rows.is_empty() {
            return Matrix::zeros(0, self.ngens() * self.ngens());
        }
        Matrix::from_rows(rows).expect("rectangular")
    }

    pub fn same_relation_space(&self, other: &QuadraticAlgebra) -> bool {
        self.ngens() == other.ngens() && self.relation_space() == other.relation_space()
    }

    /// The algebra whose relations are S(r), S acting on V⊗V by an (n+1)²×(n+1)² matrix.
    pub fn map_relations(&self, s: &Matrix) -> Result<QuadraticAlgebra> {
        let n2 = self.ngens() * self.ngens();
        if s.nrows() != n2 || s.ncols() != n2 {
            return Err(Error::Dimension(format!("operator on V⊗V must be {n2}x{n2}")));
        }
        let rows: Vec<SparseRow> = self
            .relation_rows()
            .iter()
            .map(|r| {
                let mut v = vec![crate::scalars::Scalar::zero(); n2];
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                crate::linalg::dense_to_sparse(&s.mul_vec(&v).expect("sizes match"))
            })
            .collect();
        QuadraticAlgebra::from_rows(&self.ring, self.gen_names.clone(), &rows, self.name.clone())
    }

    /// Relations transformed by g⊗g: the same algebra presented in new generators.
    pub fn change_generators(&self, g: &Matrix) -> Result<QuadraticAlgebra> {
        self.map_relations(&g.kron(g))
    }

    /// True when (M⊗M)(R) = R, i.e. M induces a graded automorphism.
    pub fn is_graded_automorphism(&self, m: &Matrix) -> Result<bool> {
        Ok(self.change_generators(m)?.same_relation_space(self))
    }

    /// Same relations over a larger ring.
    pub fn over(&self, ring: &ParamRing) -> Result<QuadraticAlgebra> {
        if !ring.contains(&self.ring) {
            return Err(Error::RingMismatch(format!("{} does not contain {}", ring, self.ring)));
        }
        let mut a = self.clone();
        a.ring = ring.clone();
        Ok(a)
    }
}

impl fmt::Display for QuadraticAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            writeln!(f, "algebra {n}")?;
        }
        writeln!(f, "field: {}", self.ring)?;
        writeln!(f, "generators: {}", self.gen_names.join(" "))?;
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "  {}", r.display(&self.gen_names))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadraticAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
