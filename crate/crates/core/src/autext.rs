//! Automorphisms of point schemes that are unions of coordinate lines, their
//! extension to Pⁿ, reconstruction of relations from (E, σ) and the Mori criterion.
//!
//! A line ℓ = (i₁, i₂) with i₁ < i₂ carries coordinates (p_{i₁}, p_{i₂}). A per-line
//! 2×2 matrix m sends source coordinates to the coordinates of the target line.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::QuadraticAlgebra;
use crate::linalg::{dense_to_sparse, Echelon, Matrix, SparseRow};
use crate::pointscheme::{sigma_at, ProjPoint};
use crate::scalars::{parse_scalar, ParamRing, Poly, Scalar};
use crate::twist::{LinearEndo, TwistingSystem};

/// A union of coordinate lines ℓ_{i₁i₂} in Pⁿ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinesModel {
    n: usize,
    lines: Vec<(usize, usize)>,
}

impl LinesModel {
    pub fn new(n: usize, lines: &[(usize, usize)]) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::Invalid("a lines model needs at least one line".into()));
        }
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(lines.len());
        for &(a, b) in lines {
            let (i1, i2) = (a.min(b), a.max(b));
            if i1 == i2 || i2 > n {
                return Err(Error::Invalid(format!("bad line {a}-{b} in P^{n}")));
            }
            if out.contains(&(i1, i2)) {
                return Err(Error::Invalid(format!("line {i1}-{i2} listed twice")));
            }
            out.push((i1, i2));
        }
        out.sort_unstable();
        Ok(LinesModel { n, lines: out })
    }

    /// All C(n+1, 2) coordinate lines.
    pub fn complete(n: usize) -> Result<Self> {
        let lines: Vec<(usize, usize)> = (0..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        LinesModel::new(n, &lines)
    }

    /// The three coordinate lines of P².
    pub fn triangle() -> Self {
        LinesModel::complete(2).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[(usize, usize)] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn index_of(&self, line: (usize, usize)) -> Option<usize> {
        let key = (line.0.min(line.1), line.0.max(line.1));
        self.lines.iter().position(|&l| l == key)
    }

    pub fn is_complete(&self) -> bool {
        self.lines.len() == (self.n + 1) * self.n / 2
    }

    /// Coordinates lying on at least one line.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.lines.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn two_by_two(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Matrix {
    Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

/// An automorphism of a lines model: a permutation of the lines together with a
/// projective-linear map on each line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EAutomorphism {
    model: LinesModel,
    line_map: Vec<usize>,
    per_line: Vec<Matrix>,
}

impl EAutomorphism {
    /// Checks that the line map is a bijection, each per-line map is invertible and
    /// every vertex has a single image however it is reached.
    pub fn new(model: &LinesModel, line_map: Vec<usize>, per_line: Vec<Matrix>) -> Result<Self> {
        let k = model.len();
        if line_map.len() != k || per_line.len() != k {
            return Err(Error::Dimension(format!("expected data for {k} lines")));
        }
        let mut seen = vec![false; k];
        for &t in &line_map {
            if t >= k || seen[t] {
                return Err(Error::Invalid("line map is not a permutation".into()));
            }
            seen[t] = true;
        }
        for m in &per_line {
            if m.nrows() != 2 || m.ncols() != 2 {
                return Err(Error::Dimension("per-line maps must be 2x2".into()));
            }
            if m.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        let f = EAutomorphism {
            model: model.clone(),
            line_map,
            per_line,
        };
        let mut images: BTreeMap<usize, ProjPoint> = BTreeMap::new();
        for (li, &(i1, i2)) in model.lines().iter().enumerate() {
            for (v, img) in [(i1, f.image_in_ambient(li, 0)), (i2, f.image_in_ambient(li, 1))] {
                match images.get(&v) {
                    Some(prev) if *prev != img => {
                        return Err(Error::Invalid(format!("vertex {v} has inconsistent images")));
                    }
                    Some(_) => {}
                    None => {
                        images.insert(v, img);
                    }
                }
            }
        }
        // vertices lying on two or more lines are singular points of E
        for &v in &model.vertices() {
            let on = model.lines().iter().filter(|&&(a, b)| a == v || b == v).count();
            if on >= 2 {
                let img = &images[&v];
                let nz = img.coords().iter().filter(|c| !c.is_zero()).count();
                if nz != 1 {
                    return Err(Error::Invalid(format!("singular vertex {v} must map to a vertex")));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(model: &LinesModel) -> Self {
        let k = model.len();
        EAutomorphism {
            model: model.clone(),
            line_map: (0..k).collect(),
            per_line: vec![Matrix::identity(2); k],
        }
    }

    /// μ(λ): diag(λ_ℓ, 1) on every line ℓ, with λ listed in model line order.
    pub fn mu(model: &LinesModel, lambdas: &[Scalar]) -> Result<Self> {
        if lambdas.len() != model.len() {
            return Err(Error::Dimension(format!(
                "{} scalars for {} lines",
                lambdas.len(),
                model.len()
            )));
        }
        let per_line = lambdas
            .iter()
            .map(|l| two_by_two(l.clone(), Scalar::zero(), Scalar::zero(), Scalar::one()))
            .collect();
        EAutomorphism::new(model, (0..model.len()).collect(), per_line)
    }

    /// μ(α, β, γ) on the triangle: (0:b:c) ↦ (0:αb:c), (a:0:c) ↦ (a:0:βc),
    /// (a:b:0) ↦ (γa:b:0).
    pub fn mu_triangle(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Result<Self> {
        let model = LinesModel::triangle();
        let (o, z) = (Scalar::one(), Scalar::zero());
        let per_line = vec![
            two_by_two(gamma.clone(), z.clone(), z.clone(), o.clone()),
            two_by_two(o.clone(), z.clone(), z.clone(), beta.clone()),
            two_by_two(alpha.clone(), z.clone(), z, o),
        ];
        EAutomorphism::new(&model, vec![0, 1, 2], per_line)
    }

    /// Restriction of the coordinate permutation e_i ↦ e_{perm[i]}.
    pub fn coordinate_permutation(model: &LinesModel, perm: &[usize]) -> Result<Self> {
        let endo = LinearEndo::permutation(&ParamRing::rationals(), perm)?;
        EAutomorphism::restrict(model, endo.matrix())
    }

    /// Res_E of a point map W ∈ GL_{n+1}: fails unless W permutes the lines.
    pub fn restrict(model: &LinesModel, w: &Matrix) -> Result<Self> {
        let n1 = model.n() + 1;
        if w.nrows() != n1 || w.ncols() != n1 {
            return Err(Error::Dimension(format!("point map must be {n1}x{n1}")));
        }
        let mut line_map = Vec::with_capacity(model.len());
        let mut per_line = Vec::with_capacity(model.len());
        for &(i1, i2) in model.lines() {
            let support: Vec<usize> = (0..n1)
                .filter(|&r| !w.get(r, i1).is_zero() || !w.get(r, i2).is_zero())
                .collect();
            let target = match support.as_slice() {
                [j1, j2] => model.index_of((*j1, *j2)),
                _ => None,
            };
            let Some(t) = target else {
                return Err(Error::Invalid(format!(
                    "the map does not send line {i1}-{i2} onto a line of E"
                )));
            };
            let (j1, j2) = model.lines()[t];
            line_map.push(t);
            per_line.push(two_by_two(
                w.get(j1, i1).clone(),
                w.get(j1, i2).clone(),
                w.get(j2, i1).clone(),
                w.get(j2, i2).clone(),
            ));
        }
        EAutomorphism::new(model, line_map, per_line)
    }

    pub fn model(&self) -> &LinesModel {
        &self.model
    }

    pub fn line_map(&self) -> &[usize] {
        &self.line_map
    }

    pub fn per_line(&self) -> &[Matrix] {
        &self.per_line
    }

    /// Image of vertex `which` (0 = first coordinate, 1 = second) of line `li`.
    fn image_in_ambient(&self, li: usize, which: usize) -> ProjPoint {
        let m = &self.per_line[li];
        let (j1, j2) = self.model.lines()[self.line_map[li]];
        let mut v = vec![Scalar::zero(); self.model.n() + 1];
        v[j1] = m.get(0, which).clone();
        v[j2] = m.get(1, which).clone();
        ProjPoint::new(v).expect("invertible per-line map")
    }

    /// Image of a point lying on line `li`, given in that line's coordinates.
    pub fn apply_on_line(&self, li: usize, coords: (&Scalar, &Scalar)) -> ProjPoint {
        let m = &self.per_line[li];
        let (j1, j2) = self.model.lines()[self.line_map[li]];
        let mut v = vec![Scalar::zero(); self.model.n() + 1];
        v[j1] = &(m.get(0, 0) * coords.0) + &(m.get(0, 1) * coords.1);
        v[j2] = &(m.get(1, 0) * coords.0) + &(m.get(1, 1) * coords.1);
        ProjPoint::new(v).expect("invertible per-line map")
    }

    /// self ∘ other: apply `other` first.
    pub fn compose(&self, other: &EAutomorphism) -> Result<EAutomorphism> {
        if self.model != other.model {
            return Err(Error::Invalid("automorphisms live on different models".into()));
        }
        let mut line_map = Vec::with_capacity(self.model.len());
        let mut per_line = Vec::with_capacity(self.model.len());
        for li in 0..self.model.len() {
            let mid = other.line_map[li];
            line_map.push(self.line_map[mid]);
            per_line.push(self.per_line[mid].mul(&other.per_line[li])?);
        }
        Ok(EAutomorphism {
            model: self.model.clone(),
            line_map,
            per_line,
        })
    }

    pub fn inverse(&self) -> EAutomorphism {
        let k = self.model.len();
        let mut line_map = vec![0; k];
        let mut per_line = vec![Matrix::identity(2); k];
        for li in 0..k {
            let t = self.line_map[li];
            line_map[t] = li;
            per_line[t] = self.per_line[li].inverse().expect("invertible");
        }
        EAutomorphism {
            model: self.model.clone(),
            line_map,
            per_line,
        }
    }

    pub fn pow(&self, k: i32) -> EAutomorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = EAutomorphism::identity(&self.model);
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc).expect("same model");
        }
        acc
    }

    /// Equality as maps of E: same line permutation, proportional per-line maps.
    pub fn proj_eq(&self, other: &EAutomorphism) -> bool {
        self.model == other.model
            && self.line_map == other.line_map
            && self
                .per_line
                .iter()
                .zip(&other.per_line)
                .all(|(a, b)| a.proportional(b))
    }

    pub fn is_identity(&self) -> bool {
        self.proj_eq(&EAutomorphism::identity(&self.model))
    }

    /// Applies a parameter substitution to every per-line map.
    pub fn substitute(&self, values: &[Option<Scalar>]) -> Result<EAutomorphism> {
        let per_line = self
            .per_line
            .iter()
            .map(|m| m.substitute(values))
            .collect::<Result<Vec<_>>>()?;
        EAutomorphism::new(&self.model, self.line_map.clone(), per_line)
    }

    /// Text form accepted by [`EAutomorphism::parse`].
    pub fn to_text(&self, ring: &ParamRing) -> String {
        let mut out = format!("dim: {}\n", self.model.n());
        let lines: Vec<String> = self.model.lines().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        out.push_str(&format!("lines: {}\n", lines.join(", ")));
        for (li, &(i1, i2)) in self.model.lines().iter().enumerate() {
            let (j1, j2) = self.model.lines()[self.line_map[li]];
            let m = &self.per_line[li];
            let e = |r, c| m.get(r, c).to_string_in(ring);
            out.push_str(&format!(
                "{i1}-{i2} -> {j1}-{j2}: {}, {}; {}, {}\n",
                e(0, 0),
                e(0, 1),
                e(1, 0),
                e(1, 1)
            ));
        }
        out
    }

    /// Parses the automorphism file format:
    ///
    /// ```text
    /// dim: 2
    /// lines: 0-1, 0-2, 1-2
    /// 1-2 -> 1-2: alpha, 0; 0, 1
    /// ```
    ///
    /// `lines:` defaults to every coordinate line. Each line needs exactly one entry.
    pub fn parse(text: &str, ring: &ParamRing) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut lines: Option<Vec<(usize, usize)>> = None;
        let mut maps: Vec<(Line, Line, Matrix)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", ln + 1));
            if let Some(rest) = line.strip_prefix("dim:") {
                dim = Some(rest.trim().parse().map_err(|_| err("bad dimension"))?);
            } else if let Some(rest) = line.strip_prefix("lines:") {
                let ls = rest
                    .split(',')
                    .map(|s| parse_pair(s.trim()).ok_or_else(|| err("bad line")))
                    .collect::<Result<Vec<_>>>()?;
                lines = Some(ls);
            } else {
                let (head, body) = line.split_once(':').ok_or_else(|| err("expected `a-b -> c-d: ...`"))?;
                let (src, dst) = head.split_once("->").ok_or_else(|| err("expected `->`"))?;
                let src = parse_pair(src.trim()).ok_or_else(|| err("bad source line"))?;
                let dst = parse_pair(dst.trim()).ok_or_else(|| err("bad target line"))?;
                let rows = body
                    .split(';')
                    .map(|r| {
                        r.split(',')
                            .map(|e| parse_scalar(e.trim(), ring))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_rows(rows)?;
                if m.nrows() != 2 || m.ncols() != 2 {
                    return Err(err("per-line map must be 2x2"));
                }
                maps.push((src, dst, m));
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("missing `dim:`".into()))?;
        let model = match lines {
            Some(ls) => LinesModel::new(dim, &ls)?,
            None => LinesModel::complete(dim)?,
        };
        let k = model.len();
        let mut line_map: Vec<Option<usize>> = vec![None; k];
        let mut per_line: Vec<Option<Matrix>> = vec![None; k];
        for (src, dst, m) in maps {
            let s = model
                .index_of(src)
                .ok_or_else(|| Error::Parse(format!("{}-{} is not a line of the model", src.0, src.1)))?;
            let t = model
                .index_of(dst)
                .ok_or_else(|| Error::Parse(format!("{}-{} is not a line of the model", dst.0, dst.1)))?;
            if line_map[s].is_some() {
                return Err(Error::Parse(format!("line {}-{} given twice", src.0, src.1)));
            }
            line_map[s] = Some(t);
            per_line[s] = Some(m);
        }
        let line_map = line_map
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("every line needs a map".into()))?;
        let per_line = per_line.into_iter().collect::<Option<Vec<_>>>().expect("set together");
        EAutomorphism::new(&model, line_map, per_line)
    }
}

type Line = (usize, usize);

fn parse_pair(s: &str) -> Option<Line> {
    let (a, b) = s.split_once('-')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// A cycle condition of the torus part: on line (i₁, i₂) the ratio forced by the
/// spanning tree must equal the ratio of the line itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCondition {
    pub line: (usize, usize),
    /// Ratio g_{i₁}/g_{i₂} demanded by the line.
    pub line_ratio: Scalar,
    /// The same ratio propagated along the tree path.
    pub path_ratio: Scalar,
    /// Primitive numerator of line_ratio/path_ratio − 1; zero when satisfied.
    pub obstruction: Poly,
}

impl CycleCondition {
    pub fn holds(&self) -> bool {
        self.obstruction.is_zero()
    }

    pub fn to_string_in(&self, ring: &ParamRing) -> String {
        format!(
            "line {}-{}: {} = {}",
            self.line.0,
            self.line.1,
            self.line_ratio.to_string_in(ring),
            self.path_ratio.to_string_in(ring)
        )
    }

    pub fn obstruction_string(&self, ring: &ParamRing) -> String {
        Scalar::from_poly(self.obstruction.clone()).to_string_in(ring)
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionVerdict {
    pub extends: bool,
    /// Point map G ∈ GL_{n+1} restricting to the automorphism, up to scalar.
    pub witness: Option<Matrix>,
    /// Dimension of the space of matrices G with G(ℓ) compatible on every line.
    pub solution_dim: usize,
    /// Cycle conditions when every per-line map is monomial; empty otherwise.
    pub conditions: Vec<CycleCondition>,
}

impl ExtensionVerdict {
    /// Conditions that fail identically over the parameter field.
    pub fn obstructions(&self) -> Vec<&CycleCondition> {
        self.conditions.iter().filter(|c| !c.holds()).collect()
    }
}

fn is_monomial_2x2(m: &Matrix) -> bool {
    let diag = m.get(0, 1).is_zero() && m.get(1, 0).is_zero();
    let anti = m.get(0, 0).is_zero() && m.get(1, 1).is_zero();
    diag || anti
}

fn nonzero_entry(col: &[Scalar]) -> Scalar {
    col.iter().find(|c| !c.is_zero()).cloned().expect("nonzero column")
}

fn find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Cycle conditions of a monomial automorphism. G must send e_i to g_i·e_{π(i)};
/// each line then fixes g_{i₁}/g_{i₂}, and consistency around cycles of the line
/// graph is what remains. The spanning tree prefers short lines, so for the full
/// line set it is the path 0–1–…–n.
fn cycle_conditions(f: &EAutomorphism) -> Vec<CycleCondition> {
    let model = f.model();
    let ratio: Vec<Scalar> = f
        .per_line
        .iter()
        .map(|m| {
            let a = nonzero_entry(&m.column(0));
            let b = nonzero_entry(&m.column(1));
            a.checked_div(&b).expect("nonzero")
        })
        .collect();
    let mut order: Vec<usize> = (0..model.len()).collect();
    order.sort_by_key(|&li| {
        let (a, b) = model.lines()[li];
        (b - a, a)
    });
    let nv = model.n() + 1;
    let mut parent: Vec<usize> = (0..nv).collect();
    let mut tree: Vec<usize> = Vec::new();
    let mut extra: Vec<usize> = Vec::new();
    for &li in &order {
        let (a, b) = model.lines()[li];
        let (ra, rb) = (find_root(&mut parent, a), find_root(&mut parent, b));
        if ra == rb {
            extra.push(li);
        } else {
            parent[ra.max(rb)] = ra.min(rb);
            tree.push(li);
        }
    }
    // potentials g_v with g_root = 1, propagated through tree edges
    let mut g: Vec<Option<Scalar>> = vec![None; nv];
    for v in model.vertices() {
        if find_root(&mut parent, v) == v {
            g[v] = Some(Scalar::one());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &li in &tree {
            let (a, b) = model.lines()[li];
            match (&g[a], &g[b]) {
                (Some(ga), None) => {
                    g[b] = Some(ga.checked_div(&ratio[li]).expect("nonzero"));
                    changed = true;
                }
                (None, Some(gb)) => {
                    g[a] = Some(gb * &ratio[li]);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    extra.sort_unstable();
    extra
        .into_iter()
        .map(|li| {
            let (a, b) = model.lines()[li];
            let ga = g[a].as_ref().expect("tree covers the vertex");
            let gb = g[b].as_ref().expect("tree covers the vertex");
            let path_ratio = ga.checked_div(gb).expect("nonzero");
            let c = ratio[li].checked_div(&path_ratio).expect("nonzero");
            let obstruction = (&c - &Scalar::one()).numer().primitive();
            CycleCondition {
                line: (a, b),
                line_ratio: ratio[li].clone(),
                path_ratio,
                obstruction,
            }
        })
        .collect()
}

/// The linear conditions "G·p ∥ f(p)" at both vertices and the midpoint of every
/// line, as rows over the entries G[a][b] (index a·(n+1)+b).
fn extension_rows(f: &EAutomorphism) -> Vec<SparseRow> {
    let model = f.model();
    let n1 = model.n() + 1;
    let mut rows = Vec::new();
    for (li, &(i1, i2)) in model.lines().iter().enumerate() {
        let one = Scalar::one();
        let zero = Scalar::zero();
        let samples = [(&one, &zero), (&zero, &one), (&one, &one)];
        for (u, v) in samples {
            let mut p = vec![Scalar::zero(); n1];
            p[i1] = u.clone();
            p[i2] = v.clone();
            let img = f.apply_on_line(li, (u, v));
            let img = img.coords();
            for a in 0..n1 {
                for c in a + 1..n1 {
                    // (Gp)_a img_c − (Gp)_c img_a
                    let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (b, pb) in p.iter().enumerate() {
                        if pb.is_zero() {
                            continue;
                        }
                        if !img[c].is_zero() {
                            let e = row.entry(a * n1 + b).or_default();
                            *e = &*e + &(pb * &img[c]);
                        }
                        if !img[a].is_zero() {
                            let e = row.entry(c * n1 + b).or_default();
                            *e = &*e - &(pb * &img[a]);
                        }
                    }
                    let row: SparseRow = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows
}

fn matrix_from_flat(v: &[Scalar], n1: usize) -> Matrix {
    Matrix::from_rows(v.chunks(n1).map(|c| c.to_vec()).collect()).expect("square")
}

/// Picks an invertible member of the span of `basis`: the first basis element with
/// nonzero determinant, else Σ tᵏ·B_k at the first small integer t that works.
fn invertible_member(basis: &[Matrix]) -> Result<Option<Matrix>> {
    for b in basis {
        if !b.det()?.is_zero() {
            return Ok(Some(b.clone()));
        }
    }
    if basis.len() < 2 {
        return Ok(None);
    }
    let n = basis[0].nrows();
    let combo = |t: i64| -> Matrix {
        let mut acc = Matrix::zeros(n, n);
        let mut tk = Scalar::one();
        for b in basis {
            acc = acc.add(&b.scale(&tk)).expect("same size");
            tk = &tk * &Scalar::from(t);
        }
        acc
    };
    // the determinant of the combination is a polynomial in t of degree at most
    // n·(len−1); if it is nonzero, one of that many + 1 integers avoids its roots
    let tries = n * (basis.len() - 1) + 1;
    for t in 2..(2 + tries as i64) {
        let m = combo(t);
        if !m.det()?.is_zero() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Decides whether f is the restriction of a projective-linear map of Pⁿ.
pub fn extend_to_pgl(f: &EAutomorphism) -> Result<ExtensionVerdict> {
    let model = f.model();
    let n1 = model.n() + 1;
    let span = Echelon::from_rows(n1 * n1, extension_rows(f));
    let basis: Vec<Matrix> = span.kernel().iter().map(|v| matrix_from_flat(v, n1)).collect();
    let witness = invertible_member(&basis)?.map(|w| w.projective_normal());
    if let Some(w) = &witness {
        let back = EAutomorphism::restrict(model, w)?;
        if !back.proj_eq(f) {
            return Err(Error::Invalid(
                "extension witness does not restrict to the automorphism".into(),
            ));
        }
    }
    let conditions = if f.per_line.iter().all(is_monomial_2x2) {
        cycle_conditions(f)
    } else {
        Vec::new()
    };
    Ok(ExtensionVerdict {
        extends: witness.is_some(),
        witness,
        solution_dim: basis.len(),
        conditions,
    })
}

/// Structure of Aut(E↑Pⁿ) for the full union of coordinate lines.
#[derive(Clone, Debug)]
pub struct AutEUp {
    pub torus_rank: usize,
    /// The cycle conditions on a generic μ(λ), one per line off the path 0–1–…–n.
    pub torus_constraints: Vec<CycleCondition>,
    /// Ring with the symbolic λ's used to state the constraints.
    pub constraint_ring: ParamRing,
    pub permutation_group_order: usize,
    /// Torus generators diag(1,…,s,…,1) and adjacent transpositions, each checked
    /// to extend.
    pub generators: Vec<EAutomorphism>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn aut_e_up_description(model: &LinesModel) -> Result<AutEUp> {
    let n = model.n();
    if n <= 1 {
        return Err(Error::Unsupported("E = P¹ not a proper line union".into()));
    }
    if !model.is_complete() {
        return Err(Error::Unsupported(
            "only the complete union of coordinate lines is classified".into(),
        ));
    }
    // torus rank: vertices minus connected components of the line graph
    let verts = model.vertices();
    let mut parent: Vec<usize> = (0..=n).collect();
    for &(a, b) in model.lines() {
        let (ra, rb) = (find_root(&mut parent, a), find_root(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let components = verts.iter().filter(|&&v| find_root(&mut parent, v) == v).count();
    let torus_rank = verts.len() - components;

    let names: Vec<String> = model.lines().iter().map(|(a, b)| format!("l{a}{b}")).collect();
    let lring = ParamRing::new(&names, false)?;
    let lambdas: Vec<Scalar> = (0..model.len()).map(Scalar::param).collect();
    let generic = EAutomorphism::mu(model, &lambdas)?;
    let torus_constraints = extend_to_pgl(&generic)?.conditions;

    let permutation_group_order = permutations(n + 1)
        .into_iter()
        .filter(|p| {
            model
                .lines()
                .iter()
                .all(|&(a, b)| model.index_of((p[a], p[b])).is_some())
        })
        .count();

    let mut generators = Vec::new();
    let sring = ParamRing::new(&["s"], false)?;
    let s = Scalar::named(&sring, "s")?;
    for i in 1..=n {
        let mut d = vec![Scalar::one(); n + 1];
        d[i] = s.clone();
        generators.push(EAutomorphism::restrict(model, &Matrix::diagonal(&d))?);
    }
    for i in 0..n {
        let mut p: Vec<usize> = (0..=n).collect();
        p.swap(i, i + 1);
        generators.push(EAutomorphism::coordinate_permutation(model, &p)?);
    }
    for g in &generators {
        if !extend_to_pgl(g)?.extends {
            return Err(Error::Invalid("a generator of Aut(E↑Pⁿ) failed to extend".into()));
        }
    }
    Ok(AutEUp {
        torus_rank,
        torus_constraints,
        constraint_ring: lring,
        permutation_group_order,
        generators,
    })
}

/// The quadratic relations vanishing on the graph of s: R = ker μ.
///
/// On line (i₁, i₂) ↦ (j₁, j₂) with matrix m, the point e_{i₁} + t·e_{i₂} goes to
/// (m₁₁ + m₁₂t)e_{j₁} + (m₂₁ + m₂₂t)e_{j₂}; the coefficients of t⁰, t¹, t² of
/// r̃(p(t), s(p(t))) must vanish.
pub fn reconstruct_relations(s: &EAutomorphism, ring: &ParamRing, gen_names: &[String]) -> Result<QuadraticAlgebra> {
    let model = s.model();
    let n1 = model.n() + 1;
    if gen_names.len() != n1 {
        return Err(Error::Dimension(format!(
            "{} generator names for P^{}",
            gen_names.len(),
            model.n()
        )));
    }
    let idx = |a: usize, b: usize| a * n1 + b;
    let mut rows: Vec<SparseRow> = Vec::new();
    for (li, &(i1, i2)) in model.lines().iter().enumerate() {
        let (j1, j2) = model.lines()[s.line_map()[li]];
        let m = &s.per_line()[li];
        let (m11, m12, m21, m22) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        let eqs: [Vec<(usize, &Scalar)>; 3] = [
            vec![(idx(i1, j1), m11), (idx(i1, j2), m21)],
            vec![
                (idx(i1, j1), m12),
                (idx(i1, j2), m22),
                (idx(i2, j1), m11),
                (idx(i2, j2), m21),
            ],
            vec![(idx(i2, j1), m12), (idx(i2, j2), m22)],
        ];
        for eq in eqs {
            let mut row = vec![Scalar::zero(); n1 * n1];
            for (c, v) in eq {
                row[c] = &row[c] + v;
            }
            let sp = dense_to_sparse(&row);
            if !sp.is_empty() {
                rows.push(sp);
            }
        }
    }
    let kernel = Echelon::from_rows(n1 * n1, rows).kernel();
    if kernel.is_empty() {
        return Err(Error::Invalid("no quadratic algebra supports this pair (E,σ)".into()));
    }
    let rels: Vec<SparseRow> = Echelon::from_dense_rows(&kernel).rows().cloned().collect();
    QuadraticAlgebra::from_rows(ring, gen_names.to_vec(), &rels, None)
}

/// Reads σ off the algebra: σ at the generic point e_{i₁} + t·e_{i₂} of each line.
pub fn sigma_on_model(a: &QuadraticAlgebra, model: &LinesModel) -> Result<EAutomorphism> {
    let n1 = model.n() + 1;
    if a.ngens() != n1 {
        return Err(Error::Dimension("model and algebra differ in dimension".into()));
    }
    let (_, t) = a.ring().extend_fresh("t");
    let tt = Scalar::param(t);
    let mut line_map = Vec::with_capacity(model.len());
    let mut per_line = Vec::with_capacity(model.len());
    for &(i1, i2) in model.lines() {
        let mut p = vec![Scalar::zero(); n1];
        p[i1] = Scalar::one();
        p[i2] = tt.clone();
        let q = sigma_at(a, &ProjPoint::new(p)?)?;
        let support: Vec<usize> = (0..n1).filter(|&k| !q.coords()[k].is_zero()).collect();
        let target = match support.as_slice() {
            [j1, j2] => model.index_of((*j1, *j2)),
            _ => None,
        };
        let Some(ti) = target else {
            return Err(Error::Invalid(format!(
                "σ does not map line {i1}-{i2} onto a line of the model"
            )));
        };
        let (j1, j2) = model.lines()[ti];
        let ratio = q.coords()[j2].checked_div(&q.coords()[j1])?;
        let lin = |p: &Poly| -> Result<(Scalar, Scalar)> {
            let cs = p.coefficients_in(t);
            if cs.keys().any(|&e| e > 1) {
                return Err(Error::Invalid(format!("σ is not linear on line {i1}-{i2}")));
            }
            let get = |e: u16| cs.get(&e).cloned().map(Scalar::from_poly).unwrap_or_default();
            Ok((get(0), get(1)))
        };
        let (d0, d1) = lin(ratio.denom())?;
        let (n0, n1c) = lin(ratio.numer())?;
        line_map.push(ti);
        per_line.push(two_by_two(d0, d1, n0, n1c));
    }
    EAutomorphism::new(model, line_map, per_line)
}

/// Outcome of the Mori criterion with ρ_m = (σ′)^m ρ₀ σ^{−m}.
#[derive(Clone, Debug)]
pub enum MoriVerdict {
    /// Every ρ_m extends. The increments δ_m = ρ_{m+1}ρ_m⁻¹ satisfy
    /// δ_m = σ′δ_{m−1}σ′⁻¹, so δ_c = δ₀ makes them periodic, and ρ₀, …, ρ_c
    /// extending forces all ρ_m to extend.
    EquivalentWithPeriod { period: usize, increment: EAutomorphism },
    /// ρ_m does not extend; the failing cycle conditions are attached.
    FailsAt {
        m: usize,
        obstructions: Vec<CycleCondition>,
    },
    /// No failure and no period up to the bound.
    Inconclusive { bound: usize },
}

impl MoriVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, MoriVerdict::EquivalentWithPeriod { .. })
    }
}

pub fn mori_check(
    sigma: &EAutomorphism,
    sigma_p: &EAutomorphism,
    rho0: &EAutomorphism,
    bound: usize,
) -> Result<MoriVerdict> {
    if bound == 0 {
        return Err(Error::Invalid("bound must be at least 1".into()));
    }
    if sigma.model() != sigma_p.model() || sigma.model() != rho0.model() {
        return Err(Error::Invalid("automorphisms live on different models".into()));
    }
    let fails = |m: usize, v: ExtensionVerdict| MoriVerdict::FailsAt {
        m,
        obstructions: v.obstructions().into_iter().cloned().collect(),
    };
    let v0 = extend_to_pgl(rho0)?;
    if !v0.extends {
        return Ok(fails(0, v0));
    }
    let sigma_inv = sigma.inverse();
    let mut prev = rho0.clone();
    let mut delta0: Option<EAutomorphism> = None;
    for m in 1..=bound {
        let cur = sigma_p.compose(&prev)?.compose(&sigma_inv)?;
        let v = extend_to_pgl(&cur)?;
        if !v.extends {
            return Ok(fails(m, v));
        }
        let delta = cur.compose(&prev.inverse())?;
        match &delta0 {
            None => delta0 = Some(delta),
            Some(d0) if delta.proj_eq(d0) => {
                return Ok(MoriVerdict::EquivalentWithPeriod {
                    period: m - 1,
                    increment: d0.clone(),
                });
            }
            Some(_) => {}
        }
        prev = cur;
    }
    Ok(MoriVerdict::Inconclusive { bound })
}

/// The twisting system of Remark-style stabilisation: with τ^E the restriction of
/// the point map t1ᵀ, the maps e_k = (τ^E σ)^k σ^{−k} must extend, and their
/// witnesses transposed give M_k on V.
pub fn generate_system_from_geometric(
    a: &QuadraticAlgebra,
    sigma: &EAutomorphism,
    t1: &LinearEndo,
    bound: usize,
) -> Result<TwistingSystem> {
    if bound == 0 {
        return Err(Error::Invalid("bound must be at least 1".into()));
    }
    if t1.dim() != a.ngens() {
        return Err(Error::Dimension("map and algebra differ in dimension".into()));
    }
    let tau_e = EAutomorphism::restrict(sigma.model(), &t1.matrix().transpose())?;
    let sigma_p = tau_e.compose(sigma)?;
    let sigma_inv = sigma.inverse();
    let ring = a.ring().join(t1.ring())?;
    let mut maps = Vec::with_capacity(bound);
    let mut sp_k = EAutomorphism::identity(sigma.model());
    let mut s_inv_k = EAutomorphism::identity(sigma.model());
    for k in 1..=bound {
        sp_k = sigma_p.compose(&sp_k)?;
        s_inv_k = s_inv_k.compose(&sigma_inv)?;
        let e = sp_k.compose(&s_inv_k)?;
        let v = extend_to_pgl(&e)?;
        let Some(w) = v.witness else {
            return Err(Error::Invalid(format!("iterate {k} does not extend to Pⁿ")));
        };
        maps.push(LinearEndo::new(&ring, w.transpose())?);
    }
    TwistingSystem::new(maps)
}

impl fmt::Display for LinesModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lines.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "lines of P^{}: {}", self.n, parts.join(", "))
    }
}
