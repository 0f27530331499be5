//! The named families: commutative and quantum projective spaces, O_Q(P²) and the
//! three-dimensional Sklyanin algebras, with the O_Q twist-equivalence test, the
//! Hesse-cubic symmetries and the Λ₀ computations for O_Q(P²).

use std::fmt;

use crate::autext::{mori_check, EAutomorphism, LinesModel, MoriVerdict};
use crate::error::{Error, Result};
use crate::freealg::{default_generator_names, IdealTower, NcPoly, QuadraticAlgebra, Word};
use crate::linalg::{Echelon, Matrix};
use crate::pointscheme::{CoordRing, ProjPoint};
use crate::scalars::{identifiers, parse_scalar, ParamRing, Scalar};
use crate::twist::LinearEndo;

/// Which family, with its parameters as scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Commutative(usize),
    Oq { n: usize, q: Scalar },
    OQ { alpha: Scalar, beta: Scalar, gamma: Scalar },
    Skl3 { a: Scalar, b: Scalar, c: Scalar },
}

fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl FamilyKind {
    /// Parses `Commutative(2)`, `Oq(2, q)` or `Oq(n=2, q)`, `OQ(alpha, beta, gamma)`,
    /// `Skl3(a, b, c)`. Parameters are scalar expressions in the ring.
    pub fn parse(text: &str, ring: &ParamRing) -> Result<FamilyKind> {
        let text = text.trim();
        let (name, rest) = text
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("expected `Family(...)`, got `{text}`")))?;
        let inner = rest
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse("missing closing parenthesis".into()))?;
        let args: Vec<&str> = split_args(inner)
            .into_iter()
            .map(|a| match a.split_once('=') {
                Some((k, v)) if k.trim() == "n" => v.trim(),
                _ => a,
            })
            .collect();
        let dim = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("expected a dimension, got `{s}`")))
        };
        let scalar = |s: &str| parse_scalar(s, ring);
        let want = |k: usize| -> Result<()> {
            if args.len() != k {
                return Err(Error::Parse(format!("{} takes {k} arguments", name.trim())));
            }
            Ok(())
        };
        match name.trim() {
            "Commutative" => {
                want(1)?;
                Ok(FamilyKind::Commutative(dim(args[0])?))
            }
            "Oq" => {
                want(2)?;
                Ok(FamilyKind::Oq {
                    n: dim(args[0])?,
                    q: scalar(args[1])?,
                })
            }
            "OQ" => {
                want(3)?;
                Ok(FamilyKind::OQ {
                    alpha: scalar(args[0])?,
                    beta: scalar(args[1])?,
                    gamma: scalar(args[2])?,
                })
            }
            "Skl3" => {
                want(3)?;
                Ok(FamilyKind::Skl3 {
                    a: scalar(args[0])?,
                    b: scalar(args[1])?,
                    c: scalar(args[2])?,
                })
            }
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }

    /// Parameter names in the arguments, in order of appearance, and whether
    /// `omega` occurs.
    pub fn identifiers(text: &str) -> Result<(Vec<String>, bool)> {
        let inner = text.split_once('(').map(|(_, r)| r).unwrap_or("");
        let mut names: Vec<String> = Vec::new();
        let mut omega = false;
        for arg in split_args(inner.trim_end().trim_end_matches(')')) {
            let arg = match arg.split_once('=') {
                Some((k, v)) if k.trim() == "n" => v,
                _ => arg,
            };
            for id in identifiers(arg)? {
                if id == "omega" {
                    omega = true;
                } else if !names.contains(&id) {
                    names.push(id);
                }
            }
        }
        Ok((names, omega))
    }

    /// Parses with the parameter ring read off the identifiers.
    pub fn parse_with_inferred_ring(text: &str) -> Result<(FamilyKind, ParamRing)> {
        let (names, omega) = FamilyKind::identifiers(text)?;
        let ring = ParamRing::new(&names, omega)?;
        Ok((FamilyKind::parse(text, &ring)?, ring))
    }

    pub fn to_string_in(&self, ring: &ParamRing) -> String {
        let s = |x: &Scalar| x.to_string_in(ring);
        match self {
            FamilyKind::Commutative(n) => format!("Commutative({n})"),
            FamilyKind::Oq { n, q } => format!("Oq(n={n}, {})", s(q)),
            FamilyKind::OQ { alpha, beta, gamma } => format!("OQ({}, {}, {})", s(alpha), s(beta), s(gamma)),
            FamilyKind::Skl3 { a, b, c } => format!("Skl3({}, {}, {})", s(a), s(b), s(c)),
        }
    }
}

/// A realized family member.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub ring: ParamRing,
    pub algebra: QuadraticAlgebra,
    /// Point scheme as a union of lines with σ, for Oq (n ≥ 2) and OQ.
    pub model: Option<LinesModel>,
    pub sigma: Option<EAutomorphism>,
    /// The Hesse cubic abc(x³+y³+z³) − (a³+b³+c³)xyz, for Skl3.
    pub cubic: Option<(CoordRing, Scalar)>,
    pub warnings: Vec<String>,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn build(ring: &ParamRing, gens: Vec<String>, rels: Vec<NcPoly>, name: String) -> Result<QuadraticAlgebra> {
    QuadraticAlgebra::new(ring, gens, rels, Some(name))
}

fn word(ring: &ParamRing, n: usize, letters: &[usize], c: Scalar) -> NcPoly {
    NcPoly::term(ring, n, Word::new(letters), c)
}

/// x_i x_j − c·x_j x_i as a relation.
fn skew(ring: &ParamRing, n: usize, i: usize, j: usize, c: &Scalar) -> NcPoly {
    word(ring, n, &[i, j], Scalar::one())
        .sub(&word(ring, n, &[j, i], c.clone()))
        .expect("same ring")
}

pub fn make_family(kind: &FamilyKind, ring: &ParamRing) -> Result<FamilySpec> {
    let mut spec = FamilySpec {
        kind: kind.clone(),
        ring: ring.clone(),
        algebra: QuadraticAlgebra::free(ring, 1),
        model: None,
        sigma: None,
        cubic: None,
        warnings: Vec::new(),
    };
    match kind {
        FamilyKind::Commutative(n) | FamilyKind::Oq { n, .. } => {
            if *n == 0 {
                return Err(Error::Invalid("dimension must be at least 1".into()));
            }
            let n1 = n + 1;
            let q = match kind {
                FamilyKind::Oq { q, .. } => q.clone(),
                _ => Scalar::one(),
            };
            if q.is_zero() {
                return Err(Error::Invalid("q must be nonzero".into()));
            }
            let rels = (0..n1)
                .flat_map(|i| (i + 1..n1).map(move |j| (i, j)))
                .map(|(i, j)| skew(ring, n1, i, j, &q))
                .collect();
            spec.algebra = build(ring, default_generator_names(n1), rels, kind.to_string_in(ring))?;
            if matches!(kind, FamilyKind::Oq { .. }) && *n >= 2 {
                let model = LinesModel::complete(*n)?;
                let lam = vec![q.inv()?; model.len()];
                spec.sigma = Some(EAutomorphism::mu(&model, &lam)?);
                spec.model = Some(model);
            }
        }
        FamilyKind::OQ { alpha, beta, gamma } => {
            if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
                return Err(Error::Invalid("α, β, γ must be nonzero".into()));
            }
            // zy = αyz, xz = βzx, yx = γxy
            let rels = vec![
                skew(ring, 3, 2, 1, alpha),
                skew(ring, 3, 0, 2, beta),
                skew(ring, 3, 1, 0, gamma),
            ];
            spec.algebra = build(ring, names(&["x", "y", "z"]), rels, kind.to_string_in(ring))?;
            spec.sigma = Some(EAutomorphism::mu_triangle(alpha, beta, gamma)?);
            spec.model = Some(LinesModel::triangle());
        }
        FamilyKind::Skl3 { a, b, c } => {
            // a x_i x_{i+1} + b x_{i+1} x_i + c x_{i+2}²
            let rels = (0..3)
                .map(|i| {
                    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                    word(ring, 3, &[i, j], a.clone())
                        .add(&word(ring, 3, &[j, i], b.clone()))?
                        .add(&word(ring, 3, &[k, k], c.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            spec.algebra = build(ring, names(&["x", "y", "z"]), rels, kind.to_string_in(ring))?;
            spec.cubic = Some(hesse_cubic(ring, a, b, c)?);
            spec.warnings = sklyanin_warnings(a, b, c);
        }
    }
    Ok(spec)
}

fn sklyanin_warnings(a: &Scalar, b: &Scalar, c: &Scalar) -> Vec<String> {
    let mut out = Vec::new();
    let abc = &(a * b) * c;
    let cubes = &(&(a * &(a * a)) + &(b * &(b * b))) + &(c * &(c * c));
    if (&abc * &cubes).is_zero() {
        out.push("abc(a³+b³+c³) = 0: degenerate Sklyanin parameters, the point scheme is not an elliptic curve".into());
    }
    let t = &(&abc * &Scalar::from(3)).pow(3).expect("nonnegative power");
    if &cubes.pow(3).expect("nonnegative power") == t {
        out.push("(a³+b³+c³)³ = (3abc)³: degenerate Sklyanin parameters".into());
    }
    out
}

/// abc(x³+y³+z³) − (a³+b³+c³)xyz over the ring extended by x, y, z.
pub fn hesse_cubic(ring: &ParamRing, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(CoordRing, Scalar)> {
    let cr = CoordRing::new(ring, &names(&["x", "y", "z"]))?;
    let v: Vec<Scalar> = cr.coord_params.iter().map(|&i| Scalar::param(i)).collect();
    let cube = |s: &Scalar| s.pow(3).expect("nonnegative power");
    let abc = &(a * b) * c;
    let sum = &(&cube(a) + &cube(b)) + &cube(c);
    let xyz = &(&v[0] * &v[1]) * &v[2];
    let f = &(&abc * &(&(&cube(&v[0]) + &cube(&v[1])) + &cube(&v[2]))) - &(&sum * &xyz);
    Ok((cr, f))
}

/// f(W·p) for a form f in the coordinates of `cr`.
pub fn transform_form(cr: &CoordRing, f: &Scalar, w: &Matrix) -> Result<Scalar> {
    let v: Vec<Scalar> = cr.coord_params.iter().map(|&i| Scalar::param(i)).collect();
    let img = w.mul_vec(&v)?;
    let mut values: Vec<Option<Scalar>> = vec![None; cr.ring.nparams()];
    for (k, &i) in cr.coord_params.iter().enumerate() {
        values[i] = Some(img[k].clone());
    }
    f.substitute(&values)
}

// ---------------------------------------------------------------------------
// O_Q(P²) twist equivalence

#[derive(Clone, Debug)]
pub struct OqEquivalence {
    /// α′β′γ′ = (αβγ)^{±1}.
    pub closed_form: bool,
    /// +1 or −1 when the closed form holds.
    pub exponent: Option<i32>,
    /// First coordinate permutation certified by the Mori check.
    pub rho0: Option<Vec<usize>>,
    /// Mori verdict for each of the six permutations, in lexicographic order.
    pub mori: Vec<(Vec<usize>, MoriVerdict)>,
    /// True when every ρ₀ failed, false when one succeeded, None otherwise.
    pub mori_equivalent: Option<bool>,
}

impl OqEquivalence {
    pub fn agree(&self) -> bool {
        self.mori_equivalent == Some(self.closed_form)
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Closed form versus the Mori check over ρ₀ ∈ S₃. A torus factor in ρ₀ commutes
/// with both σ's, so it never changes whether the ρ_m extend.
pub fn oq_twist_equivalent(q1: [&Scalar; 3], q2: [&Scalar; 3], bound: usize) -> Result<OqEquivalence> {
    let p1 = &(q1[0] * q1[1]) * q1[2];
    let p2 = &(q2[0] * q2[1]) * q2[2];
    let exponent = if p2 == p1 {
        Some(1)
    } else if (&p1 * &p2).is_one() {
        Some(-1)
    } else {
        None
    };
    let sigma = EAutomorphism::mu_triangle(q1[0], q1[1], q1[2])?;
    let sigma_p = EAutomorphism::mu_triangle(q2[0], q2[1], q2[2])?;
    let mut mori = Vec::new();
    let mut rho0 = None;
    let mut all_fail = true;
    for perm in all_permutations(3) {
        let r = EAutomorphism::coordinate_permutation(sigma.model(), &perm)?;
        let v = mori_check(&sigma, &sigma_p, &r, bound)?;
        match &v {
            MoriVerdict::EquivalentWithPeriod { .. } => {
                all_fail = false;
                if rho0.is_none() {
                    rho0 = Some(perm.clone());
                }
            }
            MoriVerdict::Inconclusive { .. } => all_fail = false,
            MoriVerdict::FailsAt { .. } => {}
        }
        mori.push((perm, v));
    }
    let mori_equivalent = if rho0.is_some() {
        Some(true)
    } else if all_fail {
        Some(false)
    } else {
        None
    };
    Ok(OqEquivalence {
        closed_form: exponent.is_some(),
        exponent,
        rho0,
        mori,
        mori_equivalent,
    })
}

// ---------------------------------------------------------------------------
// Sklyanin symmetries

/// The cyclic shift P·e_i = e_{i+1} and D = diag(1, ω, ω²).
pub fn heisenberg_generators(ring: &ParamRing) -> Result<[LinearEndo; 2]> {
    if !ring.has_omega() {
        return Err(Error::Unsupported(
            "the Heisenberg generators need ω in the field".into(),
        ));
    }
    let w = Scalar::omega();
    let p = LinearEndo::permutation(ring, &[1, 2, 0])?;
    let d = LinearEndo::diagonal(ring, &[Scalar::one(), w.clone(), &w * &w])?;
    Ok([p, d])
}

/// The nine flexes (0:1:−ωᵏ) and their images under the cyclic shift.
pub fn inflection_points(ring: &ParamRing) -> Result<Vec<ProjPoint>> {
    let [p, _] = heisenberg_generators(ring)?;
    let w = Scalar::omega();
    let mut out = Vec::with_capacity(9);
    for shift in 0..3u32 {
        let m = p.matrix().pow(shift)?;
        let mut wk = Scalar::one();
        for _ in 0..3 {
            let base = ProjPoint::new(vec![Scalar::zero(), Scalar::one(), -&wk])?;
            out.push(base.apply(&m)?.normalized());
            wk = &wk * &w;
        }
    }
    Ok(out)
}

/// Size of the subgroup of PGL generated by the given matrices.
pub fn projective_group_order(gens: &[Matrix], limit: usize) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let mut elems: Vec<Matrix> = vec![Matrix::identity(first.nrows())];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in gens {
                let m = g.mul(e)?.projective_normal();
                if !elems.iter().any(|x| x.proportional(&m)) {
                    if elems.len() >= limit {
                        return Err(Error::TooLarge(format!("group has more than {limit} elements")));
                    }
                    elems.push(m.clone());
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    Ok(elems.len())
}

/// Orbits of `points` under the group generated by `gens`, as index sets. Fails if
/// a generator maps a point outside the list.
pub fn orbits(points: &[ProjPoint], gens: &[Matrix]) -> Result<Vec<Vec<usize>>> {
    let find = |p: &ProjPoint| points.iter().position(|x| x == p);
    let mut seen = vec![false; points.len()];
    let mut out = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let p = &points[orbit[k]];
            for g in gens {
                let img = p.apply(g)?;
                let j = find(&img).ok_or_else(|| Error::Invalid("the point set is not preserved".into()))?;
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// PBW rewriting in O_Q(P²)

/// c·x^i y^j z^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwTerm {
    pub exps: [u32; 3],
    pub coeff: Scalar,
}

impl PbwTerm {
    pub fn word(&self) -> Word {
        monomial_word(self.exps)
    }
}

pub fn monomial_word(exps: [u32; 3]) -> Word {
    let letters: Vec<usize> = (0..3).flat_map(|l| std::iter::repeat_n(l, exps[l] as usize)).collect();
    Word::new(&letters)
}

/// Q = (α, β, γ) with zy = αyz, xz = βzx, yx = γxy.
#[derive(Clone, Debug)]
pub struct QParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl QParams {
    pub fn new(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Self {
        QParams {
            alpha: alpha.clone(),
            beta: beta.clone(),
            gamma: gamma.clone(),
        }
    }

    /// Factor picked up by rewriting the descent (hi, lo) as (lo, hi).
    fn swap_factor(&self, hi: usize, lo: usize) -> Scalar {
        match (hi, lo) {
            (1, 0) => self.gamma.clone(),
            (2, 1) => self.alpha.clone(),
            (2, 0) => self.beta.inv().expect("β nonzero"),
            _ => unreachable!("not a descent"),
        }
    }

    pub fn algebra(&self, ring: &ParamRing) -> Result<QuadraticAlgebra> {
        let kind = FamilyKind::OQ {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
        };
        Ok(make_family(&kind, ring)?.algebra)
    }
}

/// Sorts a word with adjacent swaps, always rewriting the leftmost descent.
pub fn pbw_normal_form(w: &Word, q: &QParams) -> PbwTerm {
    pbw_normal_form_with(w, q, |_| 0)
}

/// Sorts a word with adjacent swaps; `choose` picks which of the current descents
/// (given by position) to rewrite next.
pub fn pbw_normal_form_with(w: &Word, q: &QParams, mut choose: impl FnMut(&[usize]) -> usize) -> PbwTerm {
    let mut letters: Vec<usize> = w.letters().collect();
    assert!(letters.iter().all(|&l| l < 3), "three generators");
    let mut coeff = Scalar::one();
    loop {
        let descents: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&k| letters[k] > letters[k + 1])
            .collect();
        if descents.is_empty() {
            break;
        }
        let k = descents[choose(&descents) % descents.len()];
        coeff = &coeff * &q.swap_factor(letters[k], letters[k + 1]);
        letters.swap(k, k + 1);
    }
    let mut exps = [0u32; 3];
    for l in letters {
        exps[l] += 1;
    }
    PbwTerm { exps, coeff }
}

/// c with g·m = c·m·g for g = xyz, from rewriting both products.
pub fn g_commutation(m: [u32; 3], q: &QParams) -> Scalar {
    let g = Word::new(&[0, 1, 2]);
    let mw = monomial_word(m);
    let left = pbw_normal_form(&g.concat(&mw), q);
    let right = pbw_normal_form(&mw.concat(&g), q);
    left.coeff.checked_div(&right.coeff).expect("nonzero")
}

/// The printed closed form α^{i−j} β^{i−k} γ^{j−k}.
pub fn g_commutation_formula(m: [u32; 3], q: &QParams) -> Scalar {
    let (i, j, k) = (m[0] as i32, m[1] as i32, m[2] as i32);
    let p = |s: &Scalar, e: i32| s.pow(e).expect("nonzero parameter");
    &(&p(&q.alpha, i - j) * &p(&q.beta, i - k)) * &p(&q.gamma, j - k)
}

/// The nine cubic generators of Λ₀ other than xyz·g⁻¹, as exponent vectors.
pub const LAMBDA0_GENERATORS: [[u32; 3]; 9] = [
    [3, 0, 0],
    [0, 3, 0],
    [0, 0, 3],
    [2, 1, 0],
    [2, 0, 1],
    [0, 2, 1],
    [1, 2, 0],
    [1, 0, 2],
    [0, 1, 2],
];

pub fn monomial_name(m: [u32; 3]) -> String {
    let mut s = String::new();
    for (l, name) in ["x", "y", "z"].iter().enumerate() {
        match m[l] {
            0 => {}
            1 => s.push_str(name),
            e => s.push_str(&format!("{name}^{e}")),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// c(u, v) with u·v = c·v·u for u = m₁g⁻¹, v = m₂g⁻¹. Using g⁻¹m = c(g,m)⁻¹·m·g⁻¹:
/// u·v = c(g,m₂)⁻¹·m₁m₂·g⁻², v·u = c(g,m₁)⁻¹·m₂m₁·g⁻².
pub fn lambda0_pair(m1: [u32; 3], m2: [u32; 3], q: &QParams) -> Scalar {
    let a = pbw_normal_form(&monomial_word(m1).concat(&monomial_word(m2)), q);
    let b = pbw_normal_form(&monomial_word(m2).concat(&monomial_word(m1)), q);
    let num = &a.coeff * &g_commutation(m1, q);
    let den = &b.coeff * &g_commutation(m2, q);
    num.checked_div(&den).expect("nonzero")
}

/// The printed closed form α^{−|i−1 j−1; l−1 m−1|} β^{−|i−1 k−1; l−1 n−1|}
/// γ^{−|j−1 k−1; m−1 n−1|}.
pub fn lambda0_pair_formula(m1: [u32; 3], m2: [u32; 3], q: &QParams) -> Scalar {
    let u: Vec<i32> = m1.iter().map(|&e| e as i32 - 1).collect();
    let v: Vec<i32> = m2.iter().map(|&e| e as i32 - 1).collect();
    let det = |a: usize, b: usize| u[a] * v[b] - u[b] * v[a];
    let p = |s: &Scalar, e: i32| s.pow(e).expect("nonzero parameter");
    &(&p(&q.alpha, -det(0, 1)) * &p(&q.beta, -det(0, 2))) * &p(&q.gamma, -det(1, 2))
}

#[derive(Clone, Debug)]
pub struct Lambda0Entry {
    pub u: [u32; 3],
    pub v: [u32; 3],
    pub oracle: Scalar,
    pub formula: Scalar,
    /// c(u,v)·c(v,u) = 1.
    pub reciprocal: bool,
}

impl Lambda0Entry {
    pub fn agrees(&self) -> bool {
        self.oracle == self.formula
    }
}

#[derive(Clone, Debug)]
pub struct GCommutationEntry {
    pub m: [u32; 3],
    pub oracle: Scalar,
    pub formula: Scalar,
}

impl GCommutationEntry {
    pub fn agrees(&self) -> bool {
        self.oracle == self.formula
    }
}

#[derive(Clone, Debug)]
pub struct Lambda0Report {
    /// All 36 unordered pairs of distinct generators.
    pub pairs: Vec<Lambda0Entry>,
    /// g against x, y, z and the nine generators.
    pub g_commutation: Vec<GCommutationEntry>,
    /// xyz·g⁻¹ against each generator; all should be 1.
    pub central: Vec<Scalar>,
}

impl Lambda0Report {
    pub fn mismatches(&self) -> usize {
        self.pairs.iter().filter(|e| !e.agrees()).count() + self.g_commutation.iter().filter(|e| !e.agrees()).count()
    }
}

pub fn lambda0_relations(q: &QParams) -> Lambda0Report {
    let gens = LAMBDA0_GENERATORS;
    let entry = |u: [u32; 3], v: [u32; 3]| {
        let oracle = lambda0_pair(u, v, q);
        let back = lambda0_pair(v, u, q);
        Lambda0Entry {
            u,
            v,
            formula: lambda0_pair_formula(u, v, q),
            reciprocal: (&oracle * &back).is_one(),
            oracle,
        }
    };
    // one thread per row; rows are joined in order so the table is deterministic
    let pairs: Vec<Lambda0Entry> = std::thread::scope(|sc| {
        let rows: Vec<_> = (0..gens.len())
            .map(|i| sc.spawn(move || (i + 1..gens.len()).map(|j| entry(gens[i], gens[j])).collect::<Vec<_>>()))
            .collect();
        rows.into_iter()
            .flat_map(|h| h.join().expect("Λ₀ row panicked"))
            .collect()
    });
    let singles = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let g_commutation = singles
        .iter()
        .chain(gens.iter())
        .map(|&m| GCommutationEntry {
            m,
            oracle: g_commutation(m, q),
            formula: g_commutation_formula(m, q),
        })
        .collect();
    let central = gens.iter().map(|&m| lambda0_pair([1, 1, 1], m, q)).collect();
    Lambda0Report {
        pairs,
        g_commutation,
        central,
    }
}

/// g·A_k = A_k·g inside A_{k+3} for every k with k + 3 ≤ d.
pub fn normality_check(a: &QuadraticAlgebra, g: &NcPoly, d: usize) -> Result<bool> {
    let Some(gd) = g.degree() else {
        return Err(Error::Invalid("g must be homogeneous and nonzero".into()));
    };
    if d <= gd {
        return Err(Error::Invalid(format!(
            "degree bound {d} leaves no room above deg g = {gd}"
        )));
    }
    let n = a.ngens();
    let mut tower = IdealTower::new(a);
    for k in 1..=(d - gd) {
        let total = k + gd;
        let ncols = n.pow(total as u32);
        let mut left = Echelon::new(ncols);
        let mut right = Echelon::new(ncols);
        for idx in 0..n.pow(k as u32) {
            let w = NcPoly::term(a.ring(), n, Word::from_index(idx, k, n), Scalar::one());
            left.insert(tower.reduce(&g.mul(&w)?)?.to_sparse(total)?);
            right.insert(tower.reduce(&w.mul(g)?)?.to_sparse(total)?);
        }
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normality of g = xyz in O_Q(P²) up to degree d ≤ 5.
pub fn g_normality_check(q: &QParams, ring: &ParamRing, d: usize) -> Result<bool> {
    if d > 5 {
        return Err(Error::TooLarge("normality is checked up to degree 5".into()));
    }
    let a = q.algebra(ring)?;
    let g = NcPoly::term(ring, 3, Word::new(&[0, 1, 2]), Scalar::one());
    normality_check(&a, &g, d)
}

impl fmt::Display for PbwTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})*{}", self.coeff, monomial_name(self.exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> (ParamRing, QParams) {
        let ring = ParamRing::new(&["alpha", "beta", "gamma"], false).unwrap();
        let p = |s| Scalar::named(&ring, s).unwrap();
        let q = QParams::new(&p("alpha"), &p("beta"), &p("gamma"));
        (ring, q)
    }

    #[test]
    fn family_names_round_trip() {
        for text in [
            "Commutative(3)",
            "Oq(n=2, q)",
            "OQ(alpha, beta, gamma)",
            "Skl3(a, b, c)",
            "OQ(1/q, q, 1/q)",
        ] {
            let (kind, ring) = FamilyKind::parse_with_inferred_ring(text).unwrap();
            assert_eq!(kind.to_string_in(&ring), text);
        }
        let (kind, _) = FamilyKind::parse_with_inferred_ring("Oq(2,q)").unwrap();
        assert!(matches!(kind, FamilyKind::Oq { n: 2, .. }));
        assert!(FamilyKind::parse_with_inferred_ring("Weyl(2)").is_err());
        assert!(FamilyKind::parse_with_inferred_ring("OQ(a, b)").is_err());
    }

    #[test]
    fn single_swaps_follow_the_relations() {
        let (_, q) = q3();
        assert_eq!(pbw_normal_form(&Word::new(&[1, 0]), &q).coeff, q.gamma);
        assert_eq!(pbw_normal_form(&Word::new(&[2, 1]), &q).coeff, q.alpha);
        assert_eq!(pbw_normal_form(&Word::new(&[2, 0]), &q).coeff, q.beta.inv().unwrap());
        let t = pbw_normal_form(&Word::new(&[0, 1, 2]), &q);
        assert_eq!((t.exps, t.coeff), ([1, 1, 1], Scalar::one()));
    }

    #[test]
    fn degenerate_sklyanin_warns() {
        let ring = ParamRing::rationals();
        let kind = FamilyKind::Skl3 {
            a: Scalar::from(1),
            b: Scalar::from(1),
            c: Scalar::from(1),
        };
        assert!(!make_family(&kind, &ring).unwrap().warnings.is_empty());
        let (kind, ring) = FamilyKind::parse_with_inferred_ring("Skl3(a, b, c)").unwrap();
        assert!(make_family(&kind, &ring).unwrap().warnings.is_empty());
    }

    #[test]
    fn heisenberg_needs_omega() {
        assert!(heisenberg_generators(&ParamRing::rationals()).is_err());
    }
}
