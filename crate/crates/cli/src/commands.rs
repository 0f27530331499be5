use serde_json::{json, Value};

use nctwist::autext::{extend_to_pgl, mori_check, reconstruct_relations, EAutomorphism, MoriVerdict};
use nctwist::families::{
    g_normality_check, heisenberg_generators, inflection_points, lambda0_relations, make_family, monomial_name,
    oq_twist_equivalent, orbits, projective_group_order, transform_form, FamilyKind, QParams,
};
use nctwist::freealg::{default_generator_names, hilbert_series, QuadraticAlgebra};
use nctwist::pointscheme::{coordinate_line_components, point_scheme_equation, sigma_at, ProjPoint};
use nctwist::scalars::{identifiers, parse_scalar};
use nctwist::twist::{solve_second_map, twist_relations, twisting_system_check, LinearEndo, TwistingSystem};
use nctwist::{Error, ParamRing, Scalar};

use crate::report::{matrix_inline, matrix_json, Report};
use crate::spec::{build_spec, family_spec, parse_spec, Built, SpecFile};
use crate::{Cli, CliError, Command};

type Res<T> = Result<T, CliError>;

pub fn dispatch(cli: &Cli) -> Res<Report> {
    let mut r = Report::new(&cli.command.name());
    // nothing here is randomized; the seed is recorded for reproducibility
    r.input("seed", cli.seed);
    match cli.command {
        Command::Hilbert => hilbert(cli, &mut r)?,
        Command::PointScheme => point_scheme(cli, &mut r)?,
        Command::SigmaAt => sigma_at_cmd(cli, &mut r)?,
        Command::Twist => twist(cli, &mut r)?,
        Command::TwistCheck => twist_check(cli, &mut r)?,
        Command::SolveStep => solve_step(cli, &mut r)?,
        Command::Reconstruct => reconstruct(cli, &mut r)?,
        Command::Extends => extends(cli, &mut r)?,
        Command::Mori => mori(cli, &mut r)?,
        Command::OqEquiv => oq_equiv(cli, &mut r)?,
        Command::Localize => localize(cli, &mut r)?,
        Command::SklyaninSymmetries => sklyanin(cli, &mut r)?,
    }
    Ok(r)
}

fn read(path: &std::path::Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn extra_params(cli: &Cli) -> Vec<String> {
    cli.params
        .as_deref()
        .map(|p| {
            p.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        })
        .unwrap_or_default()
}

/// Adds the names not already present.
fn widen(ring: &ParamRing, names: &[String], omega: bool) -> Res<ParamRing> {
    let fresh: Vec<&String> = names.iter().filter(|n| ring.index_of(n).is_none()).collect();
    let mut out = ring.extend(&fresh)?;
    if omega {
        out = out.with_omega();
    }
    Ok(out)
}

/// The spec given by --spec or --family, with the ring widened by --params.
fn load(cli: &Cli, r: &mut Report) -> Res<Built> {
    let spec: SpecFile = match (&cli.spec, &cli.family) {
        (Some(_), Some(_)) => return Err(CliError::Input("give either --spec or --family, not both".into())),
        (Some(p), None) => {
            r.input("spec", p.display().to_string());
            parse_spec(&read(p)?)?
        }
        (None, Some(f)) => {
            r.input("family", f.clone());
            family_spec(f)
        }
        (None, None) => return Err(CliError::Input("an algebra is needed: --family or --spec".into())),
    };
    let mut built = build_spec(&spec)?;
    let extra = extra_params(cli);
    if !extra.is_empty() {
        r.input("params", extra.join(", "));
        built = rebuild(&spec, &widen(&built.ring, &extra, false)?)?;
    }
    Ok(built)
}

/// The same spec over a larger ring.
fn rebuild(spec: &SpecFile, ring: &ParamRing) -> Res<Built> {
    let mut s = spec.clone();
    s.params = ring.names().to_vec();
    s.omega = ring.has_omega();
    build_spec(&s)
}

fn algebra(b: &Built) -> Res<&QuadraticAlgebra> {
    b.algebra
        .as_ref()
        .ok_or_else(|| CliError::Input("the spec declares no generators".into()))
}

fn sigma_of(b: &Built) -> Res<EAutomorphism> {
    b.family
        .as_ref()
        .and_then(|f| f.sigma.clone())
        .ok_or_else(|| CliError::Input("σ on a line model is known for the Oq (n ≥ 2) and OQ families only".into()))
}

fn rels_json(a: &QuadraticAlgebra) -> Value {
    a.relations()
        .iter()
        .map(|p| Value::from(p.to_string_with(a.gen_names())))
        .collect()
}

fn push_relations(r: &mut Report, a: &QuadraticAlgebra) {
    for p in a.relations() {
        r.line(format!("  {}", p.to_string_with(a.gen_names())));
    }
}

fn hilbert(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let a = algebra(&b)?;
    let d = cli.max_degree.unwrap_or(5);
    r.input("max_degree", d);
    let series = hilbert_series(a, d)?;
    let n = a.ngens();
    let poly: Vec<usize> = (0..=d).map(|k| binomial(k + n - 1, n - 1)).collect();
    r.result("dimensions", series.clone());
    r.result("matches_polynomial_ring", series == poly);
    r.line("d  dim A_d");
    for (k, v) in series.iter().enumerate() {
        r.line(format!("{k}  {v}"));
    }
    r.line(format!(
        "same as a polynomial ring in {n} variables: {}",
        if series == poly { "yes" } else { "no" }
    ));
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn point_scheme(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let a = algebra(&b)?;
    let eq = point_scheme_equation(a)?;
    r.result("equation", eq.to_string());
    r.line(format!("det: {eq}"));
    if eq.is_zero() {
        r.result("all_of_projective_space", true);
        r.line(format!("E = P^{}", a.ngens() - 1));
        return Ok(());
    }
    r.result("all_of_projective_space", false);
    let (lines, cofactor) = coordinate_line_components(&eq);
    let names: Vec<String> = lines.iter().map(|&k| a.gen_names()[k].clone()).collect();
    let cof = cofactor.to_string_in(&eq.coords.ring);
    r.result("coordinate_factors", names.clone());
    r.result("cofactor", cof.clone());
    if !names.is_empty() {
        r.line(format!("coordinate hyperplanes: {}", names.join(", ")));
    }
    r.line(format!("cofactor: {cof}"));
    if let Some(model) = b.family.as_ref().and_then(|f| f.model.as_ref()) {
        r.result("model", model.to_string());
        r.line(format!("E: {model}"));
    }
    Ok(())
}

fn sigma_at_cmd(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let a = algebra(&b)?;
    let text = cli
        .point
        .as_deref()
        .ok_or_else(|| CliError::Input("--point is required".into()))?;
    r.input("point", text);
    let p = ProjPoint::parse(text, &b.ring)?;
    if p.dim() != a.ngens() {
        return Err(CliError::Input(format!(
            "point has {} coordinates, expected {}",
            p.dim(),
            a.ngens()
        )));
    }
    match sigma_at(a, &p) {
        Ok(q) => {
            let s = q.to_string_in(&b.ring);
            r.result("on_point_scheme", true);
            r.result("sigma", s.clone());
            r.line(format!("σ{} = {s}", p.to_string_in(&b.ring)));
        }
        Err(e @ (Error::NotOnPointScheme | Error::SigmaNotUnique)) => {
            r.negative = true;
            r.result("on_point_scheme", matches!(e, Error::SigmaNotUnique));
            r.result("sigma", Value::Null);
            r.result("reason", e.to_string());
            r.line(e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn load_matrix(cli: &Cli, ring: &ParamRing, r: &mut Report) -> Res<LinearEndo> {
    let path = cli
        .matrix
        .as_ref()
        .ok_or_else(|| CliError::Input("--matrix is required".into()))?;
    r.input("matrix", path.display().to_string());
    Ok(LinearEndo::parse(&read(path)?, ring)?)
}

/// --family2 over the ring of the first algebra, widened by its identifiers.
fn second_family(cli: &Cli, ring: &ParamRing) -> Res<Option<(ParamRing, QuadraticAlgebra)>> {
    let Some(f2) = &cli.family2 else {
        return Ok(None);
    };
    let (ids, omega) = FamilyKind::identifiers(f2)?;
    let ring = widen(ring, &ids, omega)?;
    let kind = FamilyKind::parse(f2, &ring)?;
    Ok(Some((ring.clone(), make_family(&kind, &ring)?.algebra)))
}

fn compare_with_family2(cli: &Cli, r: &mut Report, ring: &ParamRing, got: &QuadraticAlgebra) -> Res<()> {
    if let Some((ring2, other)) = second_family(cli, ring)? {
        r.input("family2", cli.family2.clone().expect("present"));
        let same = got.over(&ring2)?.same_relation_space(&other);
        r.result("matches_family2", same);
        r.line(format!(
            "same relation space as {}: {}",
            cli.family2.as_deref().unwrap_or(""),
            yes(same)
        ));
        if !same {
            r.negative = true;
        }
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn twist(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let a = algebra(&b)?;
    let t1 = load_matrix(cli, &b.ring, r)?;
    let tw = twist_relations(a, &t1)?;
    let auto = a.is_graded_automorphism(t1.matrix())?;
    r.result("relations", rels_json(&tw));
    r.result("graded_automorphism", auto);
    r.line("twisted relations:");
    push_relations(r, &tw);
    r.line(format!("t1 is a graded automorphism: {}", yes(auto)));
    compare_with_family2(cli, r, &b.ring, &tw)
}

fn twist_check(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let a = algebra(&b)?;
    let path = cli
        .system
        .as_ref()
        .ok_or_else(|| CliError::Input("--system is required".into()))?;
    r.input("system", path.display().to_string());
    let sys = TwistingSystem::parse(&read(path)?, &b.ring)?;
    let ok = twisting_system_check(a, &sys)?;
    let m1 = sys.maps()[0].matrix();
    let mut algebraic = true;
    for (k, m) in sys.maps().iter().enumerate() {
        algebraic &= m.matrix().proportional(&m1.pow(k as u32 + 1)?);
    }
    r.result("valid", ok);
    r.result("length", sys.len());
    r.result("algebraic", algebraic);
    r.line(format!(
        "twisting system of length {}: {}",
        sys.len(),
        if ok { "valid" } else { "invalid" }
    ));
    r.line(format!("M_k proportional to M_1^k throughout: {}", yes(algebraic)));
    r.negative = !ok;
    Ok(())
}

fn solve_step(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let a = algebra(&b)?;
    let m1 = load_matrix(cli, &b.ring, r)?;
    let basis = solve_second_map(a, &m1)?;
    let sq = m1.matrix().pow(2)?;
    let only_square = basis.len() == 1 && basis[0].proportional(&sq);
    r.result("dimension", basis.len());
    r.result(
        "basis",
        basis.iter().map(|m| matrix_json(m, &b.ring)).collect::<Vec<_>>(),
    );
    r.result("span_is_m1_squared", only_square);
    r.line(format!("solution space for M2 has dimension {}", basis.len()));
    for m in &basis {
        r.line(format!("  {}", matrix_inline(m, &b.ring)));
    }
    r.line(format!("span is exactly M1^2: {}", yes(only_square)));
    r.negative = basis.is_empty();
    Ok(())
}

/// --emap, --rho0 style map: a file, or "perm:i,j,k" for a coordinate permutation.
fn load_emap(text_or_path: &str, model_from: &EAutomorphism, ring: &ParamRing) -> Res<EAutomorphism> {
    if let Some(p) = text_or_path.strip_prefix("perm:") {
        let perm = p
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Input(format!("bad permutation `{p}`")))?;
        return Ok(EAutomorphism::coordinate_permutation(model_from.model(), &perm)?);
    }
    let e = EAutomorphism::parse(&read(std::path::Path::new(text_or_path))?, ring)?;
    if e.model() != model_from.model() {
        return Err(CliError::Input("the map lives on a different line model".into()));
    }
    Ok(e)
}

fn load_emap_file(cli: &Cli, ring: &ParamRing, r: &mut Report) -> Res<Option<EAutomorphism>> {
    let Some(path) = &cli.emap else {
        return Ok(None);
    };
    r.input("emap", path.display().to_string());
    Ok(Some(EAutomorphism::parse(&read(path)?, ring)?))
}

fn reconstruct(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let emap = load_emap_file(cli, &b.ring, r)?;
    let sigma = sigma_of(&b).ok();
    let s = match (&emap, &sigma) {
        (Some(e), Some(s)) => e.compose(s)?,
        (Some(e), None) => e.clone(),
        (None, Some(s)) => s.clone(),
        (None, None) => {
            return Err(CliError::Input(
                "nothing to reconstruct: give --emap or a family with σ".into(),
            ))
        }
    };
    let names = match &b.algebra {
        Some(a) if a.ngens() == s.model().n() + 1 => a.gen_names().to_vec(),
        _ => default_generator_names(s.model().n() + 1),
    };
    let rec = reconstruct_relations(&s, &b.ring, &names)?;
    r.result("relations", rels_json(&rec));
    r.line(format!("relations of the algebra of ({}, map):", s.model()));
    push_relations(r, &rec);
    if let (Some(e), Some(a)) = (&emap, &b.algebra) {
        let v = extend_to_pgl(e)?;
        if let Some(w) = &v.witness {
            let t1 = LinearEndo::new(&b.ring, w.transpose())?;
            let tw = twist_relations(a, &t1)?;
            let same = tw.same_relation_space(&rec);
            r.cert("twist_by_witness_transpose_agrees", same);
            r.line(format!(
                "agrees with the twist by the transposed witness: {}",
                yes(same)
            ));
        }
    }
    compare_with_family2(cli, r, &b.ring, &rec)
}

fn extends(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let e = match load_emap_file(cli, &b.ring, r)? {
        Some(e) => e,
        None => sigma_of(&b)?,
    };
    let v = extend_to_pgl(&e)?;
    r.result("extends", v.extends);
    r.result("solution_dim", v.solution_dim);
    r.result(
        "conditions",
        v.conditions
            .iter()
            .map(|c| Value::from(c.to_string_in(&b.ring)))
            .collect::<Vec<_>>(),
    );
    let obs: Vec<Value> = v
        .obstructions()
        .iter()
        .map(|c| c.obstruction_string(&b.ring).into())
        .collect();
    r.result("obstructions", obs.clone());
    r.line(format!("extends to projective space: {}", yes(v.extends)));
    if let Some(w) = &v.witness {
        r.cert("witness", matrix_json(w, &b.ring));
        r.line(format!("witness: {}", matrix_inline(w, &b.ring)));
    }
    for c in &v.conditions {
        r.line(format!(
            "  {}{}",
            c.to_string_in(&b.ring),
            if c.holds() { "" } else { "  (fails)" }
        ));
    }
    for o in &obs {
        r.line(format!("obstruction: {}", o.as_str().unwrap_or_default()));
    }
    r.negative = !v.extends;
    Ok(())
}

fn mori_json(v: &MoriVerdict, ring: &ParamRing) -> Value {
    match v {
        MoriVerdict::EquivalentWithPeriod { period, increment } => json!({
            "verdict": "equivalent",
            "period": period,
            "increment": increment.to_text(ring),
        }),
        MoriVerdict::FailsAt { m, obstructions } => json!({
            "verdict": "fails",
            "m": m,
            "obstructions": obstructions.iter().map(|c| c.obstruction_string(ring)).collect::<Vec<_>>(),
        }),
        MoriVerdict::Inconclusive { bound } => json!({ "verdict": "inconclusive", "bound": bound }),
    }
}

fn mori_line(v: &MoriVerdict, ring: &ParamRing) -> String {
    match v {
        MoriVerdict::EquivalentWithPeriod { period, .. } => {
            format!("every ρ_m extends (increments periodic with period {period}): twist equivalent")
        }
        MoriVerdict::FailsAt { m, obstructions } => {
            let obs: Vec<String> = obstructions.iter().map(|c| c.obstruction_string(ring)).collect();
            format!("ρ_{m} does not extend; obstruction {}", obs.join(", "))
        }
        MoriVerdict::Inconclusive { bound } => format!("no failure and no period up to m = {bound}"),
    }
}

fn mori(cli: &Cli, r: &mut Report) -> Res<()> {
    let b = load(cli, r)?;
    let sigma = sigma_of(&b)?;
    let f2 = cli
        .family2
        .as_ref()
        .ok_or_else(|| CliError::Input("--family2 is required".into()))?;
    r.input("family2", f2.clone());
    let (ids, omega) = FamilyKind::identifiers(f2)?;
    let ring = widen(&b.ring, &ids, omega)?;
    let kind2 = FamilyKind::parse(f2, &ring)?;
    let sigma_p = make_family(&kind2, &ring)?
        .sigma
        .ok_or_else(|| CliError::Input("--family2 has no σ on a line model".into()))?;
    if sigma_p.model() != sigma.model() {
        return Err(CliError::Input("the two point schemes differ".into()));
    }
    let rho_text = cli
        .rho0
        .as_deref()
        .ok_or_else(|| CliError::Input("--rho0 is required".into()))?;
    r.input("rho0", rho_text);
    r.input("bound", cli.bound);
    let rho0 = load_emap(rho_text, &sigma, &ring)?;
    let v = mori_check(&sigma, &sigma_p, &rho0, cli.bound)?;
    r.result("mori", mori_json(&v, &ring));
    r.result("equivalent", v.is_equivalent());
    r.line(mori_line(&v, &ring));
    r.negative = !v.is_equivalent();
    Ok(())
}

fn parse_triple(text: &str, ring: &ParamRing) -> Res<[Scalar; 3]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!(
            "expected three comma separated scalars, got `{text}`"
        )));
    }
    Ok([
        parse_scalar(parts[0].trim(), ring)?,
        parse_scalar(parts[1].trim(), ring)?,
        parse_scalar(parts[2].trim(), ring)?,
    ])
}

fn ring_of(texts: &[&str]) -> Res<ParamRing> {
    let mut names: Vec<String> = Vec::new();
    let mut omega = false;
    for t in texts.iter().flat_map(|t| t.split(',')) {
        for id in identifiers(t)? {
            if id == "omega" {
                omega = true;
            } else if !names.contains(&id) {
                names.push(id);
            }
        }
    }
    Ok(ParamRing::new(&names, omega)?)
}

fn oq_equiv(cli: &Cli, r: &mut Report) -> Res<()> {
    let (Some(q1), Some(q2)) = (&cli.q, &cli.q2) else {
        return Err(CliError::Input("--Q and --Q2 are required".into()));
    };
    r.input("Q", q1.clone());
    r.input("Q2", q2.clone());
    r.input("bound", cli.bound);
    let ring = ring_of(&[q1, q2])?;
    let a = parse_triple(q1, &ring)?;
    let b = parse_triple(q2, &ring)?;
    let v = oq_twist_equivalent([&a[0], &a[1], &a[2]], [&b[0], &b[1], &b[2]], cli.bound)?;
    r.result("equivalent", v.closed_form);
    r.result("exponent", v.exponent);
    r.result("agree", v.agree());
    r.cert("rho0", v.rho0.clone());
    r.cert(
        "mori",
        v.mori
            .iter()
            .map(|(p, m)| {
                let mut o = mori_json(m, &ring);
                o["rho0"] = json!(p);
                o
            })
            .collect::<Vec<_>>(),
    );
    let verdict = if v.closed_form {
        "twist equivalent"
    } else {
        "not twist equivalent"
    };
    match v.exponent {
        Some(e) => r.line(format!("α′β′γ′ = (αβγ)^{e}: {verdict}")),
        None => r.line(format!("α′β′γ′ ≠ (αβγ)^±1: {verdict}")),
    }
    for (p, m) in &v.mori {
        r.line(format!("  ρ₀ = {p:?}: {}", mori_line(m, &ring)));
    }
    if let Some(p) = &v.rho0 {
        r.line(format!("certificate: ρ₀ = {p:?}"));
    }
    r.line(format!("closed form and Mori check agree: {}", yes(v.agree())));
    r.negative = !v.closed_form || !v.agree();
    Ok(())
}

fn localize(cli: &Cli, r: &mut Report) -> Res<()> {
    let qt = cli.q.clone().unwrap_or_else(|| "alpha,beta,gamma".into());
    r.input("Q", qt.clone());
    let ring = ring_of(&[&qt])?;
    let t = parse_triple(&qt, &ring)?;
    let q = QParams::new(&t[0], &t[1], &t[2]);
    let d = cli.max_degree.unwrap_or(5);
    r.input("max_degree", d);
    let rep = lambda0_relations(&q);
    let s = |x: &Scalar| x.to_string_in(&ring);
    let name = |m: [u32; 3]| format!("{}g^-1", monomial_name(m));
    r.line("g = xyz; g·m = c·m·g (oracle from rewriting, formula as printed):");
    let mut gtab = Vec::new();
    for e in &rep.g_commutation {
        let flag = if e.agrees() { "" } else { "  MISMATCH" };
        r.line(format!(
            "  {:<6} oracle {:<24} formula {}{flag}",
            monomial_name(e.m),
            s(&e.oracle),
            s(&e.formula)
        ));
        gtab.push(
            json!({"m": monomial_name(e.m), "oracle": s(&e.oracle), "formula": s(&e.formula), "agrees": e.agrees()}),
        );
    }
    r.line("u·v = c·v·u among the nine generators:");
    let mut ptab = Vec::new();
    for e in &rep.pairs {
        let flag = if e.agrees() { "" } else { "  MISMATCH" };
        r.line(format!(
            "  {:<10} {:<10} oracle {:<28} formula {}{flag}",
            name(e.u),
            name(e.v),
            s(&e.oracle),
            s(&e.formula)
        ));
        ptab.push(json!({
            "u": name(e.u), "v": name(e.v), "oracle": s(&e.oracle), "formula": s(&e.formula),
            "agrees": e.agrees(), "reciprocal": e.reciprocal,
        }));
    }
    let reciprocal = rep.pairs.iter().all(|e| e.reciprocal);
    let central = rep.central.iter().all(|c| c.is_one());
    let normal = g_normality_check(&q, &ring, d)?;
    r.result("g_commutation", gtab);
    r.result("pairs", ptab);
    r.result("reciprocal", reciprocal);
    r.result("xyz_g_inverse_central", central);
    r.result("g_normal", normal);
    r.result("mismatches", rep.mismatches());
    r.line(format!("c(u,v)·c(v,u) = 1 for all pairs: {}", yes(reciprocal)));
    r.line(format!("xyz·g⁻¹ commutes with every generator: {}", yes(central)));
    r.line(format!("g·A_k = A_k·g up to degree {d}: {}", yes(normal)));
    r.line(format!("oracle/formula mismatches: {}", rep.mismatches()));
    Ok(())
}

fn sklyanin(cli: &Cli, r: &mut Report) -> Res<()> {
    let text = cli.family.clone().unwrap_or_else(|| "Skl3(a,b,c)".into());
    r.input("family", text.clone());
    let (ids, _) = FamilyKind::identifiers(&text)?;
    let ring = ParamRing::new(&ids, true)?;
    let kind = FamilyKind::parse(&text, &ring)?;
    let FamilyKind::Skl3 { a, b, c } = &kind else {
        return Err(CliError::Input("sklyanin-symmetries needs a Skl3 family".into()));
    };
    let fam = make_family(&kind, &ring)?;
    for w in &fam.warnings {
        r.line(format!("warning: {w}"));
    }
    r.result("warnings", fam.warnings.clone());
    let (cr, cubic) = fam.cubic.clone().expect("Skl3 has a cubic");
    r.result("cubic", cubic.to_string_in(&cr.ring));
    r.line(format!("E: {} = 0", cubic.to_string_in(&cr.ring)));
    let gens = heisenberg_generators(&ring)?;
    let mut all_ok = true;
    for (label, g) in ["P", "D"].iter().zip(gens.iter()) {
        let keeps_cubic = transform_form(&cr, &cubic, g.matrix())? == cubic;
        let keeps_rels = fam.algebra.is_graded_automorphism(g.matrix())?;
        all_ok &= keeps_cubic && keeps_rels;
        r.result(&format!("{label}_preserves_cubic"), keeps_cubic);
        r.result(&format!("{label}_preserves_relations"), keeps_rels);
        r.cert(label, matrix_json(g.matrix(), &ring));
        r.line(format!(
            "{label} = {}: cubic invariant {}, relation space preserved {}",
            matrix_inline(g.matrix(), &ring),
            yes(keeps_cubic),
            yes(keeps_rels)
        ));
    }
    let mats: Vec<_> = gens.iter().map(|g| g.matrix().clone()).collect();
    let order = projective_group_order(&mats, 100)?;
    r.result("group_order", order);
    r.line(format!("⟨P, D⟩ in PGL3 has order {order}"));
    let flexes = inflection_points(&ring)?;
    let mut on_cubic = true;
    for p in &flexes {
        let mut vals: Vec<Option<Scalar>> = vec![None; cr.ring.nparams()];
        for (k, &i) in cr.coord_params.iter().enumerate() {
            vals[i] = Some(p.coords()[k].clone());
        }
        on_cubic &= cubic.substitute(&vals)?.is_zero();
    }
    let d_orbits = orbits(&flexes, &mats[1..])?;
    let all_orbits = orbits(&flexes, &mats)?;
    r.result(
        "inflection_points",
        flexes.iter().map(|p| p.to_string_in(&ring)).collect::<Vec<_>>(),
    );
    r.result("inflection_points_on_cubic", on_cubic);
    r.result("d_orbits", d_orbits.clone());
    r.result("orbits", all_orbits.clone());
    r.line(format!("nine inflection points, all on E: {}", yes(on_cubic)));
    for p in &flexes {
        r.line(format!("  {}", p.to_string_in(&ring)));
    }
    r.line(format!("orbits under D: {d_orbits:?}; under ⟨P, D⟩: {all_orbits:?}"));
    let target = make_family(
        &FamilyKind::Skl3 {
            a: b.clone(),
            b: c.clone(),
            c: a.clone(),
        },
        &ring,
    )?;
    let tw = twist_relations(&fam.algebra, &gens[0])?;
    let cyc = tw.same_relation_space(&target.algebra);
    r.result("twist_by_P_is_cyclic_shift", cyc);
    r.line(format!("twist by P has the relations of Skl3(b, c, a): {}", yes(cyc)));
    all_ok &= on_cubic && order == 9 && cyc;
    r.negative = !all_ok;
    Ok(())
}
