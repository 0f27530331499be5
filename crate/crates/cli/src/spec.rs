//! Algebra spec files.
//!
//! ```text
//! params: q
//! field: Q
//! generators: x y
//! relations:
//!   x*y - q*y*x
//! ```
//!
//! or a single `family: Oq(n=2, q)` line in place of generators and relations.

use std::fmt;

use nctwist::families::{make_family, FamilyKind, FamilySpec};
use nctwist::freealg::{NcPoly, QuadraticAlgebra};
use nctwist::scalars::identifiers;
use nctwist::ParamRing;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpecFile {
    pub params: Vec<String>,
    pub omega: bool,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub family: Option<String>,
    /// `quadratic: false` switches off the degree guard at parse time.
    pub quadratic: bool,
}

/// A spec turned into objects.
#[derive(Clone, Debug)]
pub struct Built {
    pub ring: ParamRing,
    pub algebra: Option<QuadraticAlgebra>,
    pub family: Option<FamilySpec>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn column_of(line: &str, needle: &str) -> usize {
    line.find(needle).map(|i| i + 1).unwrap_or(1)
}

pub fn parse_spec(text: &str) -> Result<SpecFile, CliError> {
    let mut spec = SpecFile {
        quadratic: true,
        ..SpecFile::default()
    };
    let mut seen: Vec<&str> = Vec::new();
    let mut in_relations = false;
    let mut rel_lines: Vec<(usize, &str)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let indented = body.starts_with(' ') || body.starts_with('\t');
        if indented {
            if !in_relations {
                return Err(syntax(ln, 1, "indented line outside `relations:`"));
            }
            rel_lines.push((ln, raw));
            continue;
        }
        in_relations = false;
        let Some((key, value)) = body.split_once(':') else {
            return Err(syntax(ln, 1, "expected `key: value`"));
        };
        let key = key.trim();
        let value = value.trim();
        if seen.contains(&key) {
            return Err(syntax(ln, 1, format!("`{key}` given twice")));
        }
        seen.push(key);
        match key {
            "params" => {
                for p in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    if !is_ident(p) || p == "omega" {
                        return Err(syntax(ln, column_of(raw, p), format!("bad parameter name `{p}`")));
                    }
                    if spec.params.iter().any(|x| x == p) {
                        return Err(syntax(ln, column_of(raw, p), format!("parameter `{p}` declared twice")));
                    }
                    spec.params.push(p.to_string());
                }
            }
            "field" => {
                spec.omega = match value {
                    "Q" => false,
                    "Q(omega)" => true,
                    _ => return Err(syntax(ln, column_of(raw, value), "field must be `Q` or `Q(omega)`")),
                }
            }
            "generators" => {
                for g in value.split_whitespace() {
                    if !is_ident(g) || g == "omega" {
                        return Err(syntax(ln, column_of(raw, g), format!("bad generator name `{g}`")));
                    }
                    if spec.generators.iter().any(|x| x == g) {
                        return Err(syntax(ln, column_of(raw, g), format!("generator `{g}` declared twice")));
                    }
                    spec.generators.push(g.to_string());
                }
            }
            "quadratic" => {
                spec.quadratic = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(syntax(ln, column_of(raw, value), "expected `true` or `false`")),
                }
            }
            "relations" => {
                in_relations = true;
                if !value.is_empty() {
                    return Err(syntax(
                        ln,
                        column_of(raw, value),
                        "relations go on indented lines below",
                    ));
                }
            }
            "family" => spec.family = Some(value.to_string()),
            other => return Err(syntax(ln, 1, format!("unknown key `{other}`"))),
        }
    }
    if spec.params.iter().any(|p| spec.generators.contains(p)) {
        return Err(CliError::Input("a name is both a parameter and a generator".into()));
    }
    for (ln, raw) in &rel_lines {
        let line = raw.split('#').next().unwrap_or("").trim();
        for id in identifiers(line).map_err(|e| syntax(*ln, 1, e.to_string()))? {
            let known = spec.generators.contains(&id) || spec.params.contains(&id) || (id == "omega" && spec.omega);
            if !known {
                return Err(syntax(
                    *ln,
                    column_of(raw, &id),
                    format!("undeclared identifier `{id}`"),
                ));
            }
        }
        spec.relations.push(line.to_string());
    }
    if let Some(f) = &spec.family {
        if !spec.generators.is_empty() || !spec.relations.is_empty() {
            return Err(CliError::Input("`family:` replaces generators and relations".into()));
        }
        let (ids, omega) = FamilyKind::identifiers(f)?;
        if !spec.params.is_empty() {
            if let Some(id) = ids.iter().find(|id| !spec.params.contains(id)) {
                return Err(CliError::Input(format!("undeclared identifier `{id}` in family")));
            }
        }
        if omega && !spec.omega && seen.contains(&"field") {
            return Err(CliError::Input("`omega` used but the field is Q".into()));
        }
    }
    if spec.quadratic {
        build_spec(&spec)?;
    }
    Ok(spec)
}

/// The parameter ring a spec declares, or infers from its family.
pub fn spec_ring(spec: &SpecFile) -> Result<ParamRing, CliError> {
    if let (Some(f), true) = (&spec.family, spec.params.is_empty()) {
        let (ids, omega) = FamilyKind::identifiers(f)?;
        return Ok(ParamRing::new(&ids, omega || spec.omega)?);
    }
    Ok(ParamRing::new(&spec.params, spec.omega)?)
}

pub fn build_spec(spec: &SpecFile) -> Result<Built, CliError> {
    let ring = spec_ring(spec)?;
    if let Some(f) = &spec.family {
        let kind = FamilyKind::parse(f, &ring)?;
        let fam = make_family(&kind, &ring)?;
        return Ok(Built {
            ring,
            algebra: Some(fam.algebra.clone()),
            family: Some(fam),
        });
    }
    if spec.generators.is_empty() {
        return Ok(Built {
            ring,
            algebra: None,
            family: None,
        });
    }
    let rels = spec
        .relations
        .iter()
        .map(|r| NcPoly::parse(r, &ring, &spec.generators))
        .collect::<Result<Vec<_>, _>>()?;
    let algebra = QuadraticAlgebra::new(&ring, spec.generators.clone(), rels, None)?;
    Ok(Built {
        ring,
        algebra: Some(algebra),
        family: None,
    })
}

/// A family given on the command line.
pub fn family_spec(text: &str) -> SpecFile {
    SpecFile {
        family: Some(text.trim().to_string()),
        quadratic: true,
        ..SpecFile::default()
    }
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.params.is_empty() {
            writeln!(f, "params: {}", self.params.join(", "))?;
        }
        if self.omega {
            writeln!(f, "field: Q(omega)")?;
        }
        if !self.quadratic {
            writeln!(f, "quadratic: false")?;
        }
        if let Some(fam) = &self.family {
            writeln!(f, "family: {fam}")?;
        }
        if !self.generators.is_empty() {
            writeln!(f, "generators: {}", self.generators.join(" "))?;
        }
        if !self.relations.is_empty() {
            writeln!(f, "relations:")?;
            for r in &self.relations {
                writeln!(f, "  {r}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let s = parse_spec("params: q\ngenerators: x y\nrelations:\n  x*y - q*y*x\n").unwrap();
        let b = build_spec(&s).unwrap();
        assert_eq!(b.algebra.unwrap().relations().len(), 1);
    }

    #[test]
    fn undeclared_identifier_has_position() {
        let err = parse_spec("generators: x y\nrelations:\n  x*y - q*y*x\n").unwrap_err();
        assert_eq!(
            err,
            CliError::Syntax {
                line: 3,
                col: 9,
                msg: "undeclared identifier `q`".into()
            }
        );
    }

    #[test]
    fn cubic_relation_is_refused() {
        let err = parse_spec("generators: x y z\nquadratic: true\nrelations:\n  x*y*z - z*y*x\n").unwrap_err();
        assert!(err.to_string().contains("degree 3 relation"), "{err}");
        assert!(parse_spec("generators: x y z\nquadratic: false\nrelations:\n  x*y*z - z*y*x\n").is_ok());
    }
}
