use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Named parameters p₁…p_k and the choice of Q or Q(ω) as coefficient field.
///
/// Cheap to clone. Two rings are compatible when one parameter list is a prefix of
/// the other and the ω flags agree; scalars built in the smaller ring are valid in
/// the larger one unchanged.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamRing {
    names: Arc<[String]>,
    has_omega: bool,
}

impl ParamRing {
    pub fn new<S: AsRef<str>>(names: &[S], has_omega: bool) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            let n = n.as_ref();
            if n.is_empty() {
                return Err(Error::Ring("empty parameter name".into()));
            }
            if n == "omega" {
                return Err(Error::Ring("`omega` is reserved".into()));
            }
            if !n.chars().next().unwrap().is_alphabetic()
                || !n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
            {
                return Err(Error::Ring(format!("invalid parameter name `{n}`")));
            }
            if !seen.insert(n.to_string()) {
                return Err(Error::Ring(format!("duplicate parameter `{n}`")));
            }
        }
        Ok(ParamRing {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            has_omega,
        })
    }

    /// The empty ring over Q.
    pub fn rationals() -> Self {
        ParamRing {
            names: Arc::from(Vec::<String>::new()),
            has_omega: false,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nparams(&self) -> usize {
        self.names.len()
    }

    pub fn has_omega(&self) -> bool {
        self.has_omega
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same parameters, with ω adjoined.
    pub fn with_omega(&self) -> ParamRing {
        ParamRing {
            names: self.names.clone(),
            has_omega: true,
        }
    }

    /// Appends fresh parameters. Names already present are an error.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<ParamRing> {
        let mut all: Vec<String> = self.names.to_vec();
        all.extend(extra.iter().map(|s| s.as_ref().to_string()));
        ParamRing::new(&all, self.has_omega)
    }

    /// Appends a parameter whose name does not clash, starting from `base`.
    /// Returns the new ring and the parameter's index.
    pub fn extend_fresh(&self, base: &str) -> (ParamRing, usize) {
        let mut name = base.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{base}{k}");
        }
        let ring = self.extend(&[name]).expect("fresh name is valid");
        let idx = ring.nparams() - 1;
        (ring, idx)
    }

    /// True when `other`'s scalars are valid here.
    pub fn contains(&self, other: &ParamRing) -> bool {
        other.names.len() <= self.names.len()
            && other.names.iter().zip(self.names.iter()).all(|(a, b)| a == b)
            && (self.has_omega || !other.has_omega)
    }

    /// Smallest ring containing both, if they are nested.
    pub fn join(&self, other: &ParamRing) -> Result<ParamRing> {
        let (big, small) = if self.names.len() >= other.names.len() {
            (self, other)
        } else {
            (other, self)
        };
        if !small.names.iter().zip(big.names.iter()).all(|(a, b)| a == b) {
            return Err(Error::RingMismatch(format!("{self} vs {other}")));
        }
        Ok(ParamRing {
            names: big.names.clone(),
            has_omega: self.has_omega || other.has_omega,
        })
    }
}

impl fmt::Display for ParamRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", if self.has_omega { "Q(omega)" } else { "Q" })?;
        write!(f, "{})", self.names.join(", "))
    }
}

impl fmt::Debug for ParamRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamRing[{self}]")
    }
}
