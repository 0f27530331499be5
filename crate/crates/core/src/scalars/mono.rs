//! Commutative monomials in the parameters of a [`ParamRing`](super::ParamRing).
//!
//! Exponent vectors are stored with trailing zeros trimmed, so a monomial is
//! meaningful in any ring whose parameter list extends the one it was built in.

use std::cmp::Ordering;

use smallvec::SmallVec;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    exps: SmallVec<[u16; 8]>,
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, e: u16) -> Self {
        let mut exps = SmallVec::from_elem(0u16, index + 1);
        exps[index] = e;
        let mut m = Mono { exps };
        m.trim();
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Mono {
            exps: SmallVec::from_slice(exps),
        };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    /// Exponent of parameter `i` (zero past the stored length).
    pub fn exp(&self, i: usize) -> u16 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn nvars_used(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = SmallVec::with_capacity(n);
        for i in 0..n {
            exps.push(self.exp(i) + other.exp(i));
        }
        Mono { exps }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if other.exps.len() > self.exps.len() {
            // other may still divide if its extra tail is zero, but trimming rules that out
            return None;
        }
        let mut exps = self.exps.clone();
        for (i, &e) in other.exps.iter().enumerate() {
            if exps[i] < e {
                return None;
            }
            exps[i] -= e;
        }
        let mut m = Mono { exps };
        m.trim();
        Some(m)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.len() <= other.exps.len() && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let n = self.exps.len().min(other.exps.len());
        let mut m = Mono {
            exps: (0..n).map(|i| self.exps[i].min(other.exps[i])).collect(),
        };
        m.trim();
        m
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let n = self.exps.len().max(other.exps.len());
        Mono {
            exps: (0..n).map(|i| self.exp(i).max(other.exp(i))).collect(),
        }
    }

    /// Replace the exponent of parameter `i`.
    pub fn with_exp(&self, i: usize, e: u16) -> Mono {
        let mut exps = self.exps.clone();
        if exps.len() <= i {
            exps.resize(i + 1, 0);
        }
        exps[i] = e;
        let mut m = Mono { exps };
        m.trim();
        m
    }

    /// Graded lexicographic comparison: total degree first, then the first
    /// parameter with differing exponent decides (larger exponent is larger).
    pub fn grlex_cmp(&self, other: &Mono) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
