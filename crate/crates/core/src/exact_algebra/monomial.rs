use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent storage: one byte per variable of the ambient ring.
pub type Exponents = SmallVec<[u8; 16]>;

/// A power product of the ambient ring's variables.
///
/// Exponents are dense over the ring's variables; a missing variable is a
/// zero exponent. The total degree is cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = u8::try_from(power).expect("exponent overflow");
        m.deg = power;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let exps: Exponents = exps
            .iter()
            .map(|&e| u8::try_from(e).expect("exponent overflow"))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    #[inline]
    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Variables with positive exponent, as `(index, exponent)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e as u32))
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.min(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` (mod 64) is set when variable `i` occurs. A necessary
    /// condition for `a | b` is `sev(a) & !sev(b) == 0`.
    #[inline]
    pub fn sev(&self) -> u64 {
        let mut s = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                s |= 1 << (i % 64);
            }
        }
        s
    }
}

/// Monomial orders. Variable priority is the ring's variable order: index 0
/// is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TermOrder {
    Lex,
    GrevLex,
    /// Weighted degree first, graded reverse lexicographic tie-break.
    WeightedGrevLex { weights: Vec<u32> },
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::GrevLex => grevlex(a, b),
            TermOrder::WeightedGrevLex { weights } => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| grevlex(a, b)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::GrevLex => "grevlex",
            TermOrder::WeightedGrevLex { .. } => "weighted-grevlex",
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {
            for (x, y) in a.exps.iter().rev().zip(b.exps.iter().rev()) {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}
