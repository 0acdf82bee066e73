use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::minor::{det, MinorSymbol};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{parse_poly, Field, FieldTag, Monomial, PolyRing, Polynomial, TermOrder};
use crate::groebner::{IdealBasis, Quotient};

/// Which quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingKind {
    /// `k[X]/I_t(X)` for a generic `m x n` matrix `X`.
    Determinantal { m: usize, n: usize, t: usize },
    /// `k[X,Y,Z]/(XY - Z^n)`.
    Hypersurface { n: u32 },
}

impl std::fmt::Display for RingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingKind::Determinantal { m, n, t } => write!(f, "det(m={m},n={n},t={t})"),
            RingKind::Hypersurface { n } => write!(f, "hypersurface(n={n})"),
        }
    }
}

/// A determinantal or hypersurface ring with its grading, term order and
/// verified Groebner basis.
#[derive(Clone, Debug)]
pub struct RingCtx<K: Field> {
    kind: RingKind,
    ring: Arc<PolyRing>,
    quotient: Quotient<K>,
}

/// Variable name of `x[i,j]` (1-based).
pub fn var_name(i: usize, j: usize) -> String {
    format!("x[{i},{j}]")
}

/// Variable list for an `m x n` matrix: rows top to bottom, each row from
/// its last column to its first. Under grevlex the diagonal term of every
/// minor then leads.
pub fn matrix_variables(m: usize, n: usize) -> Vec<String> {
    let mut v = Vec::with_capacity(m * n);
    for i in 1..=m {
        for j in (1..=n).rev() {
            v.push(var_name(i, j));
        }
    }
    v
}

impl<K: Field> RingCtx<K> {
    pub fn new(kind: RingKind) -> Result<Self> {
        match kind {
            RingKind::Determinantal { m, n, t } => Self::determinantal(m, n, t),
            RingKind::Hypersurface { n } => Self::hypersurface(n),
        }
    }

    /// `R_t(X)`; checks that the reduced Groebner basis of the `t`-minors is
    /// the set of (monic) minors.
    pub fn determinantal(m: usize, n: usize, t: usize) -> Result<Self> {
        if m == 0 || n == 0 || t < 2 || t > m.min(n) {
            return Err(AlgebraError::Precondition(format!(
                "need 1 < t <= min(m, n), got m={m}, n={n}, t={t}"
            )));
        }
        let ring = PolyRing::new(matrix_variables(m, n), TermOrder::GrevLex);
        let kind = RingKind::Determinantal { m, n, t };
        let minors: Vec<Polynomial<K>> = MinorSymbol::all(m, n, t)
            .iter()
            .map(|s| generic_minor(&ring, s))
            .collect();
        let ideal = IdealBasis::new(&ring, minors.clone())?.with_gb(&Default::default())?;
        let mut want: Vec<Polynomial<K>> = minors.iter().map(|p| p.monic()).collect();
        let mut got: Vec<Polynomial<K>> = ideal.gb().unwrap().to_vec();
        want.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
        got.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
        if want != got {
            return Err(AlgebraError::Contract(
                "the t-minors are not a Groebner basis in the chosen order".into(),
            ));
        }
        Ok(RingCtx {
            kind,
            ring,
            quotient: Quotient::new(ideal)?,
        })
    }

    /// `R_n(X) = k[X]/(det X)`.
    pub fn gorenstein(n: usize) -> Result<Self> {
        Self::determinantal(n, n, n)
    }

    /// `k[X,Y,Z]/(XY - Z^n)` graded by `deg X = deg Y = n/g`, `deg Z = 2/g`
    /// with `g = gcd(n, 2)`, which makes the relation homogeneous.
    pub fn hypersurface(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::Precondition("hypersurface needs n >= 1".into()));
        }
        let g = if n % 2 == 0 { 2 } else { 1 };
        let weights = vec![n / g, n / g, 2 / g];
        let ring = PolyRing::new(
            vec!["X".into(), "Y".into(), "Z".into()],
            TermOrder::WeightedGrevLex { weights },
        );
        let f: Polynomial<K> = parse_poly(&ring, &format!("X*Y - Z^{n}"))?;
        let ideal = IdealBasis::new(&ring, vec![f])?.with_gb(&Default::default())?;
        Ok(RingCtx {
            kind: RingKind::Hypersurface { n },
            ring,
            quotient: Quotient::new(ideal)?,
        })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn field(&self) -> FieldTag {
        K::tag()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn quotient(&self) -> &Quotient<K> {
        &self.quotient
    }

    pub fn ideal(&self) -> &IdealBasis<K> {
        self.quotient.ideal()
    }

    /// Matrix shape `(m, n)` of a determinantal ring.
    pub fn shape(&self) -> Option<(usize, usize)> {
        match self.kind {
            RingKind::Determinantal { m, n, .. } => Some((m, n)),
            RingKind::Hypersurface { .. } => None,
        }
    }

    /// The variable `x[i,j]` (1-based).
    pub fn x(&self, i: usize, j: usize) -> Polynomial<K> {
        let idx = self
            .ring
            .var_index(&var_name(i, j))
            .unwrap_or_else(|| panic!("x[{i},{j}] out of range"));
        Polynomial::var(&self.ring, idx)
    }

    pub fn var(&self, name: &str) -> Result<Polynomial<K>> {
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| AlgebraError::OutOfRange(format!("no variable {name}")))?;
        Ok(Polynomial::var(&self.ring, idx))
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial<K>> {
        parse_poly(&self.ring, s)
    }

    pub fn nf(&self, f: &Polynomial<K>) -> Polynomial<K> {
        self.quotient.normal_form(f)
    }

    pub fn is_zero(&self, f: &Polynomial<K>) -> bool {
        self.quotient.is_zero(f)
    }

    /// Monomials of degree `d` not divisible by any leading monomial of the
    /// defining ideal: a basis of `R_d`.
    pub fn normal_monomials(&self, d: u32) -> Vec<Monomial> {
        let leads: Vec<Monomial> = self
            .quotient
            .gb()
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect();
        self.ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect()
    }

    /// `dim_k R_d`
    pub fn dim_piece(&self, d: u32) -> usize {
        self.normal_monomials(d).len()
    }

    /// The minor `[rows | cols]` as a polynomial in `k[X]`.
    pub fn minor(&self, s: &MinorSymbol) -> Result<Polynomial<K>> {
        let (m, n) = self
            .shape()
            .ok_or_else(|| AlgebraError::Precondition("minors need a determinantal ring".into()))?;
        s.check_bounds(m, n)?;
        Ok(generic_minor(&self.ring, s))
    }
}

pub(crate) fn generic_minor<K: Field>(ring: &Arc<PolyRing>, s: &MinorSymbol) -> Polynomial<K> {
    let rows: Vec<Vec<Polynomial<K>>> = s
        .rows
        .iter()
        .map(|&i| {
            s.cols
                .iter()
                .map(|&j| Polynomial::var(ring, ring.var_index(&var_name(i, j)).unwrap()))
                .collect()
        })
        .collect();
    det(ring, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{Rational, F32003};

    #[test]
    fn two_by_three_minors_are_their_own_basis() {
        let r: RingCtx<Rational> = RingCtx::determinantal(2, 3, 2).unwrap();
        assert_eq!(r.ideal().gb().unwrap().len(), 3);
        assert!(r.ideal().verify_s_pairs().unwrap());
        assert!(r.ideal().is_reduced());
    }

    #[test]
    fn diagonal_term_leads() {
        let r: RingCtx<Rational> = RingCtx::gorenstein(3).unwrap();
        let det = &r.ideal().gb().unwrap()[0];
        let lead = Polynomial::monomial(r.ring(), det.lead_monomial().unwrap().clone(), Rational::new(1, 1));
        let diag = r.x(1, 1).try_mul(&r.x(2, 2)).unwrap().try_mul(&r.x(3, 3)).unwrap();
        assert_eq!(lead, diag);
        let r2: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        assert_eq!(r2.ideal().gb().unwrap()[0].to_string(), "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
    }

    #[test]
    fn hypersurface_grading_is_homogeneous() {
        for n in 1..=6 {
            let r: RingCtx<Rational> = RingCtx::hypersurface(n).unwrap();
            assert!(r.ideal().gb().unwrap()[0].is_homogeneous());
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(RingCtx::<Rational>::determinantal(2, 2, 3).is_err());
        assert!(RingCtx::<Rational>::determinantal(3, 3, 1).is_err());
        assert!(RingCtx::<Rational>::hypersurface(0).is_err());
    }

    #[test]
    fn hilbert_function_of_a_hypersurface() {
        // k[X]/(det) for 2x2: dim R_d = C(d+3,3) - C(d+1,3)
        let r: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        for d in 0..6u32 {
            let c = |a: u32| -> usize {
                if a < 3 {
                    0
                } else {
                    (a * (a - 1) * (a - 2) / 6) as usize
                }
            };
            assert_eq!(r.dim_piece(d), c(d + 3) - c(d + 1));
        }
    }
}
