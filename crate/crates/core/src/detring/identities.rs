//! Plücker relations among maximal minors and the cofactor identity in
//! `R_n(X)`.

use serde::{Deserialize, Serialize};

use super::minor::{det_of, subsets};
use super::ring::RingCtx;
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};

/// Index data of a Plücker relation on an `m x p` matrix: `c = (c_1..c_k)`,
/// `d = (d_1..d_s)`, `e = (e_l..e_m)`. All indices are columns, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerIndices {
    pub l: usize,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub e: Vec<usize>,
}

impl PluckerIndices {
    /// Checks `s = 2m - k - (m - l + 1) > m` and `u = m - k > 0`; returns `u`.
    pub fn validate(&self, m: usize, p: usize) -> Result<usize> {
        let k = self.c.len();
        let s = self.d.len();
        if m > p {
            return Err(AlgebraError::Precondition(format!("need m <= p, got {m} x {p}")));
        }
        if self.l == 0 || self.l > m + 1 || self.e.len() != m + 1 - self.l {
            return Err(AlgebraError::Precondition(format!(
                "e must list e_l..e_m ({} entries), got {}",
                (m + 1).saturating_sub(self.l),
                self.e.len()
            )));
        }
        if k >= m {
            return Err(AlgebraError::Precondition(format!("need u = m - k > 0, got k={k}, m={m}")));
        }
        if 2 * m != s + k + (m + 1 - self.l) || s <= m {
            return Err(AlgebraError::Precondition(format!(
                "need s = 2m - k - (m - l + 1) > m, got s={s}, m={m}, k={k}, l={}",
                self.l
            )));
        }
        if self.c.iter().chain(&self.d).chain(&self.e).any(|&j| j == 0 || j > p) {
            return Err(AlgebraError::OutOfRange(format!("column index outside 1..{p}")));
        }
        Ok(m - k)
    }
}

/// `sum sgn(i) [c, d_{i_1..i_u}] [d_{i_{u+1}..i_s}, e]` over all splits of
/// `1..s` into increasing halves of sizes `u` and `s - u`. Columns keep the
/// listed order inside each maximal minor. Identically zero.
pub fn plucker_relation<K: Field>(mat: &PolyMatrix<K>, idx: &PluckerIndices) -> Result<Polynomial<K>> {
    let (m, p) = (mat.rows(), mat.cols());
    let u = idx.validate(m, p)?;
    let ring = mat.ring().clone();
    let s = idx.d.len();
    let rows: Vec<usize> = (1..=m).collect();
    let entry = |i: usize, j: usize| mat.get(i - 1, j - 1).clone();
    let mut acc = Polynomial::zero(&ring);
    for left in subsets(s, u) {
        let right: Vec<usize> = (1..=s).filter(|i| !left.contains(i)).collect();
        // sign of the shuffle (left, right)
        let inv: usize = left.iter().enumerate().map(|(r, &i)| i - 1 - r).sum();
        let mut c1 = idx.c.clone();
        c1.extend(left.iter().map(|&i| idx.d[i - 1]));
        let mut c2: Vec<usize> = right.iter().map(|&i| idx.d[i - 1]).collect();
        c2.extend(&idx.e);
        let a = det_of(&ring, entry, &rows, &c1);
        if a.is_zero() {
            continue;
        }
        let b = det_of(&ring, entry, &rows, &c2);
        let t = &a * &b;
        acc = if inv % 2 == 1 { &acc - &t } else { &acc + &t };
    }
    Ok(acc)
}

/// All index tuples of Plücker relations on an `m x p` matrix with
/// increasing `c`, `d`, `e` drawn without repetition inside each list.
pub fn all_plucker_indices(m: usize, p: usize) -> Vec<PluckerIndices> {
    let mut out = Vec::new();
    for k in 0..m {
        for l in 1..=m + 1 {
            let elen = m + 1 - l;
            if 2 * m < k + elen {
                continue;
            }
            let s = 2 * m - k - elen;
            if s <= m || s > p {
                continue;
            }
            for c in subsets(p, k) {
                for d in subsets(p, s) {
                    for e in subsets(p, elen) {
                        out.push(PluckerIndices { l, c: c.clone(), d: d.clone(), e });
                    }
                }
            }
        }
    }
    out
}

/// The generic matrix `X` of a determinantal ring.
pub fn generic_matrix<K: Field>(ctx: &RingCtx<K>) -> Result<PolyMatrix<K>> {
    let (m, n) = ctx
        .shape()
        .ok_or_else(|| AlgebraError::Precondition("needs a determinantal ring".into()))?;
    let rows = (1..=m).map(|i| (1..=n).map(|j| ctx.x(i, j)).collect()).collect();
    PolyMatrix::from_rows(ctx.ring(), rows)
}

/// `[X | J]` with `J` the antidiagonal 0/1 matrix: column `n + j` has its
/// `1` in row `n + 1 - j`.
pub fn tilde_matrix<K: Field>(ctx: &RingCtx<K>) -> Result<PolyMatrix<K>> {
    let (m, n) = ctx
        .shape()
        .ok_or_else(|| AlgebraError::Precondition("needs a determinantal ring".into()))?;
    if m != n {
        return Err(AlgebraError::Precondition("needs a square matrix".into()));
    }
    let ring = ctx.ring();
    let rows = (1..=n)
        .map(|i| {
            let mut r: Vec<Polynomial<K>> = (1..=n).map(|j| ctx.x(i, j)).collect();
            r.extend((1..=n).map(|j| {
                if i + j == n + 1 {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            }));
            r
        })
        .collect();
    PolyMatrix::from_rows(ring, rows)
}

/// Index data of the cofactor identity: `1 <= j0 <= n-1`, `j0 <= t <= n-1`,
/// rows `a` (length `t`), columns `b = (b_{j0+1}..b_t)` with
/// `j0 < b_{j0+1} < ... <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofactorIndices {
    pub j0: usize,
    pub t: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl CofactorIndices {
    pub fn validate(&self, n: usize) -> Result<()> {
        let inc = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        let bad = |msg: String| Err(AlgebraError::Precondition(msg));
        if self.j0 < 1 || self.j0 > n.saturating_sub(1) {
            return bad(format!("need 1 <= j0 <= n-1, got j0={}", self.j0));
        }
        if self.t < self.j0 || self.t > n - 1 {
            return bad(format!("need j0 <= t <= n-1, got t={}", self.t));
        }
        if self.a.len() != self.t || !inc(&self.a) || self.a.iter().any(|&i| i == 0 || i > n) {
            return bad(format!("rows a must be {} increasing indices in 1..{n}", self.t));
        }
        if self.b.len() != self.t - self.j0 || !inc(&self.b) || self.b.iter().any(|&j| j <= self.j0 || j > n) {
            return bad(format!(
                "columns b must be {} increasing indices in {}..{n}",
                self.t - self.j0,
                self.j0 + 1
            ));
        }
        Ok(())
    }

    /// Every legal tuple for a given `n`.
    pub fn all(n: usize) -> Vec<CofactorIndices> {
        let mut out = Vec::new();
        for j0 in 1..n {
            for t in j0..n {
                for a in subsets(n, t) {
                    for bs in subsets(n - j0, t - j0) {
                        let b = bs.iter().map(|x| x + j0).collect();
                        out.push(CofactorIndices { j0, t, a: a.clone(), b });
                    }
                }
            }
        }
        out
    }
}

/// The cofactor `c_{ij} = (-1)^{i+j} M_{ij}` of the generic square matrix.
pub fn cofactor<K: Field>(ctx: &RingCtx<K>, i: usize, j: usize) -> Result<Polynomial<K>> {
    let (n, n2) = ctx
        .shape()
        .ok_or_else(|| AlgebraError::Precondition("needs a determinantal ring".into()))?;
    if n != n2 || i == 0 || j == 0 || i > n || j > n {
        return Err(AlgebraError::OutOfRange(format!("cofactor ({i},{j}) of a {n}x{n2} matrix")));
    }
    let rows: Vec<usize> = (1..=n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
    let m = det_of(ctx.ring(), |a, b| ctx.x(a, b), &rows, &cols);
    Ok(if (i + j) % 2 == 1 { -m } else { m })
}

/// `sum_j c_{nj} [a | j, 1, ..., j0-1, b_{j0+1}, ..., b_t]` in `k[X]`; its
/// normal form in `R_n(X)` vanishes.
pub fn cofactor_identity<K: Field>(ctx: &RingCtx<K>, idx: &CofactorIndices) -> Result<Polynomial<K>> {
    let (n, n2) = ctx
        .shape()
        .ok_or_else(|| AlgebraError::Precondition("needs a determinantal ring".into()))?;
    if n != n2 {
        return Err(AlgebraError::Precondition("needs a square matrix".into()));
    }
    idx.validate(n)?;
    let mut acc = Polynomial::zero(ctx.ring());
    for j in 1..=n {
        let mut cols = vec![j];
        cols.extend(1..idx.j0);
        cols.extend(&idx.b);
        let minor = det_of(ctx.ring(), |a, b| ctx.x(a, b), &idx.a, &cols);
        if minor.is_zero() {
            continue;
        }
        acc = &acc + &(&cofactor(ctx, n, j)? * &minor);
    }
    Ok(acc)
}

/// The Plücker relation on `[X | J]` from which the cofactor identity
/// follows: `k = 0`, `l = 2`, `d = (1..n+1)`, `e = (1..j0-1, b_{j0+1}..b_n)`
/// where `b_{t+1}..b_n` are the columns of `J` whose `1` sits in a row not
/// in `a`.
pub fn cofactor_plucker<K: Field>(ctx: &RingCtx<K>, idx: &CofactorIndices) -> Result<Polynomial<K>> {
    let xt = tilde_matrix(ctx)?;
    let n = xt.rows();
    idx.validate(n)?;
    let mut tail: Vec<usize> = (1..=n).filter(|r| !idx.a.contains(r)).map(|r| 2 * n + 1 - r).collect();
    tail.sort_unstable();
    let mut e: Vec<usize> = (1..idx.j0).collect();
    e.extend(&idx.b);
    e.extend(tail);
    let pi = PluckerIndices {
        l: 2,
        c: Vec::new(),
        d: (1..=n + 1).collect(),
        e,
    };
    plucker_relation(&xt, &pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{Rational, F32003};

    #[test]
    fn three_term_relation() {
        let ctx: RingCtx<Rational> = RingCtx::determinantal(2, 4, 2).unwrap();
        let x = generic_matrix(&ctx).unwrap();
        let idx = PluckerIndices { l: 2, c: vec![], d: vec![1, 2, 3], e: vec![4] };
        assert!(plucker_relation(&x, &idx).unwrap().is_zero());
        let bad = PluckerIndices { l: 2, c: vec![1], d: vec![2, 3], e: vec![4] };
        assert!(plucker_relation(&x, &bad).is_err());
    }

    #[test]
    fn every_relation_vanishes_on_small_matrices() {
        for (m, p) in [(2, 3), (2, 4), (3, 4)] {
            let ctx: RingCtx<F32003> = RingCtx::determinantal(m, p, 2).unwrap();
            let x = generic_matrix(&ctx).unwrap();
            let all = all_plucker_indices(m, p);
            assert!(!all.is_empty());
            for idx in all {
                assert!(plucker_relation(&x, &idx).unwrap().is_zero(), "{m}x{p} {idx:?}");
            }
        }
    }

    #[test]
    fn cofactor_identity_examples() {
        let r2: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        let id = CofactorIndices { j0: 1, t: 1, a: vec![1], b: vec![] };
        assert!(cofactor_identity(&r2, &id).unwrap().is_zero());

        let r3: RingCtx<Rational> = RingCtx::gorenstein(3).unwrap();
        // rows 1,2: m_31 [1,2|1,3] - m_32 [1,2|2,3] cancels already in k[X]
        let id = CofactorIndices { j0: 1, t: 2, a: vec![1, 2], b: vec![3] };
        assert!(cofactor_identity(&r3, &id).unwrap().is_zero());
        let id = CofactorIndices { j0: 1, t: 2, a: vec![1, 3], b: vec![3] };
        let f = cofactor_identity(&r3, &id).unwrap();
        assert!(!f.is_zero());
        assert!(r3.is_zero(&f));
        let id = CofactorIndices { j0: 1, t: 1, a: vec![1], b: vec![] };
        assert!(r3.is_zero(&cofactor_identity(&r3, &id).unwrap()));
        assert!(cofactor_identity(&r3, &CofactorIndices { j0: 3, t: 3, a: vec![1, 2, 3], b: vec![] }).is_err());
    }

    #[test]
    fn cofactor_identities_and_their_plucker_source() {
        for n in 2..=3 {
            let ctx: RingCtx<F32003> = RingCtx::gorenstein(n).unwrap();
            for idx in CofactorIndices::all(n) {
                assert!(ctx.is_zero(&cofactor_identity(&ctx, &idx).unwrap()), "{idx:?}");
                assert!(cofactor_plucker(&ctx, &idx).unwrap().is_zero(), "{idx:?}");
            }
        }
    }

    #[test]
    fn cofactor_sign() {
        let r2: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        assert_eq!(cofactor(&r2, 2, 1).unwrap(), -r2.x(1, 2));
        assert_eq!(cofactor(&r2, 2, 2).unwrap(), r2.x(1, 1));
    }
}
