//! Colon checks for `m_nn` on powers of `p` in `R_n(X)`.

use serde::{Deserialize, Serialize};

use super::minor::det_of;
use super::poset::PosetPi;
use super::ring::{RingCtx, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, Polynomial};
use crate::groebner::{colon_within, ideal_eq, ideal_power, ideal_product};

/// Generators of `p` (the `(t-1)`-minors of the first `t-1` rows), in the
/// poset's increasing order; for `t = n` these are `m_nn < ... < m_n1`.
pub fn p_generators<K: Field>(ctx: &RingCtx<K>) -> Result<Vec<Polynomial<K>>> {
    let RingKind::Determinantal { m, n, t } = ctx.kind() else {
        return Err(AlgebraError::Precondition("p needs a determinantal ring".into()));
    };
    let pi = PosetPi::new(m, n, t)?;
    Ok(pi
        .psi()
        .iter()
        .map(|s| det_of(ctx.ring(), |i, j| ctx.x(i, j), &s.rows, &s.cols))
        .collect())
}

/// `m_nj`, the minor of `X` without row `n` and column `j`.
pub fn m_n<K: Field>(ctx: &RingCtx<K>, j: usize) -> Result<Polynomial<K>> {
    let (n, n2) = ctx
        .shape()
        .ok_or_else(|| AlgebraError::Precondition("needs a determinantal ring".into()))?;
    if n != n2 || j == 0 || j > n {
        return Err(AlgebraError::OutOfRange(format!("m_n{j} of a {n}x{n2} matrix")));
    }
    let rows: Vec<usize> = (1..n).collect();
    let cols: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
    Ok(det_of(ctx.ring(), |a, b| ctx.x(a, b), &rows, &cols))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonCheck {
    pub n: usize,
    pub l: u32,
    pub k: u32,
    pub holds: bool,
}

/// Whether `{c in p^(l-k) : m_nn^k c in x_nn p^l} = x_nn p^(l-k)` in
/// `R_n(X)`. With `k = 1` and `p^l` in place of `p^(l-1)` see
/// [`check_nonzerodivisor`].
pub fn check_colon<K: Field>(ctx: &RingCtx<K>, l: u32, k: u32) -> Result<ColonCheck> {
    let n = square(ctx)?;
    if k > l {
        return Err(AlgebraError::Precondition(format!("need k <= l, got k={k}, l={l}")));
    }
    let q = ctx.quotient();
    let p = p_generators(ctx)?;
    let x = vec![ctx.x(n, n)];
    let target = ideal_product(&x, &ideal_power(&p, l, q), q);
    let ambient = ideal_power(&p, l - k, q);
    let f = m_n(ctx, n)?.pow(k);
    let c = colon_within(&target, &f, &ambient, q)?;
    let want = ideal_product(&x, &ambient, q);
    Ok(ColonCheck { n, l, k, holds: ideal_eq(&c, &want, q)? })
}

/// Whether `m_nn` is a nonzerodivisor on `p^l / x_nn p^l`, i.e.
/// `{c in p^l : m_nn c in x_nn p^l} = x_nn p^l`.
pub fn check_nonzerodivisor<K: Field>(ctx: &RingCtx<K>, l: u32) -> Result<bool> {
    let n = square(ctx)?;
    let q = ctx.quotient();
    let p = p_generators(ctx)?;
    let x = vec![ctx.x(n, n)];
    let pl = ideal_power(&p, l, q);
    let target = ideal_product(&x, &pl, q);
    let c = colon_within(&target, &m_n(ctx, n)?, &pl, q)?;
    ideal_eq(&c, &target, q)
}

fn square<K: Field>(ctx: &RingCtx<K>) -> Result<usize> {
    match ctx.kind() {
        RingKind::Determinantal { m, n, t } if m == n && t == n => Ok(n),
        _ => Err(AlgebraError::Precondition("needs R_n(X) for a square X".into())),
    }
}
