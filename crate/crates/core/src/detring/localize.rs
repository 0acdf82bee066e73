//! The isomorphism `R_t(X)[x_mn^-1] -> R_{t-1}(Y)[B_mn][X_mn^-1]`, where
//! `Y` is `X` without its last row and column and `B_mn` are the variables of
//! that row and column, given by `X_ij -> X_ij + X_mj X_in / X_mn`.

use std::sync::Arc;

use super::minor::{det_of, subsets, MinorSymbol};
use super::ring::{RingCtx, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyRing, Polynomial};
use crate::groebner::engine::GbOptions;
use crate::groebner::{IdealBasis, Quotient};

/// `numerator / X_mn^power`, numerator reduced modulo `I_{t-1}(Y)` and not
/// divisible by `X_mn` unless `power == 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalImage<K: Field> {
    pub numerator: Polynomial<K>,
    pub power: u32,
}

/// Target data for the localization map of one `R_t(X)`.
#[derive(Clone, Debug)]
pub struct Localizer<K: Field> {
    m: usize,
    n: usize,
    t: usize,
    ring: Arc<PolyRing>,
    target: Quotient<K>,
    xmn: usize,
    images: Vec<Polynomial<K>>,
}

impl<K: Field> Localizer<K> {
    pub fn new(ctx: &RingCtx<K>) -> Result<Self> {
        let RingKind::Determinantal { m, n, t } = ctx.kind() else {
            return Err(AlgebraError::Precondition("localization needs a determinantal ring".into()));
        };
        let ring = ctx.ring().clone();
        // I_{t-1}(Y)
        let gens: Vec<Polynomial<K>> = MinorSymbol::all(m - 1, n - 1, t - 1)
            .iter()
            .map(|s| det_of(&ring, |i, j| ctx.x(i, j), &s.rows, &s.cols))
            .collect();
        let ideal = IdealBasis::new(&ring, gens)?.with_gb(&GbOptions::default())?;
        let target = Quotient::new(ideal)?;
        let xmn = ring.var_index(&super::ring::var_name(m, n)).unwrap();
        let xm = ctx.x(m, n);
        let mut images = Vec::with_capacity(m * n);
        for idx in 0..ring.nvars() {
            let (i, j) = parse_var(&ring.names()[idx]);
            let v = ctx.x(i, j);
            images.push(if i < m && j < n {
                &(&v * &xm) + &(&ctx.x(m, j) * &ctx.x(i, n))
            } else {
                &v * &xm
            });
        }
        Ok(Localizer { m, n, t, ring, target, xmn, images })
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.t)
    }

    /// `R_{t-1}(Y)[B_mn]` inside the same polynomial ring.
    pub fn target(&self) -> &Quotient<K> {
        &self.target
    }

    fn normalize(&self, num: Polynomial<K>, mut power: u32) -> LocalImage<K> {
        let mut num = self.target.normal_form(&num);
        let x = crate::exact_algebra::Monomial::var(self.ring.nvars(), self.xmn, 1);
        while power > 0 && !num.is_zero() && num.terms().iter().all(|(mo, _)| x.divides(mo)) {
            let terms = num
                .terms()
                .iter()
                .map(|(mo, c)| (x.quotient_of(mo).unwrap(), c.clone()))
                .collect();
            num = Polynomial::from_terms(&self.ring, terms);
            power -= 1;
        }
        if num.is_zero() {
            power = 0;
        }
        LocalImage { numerator: num, power }
    }

    /// Image of `f in k[X]`.
    pub fn image(&self, f: &Polynomial<K>) -> Result<LocalImage<K>> {
        let parts = f.homogeneous_parts();
        let top = parts.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut acc = Polynomial::zero(&self.ring);
        for (d, p) in parts {
            // substituting X_ij*X_mn for every variable multiplies by X_mn^d
            let s = p.substitute(&self.images)?;
            acc = &acc + &s.mul_term(
                &crate::exact_algebra::Monomial::var(self.ring.nvars(), self.xmn, top - d),
                &K::one(),
            );
        }
        Ok(self.normalize(acc, top))
    }

    pub fn mul(&self, a: &LocalImage<K>, b: &LocalImage<K>) -> LocalImage<K> {
        self.normalize(&a.numerator * &b.numerator, a.power + b.power)
    }

    pub fn add(&self, a: &LocalImage<K>, b: &LocalImage<K>) -> LocalImage<K> {
        let xa = Polynomial::var(&self.ring, self.xmn).pow(b.power);
        let xb = Polynomial::var(&self.ring, self.xmn).pow(a.power);
        self.normalize(&(&a.numerator * &xa) + &(&b.numerator * &xb), a.power + b.power)
    }

    /// Equality in the target.
    pub fn equal(&self, a: &LocalImage<K>, b: &LocalImage<K>) -> bool {
        let xa = Polynomial::var(&self.ring, self.xmn).pow(b.power);
        let xb = Polynomial::var(&self.ring, self.xmn).pow(a.power);
        self.target.is_zero(&(&(&a.numerator * &xa) - &(&b.numerator * &xb)))
    }

    /// Generators of `p` in `R_t(X)` taken from rows `1..t-2` and `m`: the
    /// `(t-1)`-minors of those rows.
    pub fn p_source(&self, ctx: &RingCtx<K>) -> Vec<Polynomial<K>> {
        let mut rows: Vec<usize> = (1..self.t - 1).collect();
        rows.push(self.m);
        subsets(self.n, self.t - 1)
            .iter()
            .map(|c| det_of(&self.ring, |i, j| ctx.x(i, j), &rows, c))
            .collect()
    }

    /// Generators of `p` in `R_{t-1}(Y)`: the `(t-2)`-minors of rows
    /// `1..t-2` of `Y` (the unit ideal when `t = 2`).
    pub fn p_target(&self, ctx: &RingCtx<K>) -> Vec<Polynomial<K>> {
        let rows: Vec<usize> = (1..self.t - 1).collect();
        subsets(self.n - 1, self.t - 2)
            .iter()
            .map(|c| det_of(&self.ring, |i, j| ctx.x(i, j), &rows, c))
            .collect()
    }

    /// Whether the ideals generated by `a` and by `b` (elements of the
    /// target) extend to the same ideal after inverting `X_mn`; powers of
    /// `X_mn` up to `max_power` are tried for the saturation.
    pub fn same_extension(&self, a: &[LocalImage<K>], b: &[LocalImage<K>], max_power: u32) -> Result<bool> {
        let na: Vec<Polynomial<K>> = a.iter().map(|x| x.numerator.clone()).collect();
        let nb: Vec<Polynomial<K>> = b.iter().map(|x| x.numerator.clone()).collect();
        Ok(self.saturated_contains(&na, &nb, max_power)? && self.saturated_contains(&nb, &na, max_power)?)
    }

    fn saturated_contains(&self, big: &[Polynomial<K>], small: &[Polynomial<K>], max_power: u32) -> Result<bool> {
        let mut gens = big.to_vec();
        gens.extend(self.target.gb().iter().cloned());
        let lifted = IdealBasis::new(&self.ring, gens)?.with_gb(&GbOptions::default())?;
        let x = Polynomial::var(&self.ring, self.xmn);
        'outer: for f in small {
            let mut g = f.clone();
            for _ in 0..=max_power {
                if lifted.contains(&g)? {
                    continue 'outer;
                }
                g = &g * &x;
            }
            return Ok(false);
        }
        Ok(true)
    }
}

fn parse_var(name: &str) -> (usize, usize) {
    let inner = name.trim_start_matches("x[").trim_end_matches(']');
    let (a, b) = inner.split_once(',').expect("matrix variable name");
    (a.parse().unwrap(), b.parse().unwrap())
}
