//! Explicit resolutions of `p^l` in `R_n(X)` and of `(x, z^m)` in
//! `k[X,Y,Z]/(XY - Z^n)`.

use super::complex::{extend_by_syzygies, periodic_resolution, twist_chain, GradedComplex};
use super::factorization::{matfac_det, matfac_hypersurface};
use super::gamma::gamma_matrix;
use crate::detring::{RingCtx, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix};
use crate::groebner::SyzOptions;

/// Resolution of `p^l` with `length` maps. `l = 1`: `alpha, beta, alpha, ...`
/// (period 2 from the start). `n = 2`: `gamma_l`, then `beta` and `alpha`
/// summed `l` times (period 2 after `gamma`). Otherwise `gamma_l` followed by
/// computed minimal syzygies.
pub fn resolution_p_power<K: Field>(ctx: &RingCtx<K>, l: usize, length: usize, opts: &SyzOptions) -> Result<GradedComplex<K>> {
    let pd = gamma_matrix(ctx, l)?;
    let q = ctx.quotient();
    let mf = matfac_det(ctx)?;
    if l == 1 {
        return periodic_resolution(&mf, &pd.epsilon, length, q);
    }
    let f0 = pd.epsilon.col_twists().unwrap().to_vec();
    if pd.n == 2 {
        let mut maps = vec![pd.gamma.clone()];
        for k in 1..length {
            let m = if k % 2 == 1 { mf.b() } else { mf.a() };
            maps.push(m.direct_sum_power(l));
        }
        maps.truncate(length);
        let (modules, maps) = twist_chain(f0, maps)?;
        let cx = GradedComplex {
            modules,
            maps,
            augmentation: Some(pd.epsilon),
            period: Some((1, 2)),
            terminates: false,
        };
        cx.verify(q)?;
        return Ok(cx);
    }
    let (modules, maps) = twist_chain(f0, if length == 0 { vec![] } else { vec![pd.gamma] })?;
    let mut cx = GradedComplex {
        modules,
        maps,
        augmentation: Some(pd.epsilon),
        period: None,
        terminates: false,
    };
    extend_by_syzygies(&mut cx, length, q, opts)?;
    cx.verify(q)?;
    Ok(cx)
}

/// `(x, z^m)` resolved by `A, B, A, ...`.
pub fn hypersurface_augmentation<K: Field>(ctx: &RingCtx<K>, m: u32) -> Result<PolyMatrix<K>> {
    if !matches!(ctx.kind(), RingKind::Hypersurface { .. }) {
        return Err(AlgebraError::Precondition("needs a hypersurface ring".into()));
    }
    PolyMatrix::from_rows(ctx.ring(), vec![vec![ctx.parse("X")?, ctx.parse(&format!("Z^{m}"))?]])
}

pub fn resolution_hypersurface<K: Field>(ctx: &RingCtx<K>, m: u32, length: usize) -> Result<GradedComplex<K>> {
    let mf = matfac_hypersurface(ctx, m)?;
    periodic_resolution(&mf, &hypersurface_augmentation(ctx, m)?, length, ctx.quotient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::F32003;
    use crate::groebner::{syzygies, ModuleBasis, ModuleOptions};

    #[test]
    fn det_p_resolution() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(3).unwrap();
        let cx = resolution_p_power(&ctx, 1, 4, &SyzOptions::default()).unwrap();
        assert_eq!(cx.len(), 4);
        assert_eq!(cx.modules[0].twists, vec![2, 2, 2]);
        assert_eq!(cx.modules[1].twists, vec![3, 3, 3]);
        assert_eq!(cx.modules[2].twists, vec![5, 5, 5]);
        assert_eq!(cx.period, Some((0, 2)));
    }

    #[test]
    fn two_by_two_powers() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        for l in 2..=3 {
            let cx = resolution_p_power(&ctx, l, 5, &SyzOptions::default()).unwrap();
            assert_eq!(cx.modules[1].rank(), 2 * l);
            assert_eq!(cx.period, Some((1, 2)));
        }
    }

    #[test]
    fn kernel_of_eps_is_image_of_alpha() {
        // exactness at the first step, n = 2
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let cx = resolution_p_power(&ctx, 1, 2, &SyzOptions::default()).unwrap();
        let q = ctx.quotient();
        let eps = cx.augmentation.clone().unwrap();
        let syz = syzygies(&eps, q, &SyzOptions::default()).unwrap();
        let basis = ModuleBasis::new(&cx.maps[0], q, &ModuleOptions::default()).unwrap();
        for c in syz.matrix.columns() {
            assert!(basis.member(&c).unwrap().is_member());
        }
        // and the kernel of alpha is the image of beta
        let syz = syzygies(&cx.maps[0], q, &SyzOptions::default()).unwrap();
        let basis = ModuleBasis::new(&cx.maps[1], q, &ModuleOptions::default()).unwrap();
        for c in syz.matrix.columns() {
            assert!(basis.member(&c).unwrap().is_member());
        }
    }

    #[test]
    fn hypersurface_resolutions() {
        for n in 2..=5 {
            let ctx: RingCtx<F32003> = RingCtx::hypersurface(n).unwrap();
            for m in 1..n {
                let cx = resolution_hypersurface(&ctx, m, 4).unwrap();
                assert_eq!(cx.len(), 4);
            }
        }
    }

    #[test]
    fn wrong_augmentation_is_rejected() {
        let ctx: RingCtx<F32003> = RingCtx::hypersurface(3).unwrap();
        let mf = matfac_hypersurface(&ctx, 1).unwrap();
        let bad = PolyMatrix::from_rows(ctx.ring(), vec![vec![ctx.parse("Y").unwrap(), ctx.parse("Z").unwrap()]]).unwrap();
        assert!(periodic_resolution(&mf, &bad, 3, ctx.quotient()).is_err());
    }
}
