use super::complexes::tensor_complex;
use super::target::TargetModule;
use super::truncated::{truncated_homology, DegreeDim};
use crate::detring::RingCtx;
use crate::error::Result;
use crate::exact_algebra::Field;
use crate::matfac_res::GradedComplex;

/// `dim Tor_i(C, N)_d` for the degrees of the window up to `bound`, where
/// `cx` resolves `C` with at least `i + 1` maps.
pub fn tor<K: Field>(ctx: &RingCtx<K>, cx: &GradedComplex<K>, target: &TargetModule<K>, i: usize, bound: i32) -> Result<Vec<DegreeDim>> {
    let cc = tensor_complex(cx, target)?;
    Ok(truncated_homology(ctx, &cc, i, bound)?
        .into_iter()
        .map(|p| DegreeDim { degree: p.degree, dim: p.dim })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Rational;
    use crate::groebner::SyzOptions;
    use crate::homology::target::PieceCache;
    use crate::matfac_res::resolution_p_power;

    #[test]
    fn tor_zero_is_the_tensor_product() {
        let ctx: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        let cx = resolution_p_power(&ctx, 1, 2, &SyzOptions::default()).unwrap();
        let r = TargetModule::ring(&ctx);
        let p = TargetModule::ideal(cx.augmentation.clone().unwrap().row(0), "p").unwrap();
        let cache = PieceCache::new(&ctx, &p);
        for dd in tor(&ctx, &cx, &r, 0, 5).unwrap() {
            assert_eq!(dd.dim, cache.get(dd.degree).dimension());
        }
    }
}
