//! `C* = Hom(C, R)` for a nonzero ideal `C` of a domain, and whether
//! `C = C**`.

use serde::{Deserialize, Serialize};

use super::target::{PieceCache, TargetModule};
use super::truncated::DegreeDim;
use crate::detring::RingCtx;
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};
use crate::groebner::{colon_ideal, ideal_eq, syzygies, SyzOptions};

#[derive(Clone, Debug)]
pub struct DualReport<K: Field> {
    /// Generators of `ker(d_1^T)`, i.e. of `Hom(C, R)` as maps on the
    /// generators of `C`; one column per homomorphism.
    pub hom_generators: PolyMatrix<K>,
    /// `(a) : C`, an ideal isomorphic to `C*` (`a` the first generator).
    pub dual_ideal: Vec<Polynomial<K>>,
    /// `(a) : ((a) : C)`, the copy of `C**` containing `C`.
    pub double_dual: Vec<Polynomial<K>>,
    pub is_reflexive: bool,
    /// `dim C_d` and `dim C**_d` up to the bound.
    pub dims: Vec<(DegreeDim, DegreeDim)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualJson {
    pub dual_ideal: Vec<String>,
    pub double_dual: Vec<String>,
    pub hom_generators: usize,
    pub is_reflexive: bool,
}

impl<K: Field> DualReport<K> {
    pub fn to_json(&self) -> DualJson {
        DualJson {
            dual_ideal: self.dual_ideal.iter().map(|f| f.to_string()).collect(),
            double_dual: self.double_dual.iter().map(|f| f.to_string()).collect(),
            hom_generators: self.hom_generators.cols(),
            is_reflexive: self.is_reflexive,
        }
    }
}

/// `C**` as an ideal containing `C`: `(a) : ((a) : C)` for a nonzero
/// `a in C`.
pub fn reflexive_hull<K: Field>(ctx: &RingCtx<K>, gens: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
    let q = ctx.quotient();
    let a = gens
        .iter()
        .find(|g| !ctx.is_zero(g))
        .ok_or_else(|| AlgebraError::Precondition("the ideal must be nonzero".into()))?;
    let dual = colon_ideal(std::slice::from_ref(a), gens, q)?;
    colon_ideal(std::slice::from_ref(a), &dual, q)
}

pub fn dual_and_reflexivity<K: Field>(ctx: &RingCtx<K>, gens: &[Polynomial<K>], bound: i32) -> Result<DualReport<K>> {
    let q = ctx.quotient();
    let target = TargetModule::ideal(gens.to_vec(), "C")?;
    let row = target.generator_row(ctx)?;
    let d1 = syzygies(&row, q, &SyzOptions::default())?.matrix;
    let neg = |v: &[i32]| v.iter().map(|t| -t).collect::<Vec<_>>();
    let hom_generators = if d1.cols() == 0 {
        PolyMatrix::identity(ctx.ring(), gens.len())
    } else {
        let dt = d1
            .transpose()
            .with_twists(neg(d1.col_twists().unwrap()), neg(d1.row_twists().unwrap()))?;
        syzygies(&dt, q, &SyzOptions::default())?.matrix
    };
    let a = gens.iter().find(|g| !ctx.is_zero(g)).unwrap();
    let dual_ideal = colon_ideal(std::slice::from_ref(a), gens, q)?;
    let double_dual = colon_ideal(std::slice::from_ref(a), &dual_ideal, q)?;
    let is_reflexive = ideal_eq(gens, &double_dual, q)?;
    let hull = TargetModule::ideal(double_dual.clone(), "C**")?;
    let (c1, c2) = (PieceCache::new(ctx, &target), PieceCache::new(ctx, &hull));
    let dims = (0..=bound)
        .map(|d| {
            (
                DegreeDim { degree: d, dim: c1.get(d).dimension() },
                DegreeDim { degree: d, dim: c2.get(d).dimension() },
            )
        })
        .collect();
    Ok(DualReport { hom_generators, dual_ideal, double_dual, is_reflexive, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::F32003;

    #[test]
    fn ring_is_reflexive() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let r = dual_and_reflexivity(&ctx, &[Polynomial::one(ctx.ring())], 3).unwrap();
        assert!(r.is_reflexive);
        assert_eq!(r.hom_generators.cols(), 1);
    }

    #[test]
    fn p_is_reflexive_but_the_maximal_ideal_is_not() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let p = vec![ctx.x(1, 1), ctx.x(1, 2)];
        let r = dual_and_reflexivity(&ctx, &p, 4).unwrap();
        assert!(r.is_reflexive);
        assert!(r.dims.iter().all(|(a, b)| a.dim == b.dim));
        let m = vec![ctx.x(1, 1), ctx.x(1, 2), ctx.x(2, 1), ctx.x(2, 2)];
        let r = dual_and_reflexivity(&ctx, &m, 3).unwrap();
        assert!(!r.is_reflexive);
        assert_eq!(r.dims[0].1.dim, 1);
    }

    #[test]
    fn hypersurface_classes_are_reflexive() {
        for n in 2..=4 {
            let ctx: RingCtx<F32003> = RingCtx::hypersurface(n).unwrap();
            for m in 1..n {
                let g = vec![ctx.parse("X").unwrap(), ctx.parse(&format!("Z^{m}")).unwrap()];
                assert!(dual_and_reflexivity(&ctx, &g, 4).unwrap().is_reflexive, "n={n} m={m}");
            }
        }
    }
}
