//! Homology of a [`CoefficientComplex`] one internal degree at a time, by
//! row reduction over `k`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complexes::CoefficientComplex;
use super::target::PieceCache;
use crate::detring::RingCtx;
use crate::error::Result;
use crate::exact_algebra::linalg::{kernel, Echelon, SparseVec};
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDim {
    pub degree: i32,
    pub dim: usize,
}

/// Homology at one position and degree, with a representative of a nonzero
/// class when there is one.
#[derive(Clone, Debug)]
pub struct PieceHomology<K: Field> {
    pub degree: i32,
    pub dim: usize,
    pub witness: Option<Vec<Polynomial<K>>>,
}

/// Spanning vectors of position `i` in degree `d`: `(block, element)`.
fn spanning<K: Field>(cc: &CoefficientComplex<K>, cache: &PieceCache<K>, i: usize, d: i32) -> Vec<(usize, Polynomial<K>)> {
    let mut out = Vec::new();
    for (a, s) in cc.shifts[i].iter().enumerate() {
        for f in &cache.get(d - s).basis {
            out.push((a, f.clone()));
        }
    }
    out
}

/// Coordinates of a vector at position `i` in degree `d`.
fn coords<K: Field>(cc: &CoefficientComplex<K>, cache: &PieceCache<K>, ctx: &RingCtx<K>, i: usize, d: i32, v: &[Polynomial<K>]) -> SparseVec<K> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (a, s) in cc.shifts[i].iter().enumerate() {
        let piece = cache.get(d - s);
        if !v[a].is_zero() {
            out.extend(piece.coords(ctx, &v[a]).into_iter().map(|(k, c)| (k + offset, c)));
        }
        offset += piece.ambient_dim();
    }
    out
}

fn apply_single<K: Field>(m: &PolyMatrix<K>, a: usize, f: &Polynomial<K>) -> Vec<Polynomial<K>> {
    (0..m.rows()).map(|b| m.get(b, a) * f).collect()
}

/// Homology at position `i` in degree `d`.
pub fn piece_homology<K: Field>(cc: &CoefficientComplex<K>, cache: &PieceCache<K>, i: usize, d: i32) -> Result<PieceHomology<K>> {
    let ctx = cache.ctx();
    let out_map = cc.outgoing(i)?;
    let incoming = cc.incoming(i)?;
    let span = spanning(cc, cache, i, d);
    let images: Vec<SparseVec<K>> = match (out_map, cc.next(i)) {
        (Some(m), Some(j)) => span
            .iter()
            .map(|(a, f)| coords(cc, cache, ctx, j, d, &apply_single(m, *a, f)))
            .collect(),
        _ => vec![Vec::new(); span.len()],
    };
    let mut boundaries = Echelon::new(false);
    if let Some((p, m)) = incoming {
        for (c, f) in spanning(cc, cache, p, d) {
            boundaries.insert(coords(cc, cache, ctx, i, d, &apply_single(m, c, &f)));
        }
    }
    let kern = kernel(&images);
    let dim = kern.len() - boundaries.rank();
    let mut witness = None;
    if dim > 0 {
        for comb in &kern {
            let mut v = vec![Polynomial::zero(ctx.ring()); cc.rank(i)];
            for (k, c) in comb {
                let (a, f) = &span[*k];
                v[*a] = &v[*a] + &f.scale(c);
            }
            if !boundaries.contains(&coords(cc, cache, ctx, i, d, &v)) {
                witness = Some(v.iter().map(|f| ctx.nf(f)).collect());
                break;
            }
        }
    }
    Ok(PieceHomology { degree: d, dim, witness })
}

/// Degrees `d` where position `i` can be nonzero and every block's piece
/// has degree at most `bound`.
pub fn degree_window<K: Field>(cc: &CoefficientComplex<K>, i: usize, bound: i32) -> std::ops::RangeInclusive<i32> {
    let min_s = cc.shifts[i].iter().copied().min().unwrap_or(0);
    (cc.target.min_degree() + min_s)..=(bound + min_s)
}

/// Homology at position `i` for all degrees of [`degree_window`], computed in
/// parallel.
pub fn truncated_homology<K: Field>(ctx: &RingCtx<K>, cc: &CoefficientComplex<K>, i: usize, bound: i32) -> Result<Vec<PieceHomology<K>>> {
    let cache = PieceCache::new(ctx, &cc.target);
    let degrees: Vec<i32> = degree_window(cc, i, bound).collect();
    degrees.par_iter().map(|&d| piece_homology(cc, &cache, i, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::complexes::{hom_complex, tensor_complex};
    use crate::homology::target::TargetModule;
    use crate::exact_algebra::Rational;
    use crate::groebner::SyzOptions;
    use crate::matfac_res::{resolution_p_power, GradedComplex, GradedFreeModule};

    #[test]
    fn length_zero_complex_gives_the_module() {
        let ctx: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        let cx = GradedComplex::<Rational> {
            modules: vec![GradedFreeModule::new(vec![0])],
            maps: vec![],
            augmentation: None,
            period: None,
            terminates: true,
        };
        let p = TargetModule::ideal(vec![ctx.x(1, 1), ctx.x(1, 2)], "p").unwrap();
        let cc = tensor_complex(&cx, &p).unwrap();
        let h = truncated_homology(&ctx, &cc, 0, 4).unwrap();
        let cache = PieceCache::new(&ctx, &p);
        for ph in h {
            assert_eq!(ph.dim, cache.get(ph.degree).dimension());
        }
    }

    #[test]
    fn ext_of_p_for_two_by_two() {
        let ctx: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        let cx = resolution_p_power(&ctx, 1, 4, &SyzOptions::default()).unwrap();
        let p = TargetModule::ideal(cx.augmentation.clone().unwrap().row(0), "p").unwrap();
        let cc = hom_complex(&cx, &p).unwrap();
        // Hom(p, p) = R
        for ph in truncated_homology(&ctx, &cc, 0, 5).unwrap() {
            let want = if ph.degree < 0 { 0 } else { ctx.dim_piece(ph.degree as u32) };
            assert_eq!(ph.dim, want, "degree {}", ph.degree);
        }
        for i in [1, 3] {
            assert!(truncated_homology(&ctx, &cc, i, 5).unwrap().iter().all(|ph| ph.dim == 0));
        }
        let h2 = truncated_homology(&ctx, &cc, 2, 5).unwrap();
        let first = h2.iter().find(|ph| ph.dim > 0).unwrap();
        assert_eq!(first.degree, -2);
        assert!(first.witness.is_some());
    }

    #[test]
    fn tor_with_r_vanishes_and_with_r_mod_p_does_not() {
        let ctx: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        let cx = resolution_p_power(&ctx, 1, 3, &SyzOptions::default()).unwrap();
        let r = TargetModule::ring(&ctx);
        let cc = tensor_complex(&cx, &r).unwrap();
        for i in 1..=2 {
            assert!(truncated_homology(&ctx, &cc, i, 5).unwrap().iter().all(|ph| ph.dim == 0));
        }
        let rp = TargetModule::quotient_by(cx.augmentation.clone().unwrap().row(0), "R/p").unwrap();
        let cc = tensor_complex(&cx, &rp).unwrap();
        assert!(truncated_homology(&ctx, &cc, 1, 4).unwrap().iter().any(|ph| ph.dim > 0));
    }
}
