//! Claims that can be re-checked from a report with ring arithmetic and
//! normal forms modulo the ring's known basis.

use serde::{Deserialize, Serialize};

use sdmkit_core::detring::{RingCtx, RingKind};
use sdmkit_core::exact_algebra::{parse_poly, Field, MatrixJson, PolyMatrix, Polynomial};
use sdmkit_core::groebner::verify_combination;
use sdmkit_core::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `A B = B A = f I` in the polynomial ring.
    MatrixFactorization { ring: RingKind, a: MatrixJson, b: MatrixJson, f: String },
    /// `left * right = 0` in the ring.
    ZeroProduct { label: String, ring: RingKind, left: MatrixJson, right: MatrixJson },
    /// `generators * coefficients = vector` in the ring.
    Combination { label: String, ring: RingKind, generators: MatrixJson, coefficients: Vec<String>, vector: Vec<String> },
    /// `map * vector = 0` in the ring.
    Cocycle { label: String, ring: RingKind, map: MatrixJson, vector: Vec<String> },
    /// `poly = 0` in the ring.
    Vanishes { label: String, ring: RingKind, poly: String },
}

impl Certificate {
    pub fn ring(&self) -> RingKind {
        match self {
            Certificate::MatrixFactorization { ring, .. }
            | Certificate::ZeroProduct { ring, .. }
            | Certificate::Combination { ring, .. }
            | Certificate::Cocycle { ring, .. }
            | Certificate::Vanishes { ring, .. } => *ring,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Certificate::MatrixFactorization { ring, .. } => format!("matrix factorization over {ring}"),
            Certificate::ZeroProduct { label, .. }
            | Certificate::Combination { label, .. }
            | Certificate::Cocycle { label, .. }
            | Certificate::Vanishes { label, .. } => label.clone(),
        }
    }

    pub fn zero_product<K: Field>(label: impl Into<String>, ctx: &RingCtx<K>, left: &PolyMatrix<K>, right: &PolyMatrix<K>) -> Self {
        Certificate::ZeroProduct { label: label.into(), ring: ctx.kind(), left: left.to_json(), right: right.to_json() }
    }

    pub fn combination<K: Field>(
        label: impl Into<String>,
        ctx: &RingCtx<K>,
        generators: &PolyMatrix<K>,
        coefficients: &[Polynomial<K>],
        vector: &[Polynomial<K>],
    ) -> Self {
        Certificate::Combination {
            label: label.into(),
            ring: ctx.kind(),
            generators: generators.to_json(),
            coefficients: strings(coefficients),
            vector: strings(vector),
        }
    }

    pub fn cocycle<K: Field>(label: impl Into<String>, ctx: &RingCtx<K>, map: &PolyMatrix<K>, vector: &[Polynomial<K>]) -> Self {
        Certificate::Cocycle { label: label.into(), ring: ctx.kind(), map: map.to_json(), vector: strings(vector) }
    }

    /// Re-checks the claim in `ctx`, which must be the certificate's ring.
    pub fn verify<K: Field>(&self, ctx: &RingCtx<K>) -> Result<bool> {
        let ring = ctx.ring();
        let q = ctx.quotient();
        let matrix = |j: &MatrixJson| PolyMatrix::<K>::from_json(ring, j);
        let polys = |v: &[String]| v.iter().map(|s| parse_poly::<K>(ring, s)).collect::<Result<Vec<_>>>();
        Ok(match self {
            Certificate::MatrixFactorization { a, b, f, .. } => {
                let (a, b) = (matrix(a)?, matrix(b)?);
                let fi = PolyMatrix::identity(ring, a.rows()).scale(&parse_poly(ring, f)?);
                same_entries(&a.mul(&b)?, &fi) && same_entries(&b.mul(&a)?, &fi)
            }
            Certificate::ZeroProduct { left, right, .. } => q.is_zero_matrix(&matrix(left)?.mul(&matrix(right)?)?),
            Certificate::Combination { generators, coefficients, vector, .. } => {
                verify_combination(&matrix(generators)?, &polys(coefficients)?, &polys(vector)?, q)?
            }
            Certificate::Cocycle { map, vector, .. } => matrix(map)?.apply(&polys(vector)?)?.iter().all(|f| ctx.is_zero(f)),
            Certificate::Vanishes { poly, .. } => ctx.is_zero(&parse_poly(ring, poly)?),
        })
    }
}

fn same_entries<K: Field>(a: &PolyMatrix<K>, b: &PolyMatrix<K>) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == b.get(i, j)))
}

pub fn strings<K: Field>(v: &[Polynomial<K>]) -> Vec<String> {
    v.iter().map(|f| f.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sdmkit_core::exact_algebra::F32003;
    use sdmkit_core::matfac_res::matfac_det;

    #[test]
    fn factorization_round_trip() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let mf = matfac_det(&ctx).unwrap();
        let c = Certificate::MatrixFactorization {
            ring: ctx.kind(),
            a: mf.a().to_json(),
            b: mf.b().to_json(),
            f: mf.f().to_string(),
        };
        let back: Certificate = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert!(back.verify(&ctx).unwrap());
        let Certificate::MatrixFactorization { ring, a, b, .. } = back else { unreachable!() };
        let bad = Certificate::MatrixFactorization { ring, a, b, f: "x[1,1]".into() };
        assert!(!bad.verify(&ctx).unwrap());
    }

    #[test]
    fn cocycle_and_vanishing() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let m = PolyMatrix::from_rows(ctx.ring(), vec![vec![ctx.x(2, 2), -ctx.x(1, 2)]]).unwrap();
        let v = vec![ctx.x(1, 2), ctx.x(2, 2)];
        assert!(Certificate::cocycle("c", &ctx, &m, &v).verify(&ctx).unwrap());
        let w = vec![ctx.x(1, 1), ctx.x(2, 2)];
        assert!(!Certificate::cocycle("c", &ctx, &m, &w).verify(&ctx).unwrap());
        let det = Certificate::Vanishes { label: "det".into(), ring: ctx.kind(), poly: "x[1,1]*x[2,2] - x[1,2]*x[2,1]".into() };
        assert!(det.verify(&ctx).unwrap());
    }
}
