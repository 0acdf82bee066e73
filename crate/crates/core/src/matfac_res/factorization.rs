use crate::detring::{det_of, RingCtx, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};

/// Square matrices `A`, `B` over the ambient polynomial ring with
/// `AB = BA = f I`, checked exactly on construction.
#[derive(Clone, Debug)]
pub struct MatrixFactorization<K: Field> {
    a: PolyMatrix<K>,
    b: PolyMatrix<K>,
    f: Polynomial<K>,
}

impl<K: Field> MatrixFactorization<K> {
    pub fn new(a: PolyMatrix<K>, b: PolyMatrix<K>, f: Polynomial<K>) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n || b.rows() != n || b.cols() != n {
            return Err(AlgebraError::DimensionMismatch("factorization needs equal square matrices".into()));
        }
        let want = PolyMatrix::identity(a.ring(), n).scale(&f);
        if a.mul(&b)? != want || b.mul(&a)? != want {
            return Err(AlgebraError::Contract("AB = BA = f I fails".into()));
        }
        Ok(MatrixFactorization { a, b, f })
    }

    pub fn a(&self) -> &PolyMatrix<K> {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix<K> {
        &self.b
    }

    pub fn f(&self) -> &Polynomial<K> {
        &self.f
    }

    /// Re-checks the defining identity.
    pub fn verify(&self) -> bool {
        Self::new(self.a.clone(), self.b.clone(), self.f.clone()).is_ok()
    }
}

fn square_n<K: Field>(ctx: &RingCtx<K>) -> Result<usize> {
    match ctx.kind() {
        RingKind::Determinantal { m, n, t } if m == n && t == n => Ok(n),
        _ => Err(AlgebraError::Precondition("needs R_n(X) for a square X".into())),
    }
}

/// `alpha`: entry `(i, j)` is `(-1)^(i+j) x_ji`.
pub fn alpha<K: Field>(ctx: &RingCtx<K>) -> Result<PolyMatrix<K>> {
    let n = square_n(ctx)?;
    let rows = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let x = ctx.x(j, i);
                    if (i + j) % 2 == 1 {
                        -x
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(ctx.ring(), rows)
}

/// `beta`: entry `(i, j)` is the minor `M_ij` (row `i`, column `j` deleted).
pub fn beta<K: Field>(ctx: &RingCtx<K>) -> Result<PolyMatrix<K>> {
    let n = square_n(ctx)?;
    let rows = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let r: Vec<usize> = (1..=n).filter(|&a| a != i).collect();
                    let c: Vec<usize> = (1..=n).filter(|&b| b != j).collect();
                    det_of(ctx.ring(), |a, b| ctx.x(a, b), &r, &c)
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(ctx.ring(), rows)
}

/// `(alpha, beta)` factoring `det X`.
pub fn matfac_det<K: Field>(ctx: &RingCtx<K>) -> Result<MatrixFactorization<K>> {
    let n = square_n(ctx)?;
    if n < 2 {
        return Err(AlgebraError::Precondition("need n >= 2".into()));
    }
    let all: Vec<usize> = (1..=n).collect();
    let f = det_of(ctx.ring(), |a, b| ctx.x(a, b), &all, &all);
    MatrixFactorization::new(alpha(ctx)?, beta(ctx)?, f)
}

/// `A = [[Y, Z^m], [-Z^(n-m), -X]]`, `B = [[X, Z^m], [-Z^(n-m), -Y]]`
/// factoring `XY - Z^n`.
pub fn matfac_hypersurface<K: Field>(ctx: &RingCtx<K>, m: u32) -> Result<MatrixFactorization<K>> {
    let RingKind::Hypersurface { n } = ctx.kind() else {
        return Err(AlgebraError::Precondition("needs a hypersurface ring".into()));
    };
    if m == 0 || m >= n {
        return Err(AlgebraError::Precondition(format!("need 0 < m < n, got m={m}, n={n}")));
    }
    let p = |s: String| ctx.parse(&s);
    let a = PolyMatrix::from_rows(
        ctx.ring(),
        vec![
            vec![p("Y".into())?, p(format!("Z^{m}"))?],
            vec![p(format!("-Z^{}", n - m))?, p("-X".into())?],
        ],
    )?;
    let b = PolyMatrix::from_rows(
        ctx.ring(),
        vec![
            vec![p("X".into())?, p(format!("Z^{m}"))?],
            vec![p(format!("-Z^{}", n - m))?, p("-Y".into())?],
        ],
    )?;
    MatrixFactorization::new(a, b, p(format!("X*Y - Z^{n}"))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{Rational, F32003};

    #[test]
    fn two_by_two_matrices() {
        let ctx: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        let mf = matfac_det(&ctx).unwrap();
        assert_eq!(
            mf.a().to_string_rows(),
            vec![vec!["x[1,1]", "-x[2,1]"], vec!["-x[1,2]", "x[2,2]"]]
        );
        assert_eq!(
            mf.b().to_string_rows(),
            vec![vec!["x[2,2]", "x[2,1]"], vec!["x[1,2]", "x[1,1]"]]
        );
    }

    #[test]
    fn det_factorizations() {
        for n in 2..=4 {
            let ctx: RingCtx<F32003> = RingCtx::gorenstein(n).unwrap();
            let mf = matfac_det(&ctx).unwrap();
            assert!(mf.verify());
            assert_eq!(mf.f().len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn hypersurface_factorizations() {
        let ctx: RingCtx<Rational> = RingCtx::hypersurface(2).unwrap();
        let mf = matfac_hypersurface(&ctx, 1).unwrap();
        assert_eq!(mf.a().to_string_rows(), vec![vec!["Y", "Z"], vec!["-Z", "-X"]]);
        assert_eq!(mf.b().to_string_rows(), vec![vec!["X", "Z"], vec!["-Z", "-Y"]]);
        for n in 2..=6 {
            let ctx: RingCtx<Rational> = RingCtx::hypersurface(n).unwrap();
            for m in 1..n {
                assert!(matfac_hypersurface(&ctx, m).unwrap().verify());
            }
            assert!(matfac_hypersurface(&ctx, n).is_err());
            assert!(matfac_hypersurface(&ctx, 0).is_err());
        }
    }

    #[test]
    fn broken_factorization_is_rejected() {
        let ctx: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
        let mf = matfac_det(&ctx).unwrap();
        let mut b = mf.b().clone();
        b.set(0, 0, -ctx.x(2, 2));
        assert!(MatrixFactorization::new(mf.a().clone(), b, mf.f().clone()).is_err());
    }
}
