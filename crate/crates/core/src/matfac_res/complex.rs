use serde::{Deserialize, Serialize};

use super::factorization::MatrixFactorization;
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};
use crate::groebner::{syzygies, Quotient, SyzOptions};

/// `⊕ R(-twists[i])`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedFreeModule {
    pub twists: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// A free resolution `... -> F_2 -> F_1 -> F_0 (-> C)`: `maps[k]` is
/// `d_{k+1}: F_{k+1} -> F_k` with row twists of `F_k` and column twists of
/// `F_{k+1}`; `augmentation` is the `1 x rank F_0` row of generators of `C`.
#[derive(Clone, Debug)]
pub struct GradedComplex<K: Field> {
    pub modules: Vec<GradedFreeModule>,
    pub maps: Vec<PolyMatrix<K>>,
    pub augmentation: Option<PolyMatrix<K>>,
    /// `(offset, period)`: `maps[k] == maps[k + period]` for `k >= offset`.
    pub period: Option<(usize, usize)>,
    /// The last module has no syzygies: the resolution is complete.
    pub terminates: bool,
}

impl<K: Field> GradedComplex<K> {
    /// Number of maps.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `d_i` (1-based), or `None` past the end.
    pub fn d(&self, i: usize) -> Option<&PolyMatrix<K>> {
        if i == 0 {
            None
        } else {
            self.maps.get(i - 1)
        }
    }

    /// Consecutive maps (and the augmentation) compose to zero modulo the
    /// ring's ideal, twists are consistent, and the period tag holds.
    pub fn verify(&self, q: &Quotient<K>) -> Result<()> {
        if self.modules.len() != self.maps.len() + 1 {
            return Err(AlgebraError::Contract("module and map counts disagree".into()));
        }
        for (k, d) in self.maps.iter().enumerate() {
            let (r, c) = (d.row_twists(), d.col_twists());
            if r != Some(&self.modules[k].twists[..]) || c != Some(&self.modules[k + 1].twists[..]) {
                return Err(AlgebraError::Contract(format!("map d_{} has inconsistent twists", k + 1)));
            }
        }
        for k in 1..self.maps.len() {
            if !q.is_zero_matrix(&self.maps[k - 1].mul(&self.maps[k])?) {
                return Err(AlgebraError::Contract(format!("d_{} d_{} != 0", k, k + 1)));
            }
        }
        if let (Some(e), Some(d1)) = (&self.augmentation, self.maps.first()) {
            if !q.is_zero_matrix(&e.mul(d1)?) {
                return Err(AlgebraError::Contract("augmentation does not kill d_1".into()));
            }
        }
        if let Some((off, per)) = self.period {
            for k in off..self.maps.len().saturating_sub(per) {
                if self.maps[k].to_string_rows() != self.maps[k + per].to_string_rows() {
                    return Err(AlgebraError::Contract(format!("period tag fails at d_{}", k + 1)));
                }
            }
        }
        Ok(())
    }
}

/// Twists of a `1 x r` generator row: the generator degrees.
pub fn generator_twists<K: Field>(aug: &PolyMatrix<K>) -> Result<Vec<i32>> {
    (0..aug.cols())
        .map(|j| {
            aug.get(0, j)
                .homogeneous_degree()
                .map(|d| d as i32)
                .ok_or_else(|| AlgebraError::Contract("generators must be nonzero and homogeneous".into()))
        })
        .collect()
}

/// Attaches twists to a chain of maps starting from `F_0`.
pub fn twist_chain<K: Field>(f0: Vec<i32>, maps: Vec<PolyMatrix<K>>) -> Result<(Vec<GradedFreeModule>, Vec<PolyMatrix<K>>)> {
    let mut modules = vec![GradedFreeModule::new(f0)];
    let mut out = Vec::with_capacity(maps.len());
    for d in maps {
        let rows = modules.last().unwrap().twists.clone();
        let cols = match d.col_twists() {
            Some(c) if d.row_twists() == Some(&rows[..]) => c.to_vec(),
            _ => d.infer_col_twists(&rows, 0)?,
        };
        let d = d.with_twists(rows, cols.clone())?;
        modules.push(GradedFreeModule::new(cols));
        out.push(d);
    }
    Ok((modules, out))
}

/// `... -> B -> A -> F_0 -> C` of length `length`, with `augmentation * A = 0`
/// checked.
pub fn periodic_resolution<K: Field>(
    mf: &MatrixFactorization<K>,
    augmentation: &PolyMatrix<K>,
    length: usize,
    q: &Quotient<K>,
) -> Result<GradedComplex<K>> {
    if augmentation.rows() != 1 || augmentation.cols() != mf.a().rows() {
        return Err(AlgebraError::DimensionMismatch("augmentation must be 1 x rank".into()));
    }
    if !q.is_zero_matrix(&augmentation.mul(mf.a())?) {
        return Err(AlgebraError::Precondition("augmentation is not annihilated by A".into()));
    }
    let maps = (0..length)
        .map(|k| if k % 2 == 0 { mf.a().clone() } else { mf.b().clone() })
        .collect();
    let (modules, maps) = twist_chain(generator_twists(augmentation)?, maps)?;
    let cx = GradedComplex {
        modules,
        maps,
        augmentation: Some(augmentation.clone()),
        period: Some((0, 2)),
        terminates: false,
    };
    cx.verify(q)?;
    Ok(cx)
}

/// Extends `cx` by minimal syzygies until it has `length` maps (or the last
/// kernel is zero).
pub fn extend_by_syzygies<K: Field>(cx: &mut GradedComplex<K>, length: usize, q: &Quotient<K>, opts: &SyzOptions) -> Result<()> {
    while cx.maps.len() < length {
        let last = match cx.maps.last() {
            Some(d) => d.clone(),
            None => {
                let aug = cx
                    .augmentation
                    .clone()
                    .ok_or_else(|| AlgebraError::Precondition("nothing to resolve".into()))?;
                let tw = generator_twists(&aug)?;
                aug.with_twists(vec![0], tw)?
            }
        };
        let syz = syzygies(&last, q, opts)?;
        if !syz.complete {
            return Err(AlgebraError::Infeasible("syzygy computation truncated".into()));
        }
        let d = syz.matrix;
        if d.cols() == 0 {
            cx.terminates = true;
            break;
        }
        let cols = d.col_twists().unwrap().to_vec();
        cx.modules.push(GradedFreeModule::new(cols));
        cx.maps.push(d);
    }
    Ok(())
}

/// Resolution of the ideal generated by `gens` by iterated minimal syzygies.
pub fn computed_resolution<K: Field>(
    gens: &[Polynomial<K>],
    length: usize,
    q: &Quotient<K>,
    opts: &SyzOptions,
) -> Result<GradedComplex<K>> {
    let aug = PolyMatrix::from_rows(q.ring(), vec![gens.to_vec()])?;
    let f0 = generator_twists(&aug)?;
    let mut cx = GradedComplex {
        modules: vec![GradedFreeModule::new(f0)],
        maps: Vec::new(),
        augmentation: Some(aug),
        period: None,
        terminates: false,
    };
    extend_by_syzygies(&mut cx, length, q, opts)?;
    cx.verify(q)?;
    Ok(cx)
}
