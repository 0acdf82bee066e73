use super::target::TargetModule;
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix};
use crate::matfac_res::GradedComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `Hom(F, M)`: position `i` maps to `i + 1` by `d_(i+1)^T`.
    Hom,
    /// `F (x) M`: position `i` maps to `i - 1` by `d_i`.
    Tensor,
}

/// `Hom(F, M)` or `F (x) M` for a free resolution `F` and coefficient module
/// `M`. Position `i` is `M^(r_i)`; block `a` in degree `d` is the piece
/// `M_(d - shifts[i][a])`.
#[derive(Clone, Debug)]
pub struct CoefficientComplex<K: Field> {
    pub variance: Variance,
    pub target: TargetModule<K>,
    pub shifts: Vec<Vec<i32>>,
    /// `delta[i]` is the differential leaving position `i` (a matrix acting on
    /// columns), absent where the resolution stops.
    pub delta: Vec<Option<PolyMatrix<K>>>,
    /// Missing differentials are zero rather than unknown.
    pub terminates: bool,
}

impl<K: Field> CoefficientComplex<K> {
    pub fn positions(&self) -> usize {
        self.shifts.len()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.shifts[i].len()
    }

    /// Position receiving the differential from `i`, if any.
    pub fn next(&self, i: usize) -> Option<usize> {
        match self.variance {
            Variance::Hom => (i + 1 < self.positions()).then_some(i + 1),
            Variance::Tensor => i.checked_sub(1),
        }
    }

    /// Position whose differential lands in `i`.
    pub fn prev(&self, i: usize) -> Option<usize> {
        match self.variance {
            Variance::Hom => i.checked_sub(1),
            Variance::Tensor => (i + 1 < self.positions()).then_some(i + 1),
        }
    }

    /// The outgoing map at `i`; `Ok(None)` when it is the zero map to
    /// nothing, an error when the resolution is too short to know it.
    pub fn outgoing(&self, i: usize) -> Result<Option<&PolyMatrix<K>>> {
        if i >= self.positions() {
            return Err(AlgebraError::OutOfRange(format!("position {i} of {}", self.positions())));
        }
        match (&self.delta[i], self.variance) {
            (Some(d), _) => Ok(Some(d)),
            (None, Variance::Tensor) if i == 0 => Ok(None),
            (None, _) if self.terminates => Ok(None),
            _ => Err(AlgebraError::Precondition(format!(
                "resolution too short for homology at position {i}"
            ))),
        }
    }

    /// The incoming map at `i` and its source position.
    pub fn incoming(&self, i: usize) -> Result<Option<(usize, &PolyMatrix<K>)>> {
        match self.variance {
            Variance::Hom => match i.checked_sub(1) {
                None => Ok(None),
                Some(p) => Ok(self.delta[p].as_ref().map(|d| (p, d))),
            },
            Variance::Tensor => {
                let p = i + 1;
                match self.delta.get(p).and_then(|d| d.as_ref()) {
                    Some(d) => Ok(Some((p, d))),
                    None if self.terminates => Ok(None),
                    None => Err(AlgebraError::Precondition(format!(
                        "resolution too short for homology at position {i}"
                    ))),
                }
            }
        }
    }
}

/// `Hom(F, M)`: transposed maps, negated twists.
pub fn hom_complex<K: Field>(cx: &GradedComplex<K>, target: &TargetModule<K>) -> Result<CoefficientComplex<K>> {
    check_ring(cx, target)?;
    let shifts: Vec<Vec<i32>> = cx.modules.iter().map(|m| m.twists.iter().map(|t| -t).collect()).collect();
    let mut delta = Vec::with_capacity(shifts.len());
    for i in 0..shifts.len() {
        delta.push(match cx.maps.get(i) {
            Some(d) => Some(d.transpose().with_twists(shifts[i + 1].clone(), shifts[i].clone())?),
            None => None,
        });
    }
    Ok(CoefficientComplex { variance: Variance::Hom, target: target.clone(), shifts, delta, terminates: cx.terminates })
}

/// `F (x) M`: the maps themselves.
pub fn tensor_complex<K: Field>(cx: &GradedComplex<K>, target: &TargetModule<K>) -> Result<CoefficientComplex<K>> {
    check_ring(cx, target)?;
    let shifts: Vec<Vec<i32>> = cx.modules.iter().map(|m| m.twists.clone()).collect();
    let mut delta = vec![None];
    for d in &cx.maps {
        delta.push(Some(d.clone()));
    }
    Ok(CoefficientComplex { variance: Variance::Tensor, target: target.clone(), shifts, delta, terminates: cx.terminates })
}

fn check_ring<K: Field>(cx: &GradedComplex<K>, target: &TargetModule<K>) -> Result<()> {
    let ring = match (cx.maps.first(), &cx.augmentation) {
        (Some(d), _) => d.ring(),
        (None, Some(e)) => e.ring(),
        _ => return Ok(()),
    };
    if target.gens.iter().any(|g| !std::sync::Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring) {
        return Err(AlgebraError::IncompatibleContext("complex and coefficient module live over different rings".into()));
    }
    Ok(())
}
