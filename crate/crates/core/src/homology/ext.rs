//! `Ext^i(C, M)` for an ideal `M`: cocycles as syzygies, coboundaries by
//! module membership (the syzygy engine), or graded dimensions up to a
//! bound (the truncated engine).

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::complexes::{hom_complex, CoefficientComplex};
use super::target::{TargetKind, TargetModule};
use super::truncated::{truncated_homology, DegreeDim};
use crate::detring::RingCtx;
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};
use crate::groebner::{lift_ideal, syzygies, Membership, ModuleBasis, ModuleOptions, SyzOptions};
use crate::matfac_res::GradedComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtStatus {
    /// Every cocycle generator is a coboundary.
    CertifiedZero,
    /// All graded pieces vanish up to the bound; nothing is claimed beyond.
    ZeroUpToDegree { bound: i32 },
    /// A verified cocycle that is not a coboundary, in this degree.
    NonZero { degree: i32 },
    /// A cap was hit before a decision.
    Infeasible { reason: String },
}

impl ExtStatus {
    pub fn is_certified_zero(&self) -> bool {
        matches!(self, ExtStatus::CertifiedZero)
    }

    pub fn is_nonzero(&self) -> bool {
        matches!(self, ExtStatus::NonZero { .. })
    }

    /// Zero, certified or up to a bound.
    pub fn looks_zero(&self) -> bool {
        matches!(self, ExtStatus::CertifiedZero | ExtStatus::ZeroUpToDegree { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ExtStatus::CertifiedZero => "certified_zero",
            ExtStatus::ZeroUpToDegree { .. } => "zero_up_to_degree",
            ExtStatus::NonZero { .. } => "nonzero",
            ExtStatus::Infeasible { .. } => "infeasible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtEngine {
    Syzygy,
    Truncated,
    /// Syzygy status plus truncated dimensions.
    Both,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtConfig {
    pub engine: ExtEngine,
    /// Largest internal degree of a coefficient piece for the truncated
    /// engine.
    pub bound: i32,
    pub step_cap: Option<u64>,
}

impl ExtConfig {
    pub fn syzygy() -> Self {
        ExtConfig { engine: ExtEngine::Syzygy, bound: 0, step_cap: None }
    }

    pub fn truncated(bound: i32) -> Self {
        ExtConfig { engine: ExtEngine::Truncated, bound, step_cap: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtReport {
    pub ring: String,
    pub module: String,
    pub i: usize,
    pub status: ExtStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub dims: Vec<DegreeDim>,
    pub engine: ExtEngine,
    pub wall_time_ms: u128,
}

/// Outcome of the syzygy engine at one position.
#[derive(Clone, Debug)]
pub struct SyzygyExt<K: Field> {
    pub status: ExtStatus,
    pub witness: Option<Vec<Polynomial<K>>>,
    pub cocycle_generators: usize,
}

/// Block sum of `s` copies of the generator row: `M^r` as the image of
/// `R^(r s)`, twisted to fit position `i`.
fn generator_blocks<K: Field>(ctx: &RingCtx<K>, cc: &CoefficientComplex<K>, i: usize) -> Result<PolyMatrix<K>> {
    let row = cc.target.generator_row(ctx)?;
    let degs = cc.target.gen_degrees();
    let shifts = cc.shifts[i].clone();
    let cols = shifts.iter().flat_map(|s| degs.iter().map(move |g| s + g)).collect();
    let mut e = row.direct_sum_power(shifts.len());
    e = e.with_twists(shifts, cols)?;
    Ok(e)
}

fn twisted_product<K: Field>(a: &PolyMatrix<K>, b: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
    let rows = a.row_twists().unwrap().to_vec();
    let cols = b.col_twists().unwrap().to_vec();
    a.mul(b)?.with_twists(rows, cols)
}

/// Whether `v in M^(r_i)` is a cocycle, and whether it is a coboundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub in_module: bool,
    pub cocycle: bool,
    pub coboundary: bool,
}

impl WitnessCheck {
    /// A cocycle representing a nonzero class.
    pub fn nonzero_class(&self) -> bool {
        self.in_module && self.cocycle && !self.coboundary
    }
}

fn coboundary_basis<K: Field>(ctx: &RingCtx<K>, cc: &CoefficientComplex<K>, i: usize, step_cap: Option<u64>) -> Result<Option<ModuleBasis<K>>> {
    let Some((p, m)) = cc.incoming(i)? else { return Ok(None) };
    let b = twisted_product(m, &generator_blocks(ctx, cc, p)?)?;
    let basis = ModuleBasis::new(&b, ctx.quotient(), &ModuleOptions { step_cap, ..Default::default() })?;
    if !basis.complete() {
        return Err(AlgebraError::Infeasible("coboundary module basis hit the step cap".into()));
    }
    Ok(Some(basis))
}

fn is_cocycle<K: Field>(ctx: &RingCtx<K>, cc: &CoefficientComplex<K>, i: usize, v: &[Polynomial<K>]) -> Result<bool> {
    Ok(match cc.outgoing(i)? {
        Some(m) => m.apply(v)?.iter().all(|f| ctx.is_zero(f)),
        None => true,
    })
}

/// Checks a proposed representative at position `i`.
pub fn check_witness<K: Field>(ctx: &RingCtx<K>, cc: &CoefficientComplex<K>, i: usize, v: &[Polynomial<K>]) -> Result<WitnessCheck> {
    if cc.target.kind != TargetKind::Ideal {
        return Err(AlgebraError::Precondition("witness checks need an ideal as coefficient module".into()));
    }
    if v.len() != cc.rank(i) {
        return Err(AlgebraError::DimensionMismatch(format!("vector of length {} at rank {}", v.len(), cc.rank(i))));
    }
    let ideal = lift_ideal(&cc.target.gens, ctx.quotient())?;
    let mut in_module = true;
    for f in v {
        in_module &= ideal.contains(f)?;
    }
    let cocycle = is_cocycle(ctx, cc, i, v)?;
    let coboundary = match coboundary_basis(ctx, cc, i, None)? {
        Some(b) => b.member(v)?.is_member(),
        None => v.iter().all(|f| ctx.is_zero(f)),
    };
    Ok(WitnessCheck { in_module, cocycle, coboundary })
}

/// The syzygy engine at position `i`.
pub fn ext_syzygy<K: Field>(ctx: &RingCtx<K>, cc: &CoefficientComplex<K>, i: usize, step_cap: Option<u64>) -> Result<SyzygyExt<K>> {
    if cc.target.kind != TargetKind::Ideal {
        return Err(AlgebraError::Precondition("the syzygy engine needs an ideal as coefficient module".into()));
    }
    let q = ctx.quotient();
    let e = generator_blocks(ctx, cc, i)?;
    let infeasible = |reason: String| SyzygyExt { status: ExtStatus::Infeasible { reason }, witness: None, cocycle_generators: 0 };
    let z = match cc.outgoing(i)? {
        Some(m) => {
            let me = twisted_product(m, &e)?;
            let syz = match syzygies(&me, q, &SyzOptions { step_cap, ..Default::default() }) {
                Ok(s) => s,
                Err(AlgebraError::Infeasible(r)) => return Ok(infeasible(r)),
                Err(err) => return Err(err),
            };
            if !syz.complete {
                return Ok(infeasible("cocycle syzygies hit the step cap".into()));
            }
            syz.matrix
        }
        None => PolyMatrix::identity(ctx.ring(), e.cols()).with_twists(e.col_twists().unwrap().to_vec(), e.col_twists().unwrap().to_vec())?,
    };
    let degrees = z.col_twists().unwrap().to_vec();
    let mut cocycles: Vec<(i32, Vec<Polynomial<K>>)> = Vec::new();
    for (k, u) in z.columns().into_iter().enumerate() {
        let v: Vec<Polynomial<K>> = e.apply(&u)?.iter().map(|f| ctx.nf(f)).collect();
        if v.iter().any(|f| !f.is_zero()) {
            cocycles.push((degrees[k], v));
        }
    }
    cocycles.sort_by_key(|c| c.0);
    let n = cocycles.len();
    let basis = match coboundary_basis(ctx, cc, i, step_cap) {
        Ok(b) => b,
        Err(AlgebraError::Infeasible(r)) => return Ok(infeasible(r)),
        Err(err) => return Err(err),
    };
    for (deg, v) in cocycles {
        let member = match &basis {
            Some(b) => matches!(b.member(&v)?, Membership::Member { .. }),
            None => false,
        };
        if !member {
            if !is_cocycle(ctx, cc, i, &v)? {
                return Err(AlgebraError::Contract("syzygy engine produced a non-cocycle".into()));
            }
            return Ok(SyzygyExt { status: ExtStatus::NonZero { degree: deg }, witness: Some(v), cocycle_generators: n });
        }
    }
    Ok(SyzygyExt { status: ExtStatus::CertifiedZero, witness: None, cocycle_generators: n })
}

/// Default bound `l(n-1) + 2n` for `p^l` over `R_n(X)`.
pub fn default_bound(n: usize, l: usize) -> i32 {
    (l * (n - 1) + 2 * n) as i32
}

/// `Ext^i(C, M)` where `cx` resolves `C` (with at least `i + 1` maps).
pub fn ext<K: Field>(
    ctx: &RingCtx<K>,
    cx: &GradedComplex<K>,
    module_label: &str,
    target: &TargetModule<K>,
    i: usize,
    cfg: &ExtConfig,
) -> Result<ExtReport> {
    let start = Instant::now();
    if cx.terminates && i >= cx.modules.len() {
        // F_i = 0
        return Ok(ExtReport {
            ring: ctx.kind().to_string(),
            module: module_label.to_string(),
            i,
            status: ExtStatus::CertifiedZero,
            witness: None,
            dims: Vec::new(),
            engine: cfg.engine,
            wall_time_ms: start.elapsed().as_millis(),
        });
    }
    let cc = hom_complex(cx, target)?;
    let mut dims = Vec::new();
    let mut status = None;
    let mut witness = None;
    if matches!(cfg.engine, ExtEngine::Syzygy | ExtEngine::Both) {
        let s = ext_syzygy(ctx, &cc, i, cfg.step_cap)?;
        witness = s.witness;
        status = Some(s.status);
    }
    if matches!(cfg.engine, ExtEngine::Truncated | ExtEngine::Both) {
        let h = truncated_homology(ctx, &cc, i, cfg.bound)?;
        dims = h.iter().map(|p| DegreeDim { degree: p.degree, dim: p.dim }).collect();
        if status.is_none() {
            status = Some(match h.iter().find(|p| p.dim > 0) {
                Some(p) => {
                    witness = p.witness.clone();
                    ExtStatus::NonZero { degree: p.degree }
                }
                None => ExtStatus::ZeroUpToDegree { bound: cfg.bound },
            });
        }
    }
    Ok(ExtReport {
        ring: ctx.kind().to_string(),
        module: module_label.to_string(),
        i,
        status: status.unwrap(),
        witness: witness.map(|w| w.iter().map(|f| f.to_string()).collect()),
        dims,
        engine: cfg.engine,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Truncated dimensions of `Hom(C, M)` against `dim R_d`: the natural map
/// `R -> Hom(C, C)` is onto in degrees up to the bound.
pub fn hom_matches_ring<K: Field>(ctx: &RingCtx<K>, cx: &GradedComplex<K>, target: &TargetModule<K>, bound: i32) -> Result<bool> {
    let cc = hom_complex(cx, target)?;
    let h = truncated_homology(ctx, &cc, 0, bound)?;
    Ok(h.iter().filter(|p| p.degree <= bound).all(|p| {
        let want = if p.degree < 0 { 0 } else { ctx.dim_piece(p.degree as u32) };
        p.dim == want
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::F32003;
    use crate::matfac_res::{resolution_hypersurface, resolution_p_power};

    fn p_target(cx: &GradedComplex<F32003>) -> TargetModule<F32003> {
        TargetModule::ideal(cx.augmentation.clone().unwrap().row(0), "p").unwrap()
    }

    #[test]
    fn parity_for_p_over_two_by_two() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let cx = resolution_p_power(&ctx, 1, 5, &SyzOptions::default()).unwrap();
        let cc = hom_complex(&cx, &p_target(&cx)).unwrap();
        for i in 1..=4 {
            let s = ext_syzygy(&ctx, &cc, i, None).unwrap();
            assert_eq!(s.status.is_certified_zero(), i % 2 == 1, "i={i}");
            if i % 2 == 0 {
                let w = s.witness.unwrap();
                assert!(check_witness(&ctx, &cc, i, &w).unwrap().nonzero_class());
            }
        }
    }

    #[test]
    fn engines_agree_on_small_cases() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let cx = resolution_p_power(&ctx, 2, 4, &SyzOptions::default()).unwrap();
        let t = p_target(&cx);
        for i in 1..=3 {
            let cfg = ExtConfig { engine: ExtEngine::Both, bound: 6, step_cap: None };
            let r = ext(&ctx, &cx, "p^2", &t, i, &cfg).unwrap();
            let any = r.dims.iter().any(|d| d.dim > 0);
            assert_eq!(r.status.is_certified_zero(), !any, "i={i}");
        }
    }

    #[test]
    fn hypersurface_hom_into_r_is_exact() {
        let ctx: RingCtx<F32003> = RingCtx::hypersurface(3).unwrap();
        let cx = resolution_hypersurface(&ctx, 1, 4).unwrap();
        let cc = hom_complex(&cx, &TargetModule::ring(&ctx)).unwrap();
        for i in 1..=3 {
            assert!(ext_syzygy(&ctx, &cc, i, None).unwrap().status.is_certified_zero());
        }
    }

    #[test]
    fn hypersurface_odd_witness() {
        let ctx: RingCtx<F32003> = RingCtx::hypersurface(3).unwrap();
        let cx = resolution_hypersurface(&ctx, 1, 4).unwrap();
        let t = TargetModule::ideal(cx.augmentation.clone().unwrap().row(0), "(x,z)").unwrap();
        let cc = hom_complex(&cx, &t).unwrap();
        let v = vec![ctx.parse("Z^2").unwrap(), ctx.parse("X").unwrap()];
        assert!(check_witness(&ctx, &cc, 1, &v).unwrap().nonzero_class());
        let not = vec![ctx.parse("X").unwrap(), ctx.parse("Z").unwrap()];
        assert!(!check_witness(&ctx, &cc, 1, &not).unwrap().nonzero_class());
        assert!(hom_matches_ring(&ctx, &cx, &t, 6).unwrap());
    }

    #[test]
    fn report_serializes() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let cx = resolution_p_power(&ctx, 1, 3, &SyzOptions::default()).unwrap();
        let r = ext(&ctx, &cx, "p", &p_target(&cx), 2, &ExtConfig::syzygy()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["status"]["kind"], "non_zero");
        assert_eq!(j["engine"], "syzygy");
        assert!(j["witness"].is_array());
    }
}
