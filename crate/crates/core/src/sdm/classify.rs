//! Deciding how far a divisor class is semidualizing, keeping certified
//! answers apart from truncated evidence.

use serde::{Deserialize, Serialize};

use super::class::{realize, DivisorClass};
use crate::detring::{RingCtx, RingKind};
use crate::error::Result;
use crate::exact_algebra::{Field, Polynomial};
use crate::groebner::{colon_ideal, ideal_eq, ideal_product, SyzOptions};
use crate::homology::{default_bound, ext, hom_matches_ring, ExtConfig, ExtReport, ExtStatus, TargetModule};
use crate::matfac_res::{computed_resolution, resolution_hypersurface, resolution_p_power, GradedComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Every Ext up to `i_max` certified zero.
    Certified,
    /// Some vanishing only checked up to this piece degree.
    Truncated { bound: i32 },
    /// A computation hit a cap.
    Infeasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Ext^1..Ext^n certified zero, Ext^(n+1) nonzero, End(C) = R.
    Exactly { n: usize },
    /// Ext^1..Ext^n look zero; `fails_at` is the first nonzero Ext found
    /// after evidence-only zeros.
    AtLeast { n: usize, evidence: Evidence, fails_at: Option<usize> },
    NotZeroSemidualizing,
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::Exactly { n } => format!("exactly {n}-semidualizing"),
            Verdict::AtLeast { n, evidence: Evidence::Certified, .. } => format!("at least {n}-semidualizing (certified)"),
            Verdict::AtLeast { n, evidence: Evidence::Truncated { bound }, .. } => {
                format!("at least {n}-semidualizing up to evidence level (truncated at degree {bound})")
            }
            Verdict::AtLeast { n, .. } => format!("at least {n}-semidualizing up to evidence level (infeasible beyond)"),
            Verdict::NotZeroSemidualizing => "not 0-semidualizing".into(),
        }
    }

    /// Largest `k` known to hold with certainty.
    pub fn certified_level(&self) -> Option<usize> {
        match self {
            Verdict::Exactly { n } | Verdict::AtLeast { n, evidence: Evidence::Certified, .. } => Some(*n),
            Verdict::AtLeast { .. } => Some(0),
            Verdict::NotZeroSemidualizing => None,
        }
    }
}

/// `End(C) = R`, certified by `(aC : C) = (a)`, and graded dimensions of
/// `Hom(C, C)` against `R` up to a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCheck {
    pub certified: bool,
    pub graded_match: bool,
    pub bound: i32,
}

/// `ann C = 0`, `End(C) = R` and the first `i_max` Ext statuses.
pub fn verdict(ann_zero: bool, hom_is_ring: bool, statuses: &[ExtStatus]) -> Verdict {
    if !ann_zero || !hom_is_ring {
        return Verdict::NotZeroSemidualizing;
    }
    let mut evidence = Evidence::Certified;
    for (k, s) in statuses.iter().enumerate() {
        match s {
            ExtStatus::CertifiedZero => {}
            ExtStatus::ZeroUpToDegree { bound } => {
                if evidence == Evidence::Certified {
                    evidence = Evidence::Truncated { bound: *bound };
                }
            }
            ExtStatus::NonZero { .. } => {
                return if evidence == Evidence::Certified {
                    Verdict::Exactly { n: k }
                } else {
                    Verdict::AtLeast { n: k, evidence, fails_at: Some(k + 1) }
                };
            }
            ExtStatus::Infeasible { .. } => return Verdict::AtLeast { n: k, evidence: Evidence::Infeasible, fails_at: None },
        }
    }
    Verdict::AtLeast { n: statuses.len(), evidence, fails_at: None }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub i_max: usize,
    pub ext: ExtConfig,
    /// Piece-degree bound for the graded Hom check; a ring default when
    /// absent.
    pub hom_bound: Option<i32>,
    pub syz: SyzOptions,
}

impl ClassifyConfig {
    pub fn syzygy(i_max: usize) -> Self {
        ClassifyConfig { i_max, ext: ExtConfig::syzygy(), hom_bound: None, syz: SyzOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SdmReport {
    pub ring: String,
    pub class: DivisorClass,
    pub generators: Vec<String>,
    pub ann_zero: bool,
    pub hom: HomCheck,
    pub ext: Vec<ExtReport>,
    pub verdict: Verdict,
    pub verdict_label: String,
}

impl SdmReport {
    pub fn recompute_verdict(&self) -> Verdict {
        let statuses: Vec<ExtStatus> = self.ext.iter().map(|r| r.status.clone()).collect();
        verdict(self.ann_zero, self.hom.certified, &statuses)
    }
}

fn default_hom_bound(kind: RingKind, value: i64) -> i32 {
    match kind {
        RingKind::Determinantal { n, .. } => default_bound(n, value.unsigned_abs() as usize),
        RingKind::Hypersurface { n } => 2 * n as i32 + 2,
    }
}

/// A resolution of the realized ideal with `length` maps, and the
/// generators it resolves.
pub fn class_resolution<K: Field>(
    ctx: &RingCtx<K>,
    cls: &DivisorClass,
    length: usize,
    opts: &SyzOptions,
) -> Result<(GradedComplex<K>, Vec<Polynomial<K>>)> {
    let q = ctx.quotient();
    let cx = match ctx.kind() {
        RingKind::Determinantal { m, n, t } if m == n && n == t && cls.value > 0 => {
            resolution_p_power(ctx, cls.value as usize, length, opts)?
        }
        RingKind::Hypersurface { .. } if !cls.is_zero() => resolution_hypersurface(ctx, cls.value as u32, length)?,
        _ => computed_resolution(&realize(ctx, cls)?, length, q, opts)?,
    };
    let gens = cx.augmentation.as_ref().expect("resolutions carry their augmentation").row(0);
    Ok((cx, gens))
}

/// `ann C = 0`.
pub fn annihilator_is_zero<K: Field>(ctx: &RingCtx<K>, gens: &[Polynomial<K>]) -> Result<bool> {
    let ann = colon_ideal(&[Polynomial::zero(ctx.ring())], gens, ctx.quotient())?;
    Ok(ann.iter().all(|f| ctx.is_zero(f)))
}

/// `End(C) = R` via `(aC : C) = (a)` for a nonzero `a in C`.
pub fn endomorphisms_are_ring<K: Field>(ctx: &RingCtx<K>, gens: &[Polynomial<K>]) -> Result<bool> {
    let a = gens.iter().find(|g| !ctx.is_zero(g)).cloned();
    let Some(a) = a else { return Ok(false) };
    let ac = ideal_product(std::slice::from_ref(&a), gens, ctx.quotient());
    let end = colon_ideal(&ac, gens, ctx.quotient())?;
    ideal_eq(&end, &[a], ctx.quotient())
}

pub fn classify_sdm<K: Field>(ctx: &RingCtx<K>, cls: &DivisorClass, cfg: &ClassifyConfig) -> Result<SdmReport> {
    let (cx, gens) = class_resolution(ctx, cls, cfg.i_max + 1, &cfg.syz)?;
    let label = cls.to_string();
    let target = TargetModule::ideal(gens.clone(), label.clone())?;
    let ann_zero = annihilator_is_zero(ctx, &gens)?;
    let bound = cfg.hom_bound.unwrap_or_else(|| default_hom_bound(ctx.kind(), cls.value));
    let hom = HomCheck {
        certified: endomorphisms_are_ring(ctx, &gens)?,
        graded_match: hom_matches_ring(ctx, &cx, &target, bound)?,
        bound,
    };
    let mut reports = Vec::with_capacity(cfg.i_max);
    for i in 1..=cfg.i_max {
        let r = ext(ctx, &cx, &label, &target, i, &cfg.ext)?;
        let stop = r.status.is_nonzero() || matches!(r.status, ExtStatus::Infeasible { .. });
        reports.push(r);
        if stop && cfg.ext.engine != crate::homology::ExtEngine::Truncated {
            break;
        }
    }
    let statuses: Vec<ExtStatus> = reports.iter().map(|r| r.status.clone()).collect();
    let v = verdict(ann_zero, hom.certified, &statuses);
    Ok(SdmReport {
        ring: ctx.kind().to_string(),
        class: *cls,
        generators: gens.iter().map(|f| f.to_string()).collect(),
        ann_zero,
        hom,
        ext: reports,
        verdict: v,
        verdict_label: v.label(),
    })
}
