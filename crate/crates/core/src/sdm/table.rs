//! Per-class, per-`i` Ext tables for `R_t(X)` beyond the square case.
//! Informational only.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::class::DivisorClass;
use super::classify::{class_resolution, ClassifyConfig};
use crate::detring::{RingCtx, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::Field;
use crate::homology::{ext, ExtEngine, ExtStatus, TargetModule};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableCaps {
    pub max_cells: usize,
    pub max_t: usize,
    pub max_class: i64,
}

impl Default for TableCaps {
    fn default() -> Self {
        TableCaps { max_cells: 9, max_t: 3, max_class: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub class: i64,
    pub i: usize,
    pub status: String,
    pub witness_degree: Option<i32>,
    pub engine: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtTable {
    pub ring: RingKind,
    /// `m + n - 2t + 1`, the predicted exact level.
    pub predicted_level: usize,
    pub flag: String,
    pub rows: Vec<TableRow>,
}

impl ExtTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("class,i,status,witness_degree,engine\n");
        for r in &self.rows {
            let w = r.witness_degree.map(|d| d.to_string()).unwrap_or_default();
            s.push_str(&format!("{},{},{},{},{}\n", r.class, r.i, r.status, w, r.engine));
        }
        s
    }

    /// Whether `Ext^1..Ext^k` all look zero for a class, `None` when a cell
    /// is missing or infeasible.
    pub fn vanishes_through(&self, class: i64, k: usize) -> Option<bool> {
        let mut all = true;
        for i in 1..=k {
            let r = self.rows.iter().find(|r| r.class == class && r.i == i)?;
            match r.status.as_str() {
                "certified_zero" | "zero_up_to_degree" => {}
                "nonzero" => all = false,
                _ => return None,
            }
        }
        Some(all)
    }
}

fn engine_name(e: ExtEngine) -> String {
    match e {
        ExtEngine::Syzygy => "syzygy",
        ExtEngine::Truncated => "truncated",
        ExtEngine::Both => "both",
    }
    .into()
}

fn infeasible_rows(class: i64, i_max: usize, reason: &str, engine: &str) -> Vec<TableRow> {
    (1..=i_max)
        .map(|i| TableRow {
            class,
            i,
            status: format!("infeasible: {reason}"),
            witness_degree: None,
            engine: engine.into(),
        })
        .collect()
}

fn class_rows<K: Field>(ctx: &RingCtx<K>, class: i64, cfg: &ClassifyConfig) -> Vec<TableRow> {
    let engine = engine_name(cfg.ext.engine);
    let cls = DivisorClass::new(ctx.kind(), class);
    let (cx, gens) = match class_resolution(ctx, &cls, cfg.i_max + 1, &cfg.syz) {
        Ok(r) => r,
        Err(e) => return infeasible_rows(class, cfg.i_max, &e.to_string(), &engine),
    };
    let target = match TargetModule::ideal(gens, cls.to_string()) {
        Ok(t) => t,
        Err(e) => return infeasible_rows(class, cfg.i_max, &e.to_string(), &engine),
    };
    (1..=cfg.i_max)
        .map(|i| {
            let (status, witness_degree) = match ext(ctx, &cx, &cls.to_string(), &target, i, &cfg.ext) {
                Ok(r) => match r.status {
                    ExtStatus::NonZero { degree } => ("nonzero".to_string(), Some(degree)),
                    ExtStatus::Infeasible { reason } => (format!("infeasible: {reason}"), None),
                    s => (s.label().to_string(), None),
                },
                Err(e) => (format!("infeasible: {e}"), None),
            };
            TableRow { class, i, status, witness_degree, engine: engine.clone() }
        })
        .collect()
}

/// Ext statuses of `C` against itself for each class and `1 <= i <= i_max`.
/// Classes run in parallel; a class beyond the caps gets infeasible cells.
pub fn ext_table<K: Field>(m: usize, n: usize, t: usize, classes: &[i64], cfg: &ClassifyConfig, caps: &TableCaps) -> Result<ExtTable> {
    if m * n > caps.max_cells || t > caps.max_t {
        return Err(AlgebraError::Infeasible(format!("{m}x{n} with t={t} is beyond the table caps")));
    }
    let ctx: RingCtx<K> = RingCtx::determinantal(m, n, t)?;
    let engine = engine_name(cfg.ext.engine);
    let per_class: Vec<Vec<TableRow>> = classes
        .par_iter()
        .map(|&c| {
            if c.abs() > caps.max_class {
                infeasible_rows(c, cfg.i_max, "class beyond cap", &engine)
            } else {
                class_rows(&ctx, c, cfg)
            }
        })
        .collect();
    Ok(ExtTable {
        ring: ctx.kind(),
        predicted_level: (m + n + 1).saturating_sub(2 * t),
        flag: "conjecture evidence".into(),
        rows: per_class.into_iter().flatten().collect(),
    })
}

/// Whether a set of classes is closed under sums and negatives, as far as
/// the computed classes can tell; `None` when the answer lies outside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureEvidence {
    pub members: Vec<i64>,
    pub computed: Vec<i64>,
    pub closed_under_sums: Option<bool>,
    pub closed_under_negation: Option<bool>,
}

pub fn closure_evidence(members: &[i64], computed: &[i64]) -> ClosureEvidence {
    let decide = |targets: Vec<i64>| -> Option<bool> {
        let mut undecided = false;
        for v in targets {
            if computed.contains(&v) {
                if !members.contains(&v) {
                    return Some(false);
                }
            } else {
                undecided = true;
            }
        }
        (!undecided).then_some(true)
    };
    let sums = members.iter().flat_map(|a| members.iter().map(move |b| a + b)).collect();
    let negs = members.iter().map(|a| -a).collect();
    ClosureEvidence {
        members: members.to_vec(),
        computed: computed.to_vec(),
        closed_under_sums: decide(sums),
        closed_under_negation: decide(negs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::F32003;

    #[test]
    fn square_table_matches_the_two_by_two_pattern() {
        let t = ext_table::<F32003>(2, 2, 2, &[0, 1], &ClassifyConfig::syzygy(3), &TableCaps::default()).unwrap();
        assert_eq!(t.predicted_level, 1);
        assert_eq!(t.flag, "conjecture evidence");
        assert_eq!(t.vanishes_through(0, 3), Some(true));
        assert_eq!(t.vanishes_through(1, 1), Some(true));
        assert_eq!(t.vanishes_through(1, 2), Some(false));
        let csv = t.to_csv();
        assert!(csv.starts_with("class,i,status,witness_degree,engine\n"));
        assert!(csv.contains("1,2,nonzero,"));
    }

    #[test]
    fn caps() {
        let cfg = ClassifyConfig::syzygy(2);
        assert!(ext_table::<F32003>(3, 4, 2, &[1], &cfg, &TableCaps::default()).is_err());
        let t = ext_table::<F32003>(2, 2, 2, &[5], &cfg, &TableCaps::default()).unwrap();
        assert!(t.rows.iter().all(|r| r.status.starts_with("infeasible")));
        assert_eq!(t.vanishes_through(5, 1), None);
    }

    #[test]
    fn closure() {
        let e = closure_evidence(&[0], &[-2, -1, 0, 1, 2]);
        assert_eq!(e.closed_under_sums, Some(true));
        assert_eq!(e.closed_under_negation, Some(true));
        let e = closure_evidence(&[0, 1], &[-1, 0, 1]);
        assert_eq!(e.closed_under_sums, None);
        assert_eq!(e.closed_under_negation, Some(false));
    }
}
