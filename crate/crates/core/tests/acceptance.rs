//! Acceptance suite: one line per criterion with its verdict and time.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use sdmkit_core::detring::{
    all_plucker_indices, check_colon, check_nonzerodivisor, cofactor_identity, enumerate_std_monomials, generic_matrix,
    plucker_relation, CofactorIndices, PosetPi, RingCtx,
};
use sdmkit_core::exact_algebra::{Rational, F32003};
use sdmkit_core::groebner::{ideal_eq, ideal_power, SyzOptions};
use sdmkit_core::homology::{
    check_witness, ext_syzygy, hom_complex, hom_matches_ring, CoefficientComplex, ExtStatus, TargetModule,
};
use sdmkit_core::matfac_res::{
    gamma_matrix, matfac_det, matfac_hypersurface, presentation_p_power, resolution_hypersurface, resolution_p_power,
};
use sdmkit_core::sdm::{
    classify_sdm, ext_table, p_ideal, power_is_symbolic, realize, verify_difference, verify_sum, ClassifyConfig,
    DivisorClass, TableCaps, Verdict,
};

type K = F32003;

/// Every comparison below is exact (polynomial identities, ideal equality,
/// certified membership); these are the wall-clock budgets.
const BUDGET_1: Duration = Duration::from_secs(5);
const BUDGET_2: Duration = Duration::from_secs(1);
const BUDGET_3: Duration = Duration::from_secs(600);
const BUDGET_4: Duration = Duration::from_secs(300);
const BUDGET_5: Duration = Duration::from_secs(1800);
const BUDGET_6: Duration = Duration::from_secs(7200);
const BUDGET_7: Duration = Duration::from_secs(120);
const BUDGET_8: Duration = Duration::from_secs(300);
const BUDGET_9: Duration = Duration::from_secs(60);
const BUDGET_10: Duration = Duration::from_secs(300);
const BUDGET_11: Duration = Duration::from_secs(7200);

/// Truncation bound for graded Hom comparisons on the hypersurfaces.
const HOM_BOUND: i32 = 12;
/// Largest degree for the basis cross-check.
const BASIS_DEGREE: usize = 6;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn criterion(k: usize, name: &str, budget: Duration, blocking: bool, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let t = start.elapsed();
    let ok = o.ok && t <= budget;
    let tag = match (ok, blocking) {
        (true, _) => "PASS",
        (false, true) => "FAIL",
        (false, false) => "INFO",
    };
    println!("criterion {k:>2} [{tag}] {name}: {} ({:.2?} of {:?})", o.detail, t, budget);
    ok || !blocking
}

fn p_power_complex(ctx: &RingCtx<K>, l: usize, imax: usize) -> (CoefficientComplex<K>, TargetModule<K>) {
    let cx = resolution_p_power(ctx, l, imax + 1, &SyzOptions::default()).unwrap();
    let t = TargetModule::ideal(cx.augmentation.clone().unwrap().row(0), "p^l").unwrap();
    (hom_complex(&cx, &t).unwrap(), t)
}

/// Status at each `i`, and whether a nonzero status carries a witness that
/// re-checks as a cocycle outside the coboundaries.
fn statuses(ctx: &RingCtx<K>, cc: &CoefficientComplex<K>, imax: usize) -> Vec<(ExtStatus, bool)> {
    (1..=imax)
        .map(|i| {
            let s = ext_syzygy(ctx, cc, i, None).unwrap();
            let verified = match &s.witness {
                Some(w) => check_witness(ctx, cc, i, w).unwrap().nonzero_class(),
                None => false,
            };
            (s.status, verified)
        })
        .collect()
}

fn matfac_identities() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n).unwrap();
        if !matfac_det(&ctx).unwrap().verify() {
            return outcome(false, format!("det n={n}"));
        }
        count += 1;
    }
    for n in 2..=6u32 {
        let ctx: RingCtx<K> = RingCtx::hypersurface(n).unwrap();
        for m in 1..n {
            if !matfac_hypersurface(&ctx, m).unwrap().verify() {
                return outcome(false, format!("hypersurface n={n} m={m}"));
            }
            count += 1;
        }
    }
    outcome(true, format!("{count} factorizations with AB = BA = fI"))
}

fn displayed_matrices() -> Outcome {
    let z = "0";
    let want3 = [
        ["x[1,1]", "-x[2,1]", "x[3,1]", z, z, z, z, z, z],
        ["-x[1,2]", "x[2,2]", "-x[3,2]", "x[1,1]", "-x[2,1]", "x[3,1]", z, z, z],
        ["x[1,3]", "-x[2,3]", "x[3,3]", z, z, z, "x[1,1]", "-x[2,1]", "x[3,1]"],
        [z, z, z, "-x[1,2]", "x[2,2]", "-x[3,2]", z, z, z],
        [z, z, z, "x[1,3]", "-x[2,3]", "x[3,3]", "-x[1,2]", "x[2,2]", "-x[3,2]"],
        [z, z, z, z, z, z, "x[1,3]", "-x[2,3]", "x[3,3]"],
    ];
    let want2 = [
        ["x[1,1]", "-x[2,1]", z, z, z, z],
        ["-x[1,2]", "x[2,2]", "x[1,1]", "-x[2,1]", z, z],
        [z, z, "-x[1,2]", "x[2,2]", "x[1,1]", "-x[2,1]"],
        [z, z, z, z, "-x[1,2]", "x[2,2]"],
    ];
    let r3: RingCtx<Rational> = RingCtx::gorenstein(3).unwrap();
    let r2: RingCtx<Rational> = RingCtx::gorenstein(2).unwrap();
    let g3 = gamma_matrix(&r3, 2).unwrap().gamma.to_string_rows();
    let g2 = gamma_matrix(&r2, 3).unwrap().gamma.to_string_rows();
    let ok3 = g3 == want3.map(|r| r.map(String::from).to_vec()).to_vec();
    let ok2 = g2 == want2.map(|r| r.map(String::from).to_vec()).to_vec();
    outcome(ok3 && ok2, format!("n=3 l=2: {ok3}, n=2 l=3: {ok2}"))
}

fn presentation_exactness() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, l) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n).unwrap();
        let (_, cert) = presentation_p_power(&ctx, l, None).unwrap();
        ok &= cert.exact();
        parts.push(format!("({n},{l}) {}", cert.exact()));
    }
    outcome(ok, parts.join(", "))
}

fn parity_two_by_two() -> Outcome {
    let ctx: RingCtx<K> = RingCtx::gorenstein(2).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for l in 1..=3 {
        let (cc, _) = p_power_complex(&ctx, l, 5);
        let st = statuses(&ctx, &cc, 5);
        for (k, (s, verified)) in st.iter().enumerate() {
            let i = k + 1;
            ok &= if i % 2 == 1 { s.is_certified_zero() } else { s.is_nonzero() && *verified };
        }
        parts.push(format!("l={l} [{}]", st.iter().map(|(s, _)| if s.is_certified_zero() { "0" } else { "x" }).collect::<String>()));
    }
    outcome(ok, parts.join(" "))
}

fn rigid_three_by_three() -> Outcome {
    let ctx: RingCtx<K> = RingCtx::gorenstein(3).unwrap();
    let mut ok = true;
    for l in 1..=2 {
        let (cc, _) = p_power_complex(&ctx, l, 2);
        let st = statuses(&ctx, &cc, 2);
        ok &= st[0].0.is_certified_zero() && st[1].0.is_nonzero() && st[1].1;
    }
    outcome(ok, "Ext^1 certified zero, Ext^2 nonzero with verified witness, l = 1, 2")
}

fn example_p_cubed() -> Outcome {
    let ctx: RingCtx<K> = RingCtx::gorenstein(3).unwrap();
    let (cc, _) = p_power_complex(&ctx, 3, 3);
    let st = statuses(&ctx, &cc, 3);
    let pattern: String = st
        .iter()
        .map(|(s, v)| match s {
            ExtStatus::CertifiedZero => '0',
            ExtStatus::NonZero { .. } if *v => 'x',
            _ => '?',
        })
        .collect();
    outcome(pattern == "0xx", format!("Ext^1..Ext^3 = [{pattern}] (0 certified zero, x verified nonzero)"))
}

fn hypersurface_family() -> Outcome {
    let mut checked = 0;
    for n in 2..=5u32 {
        let ctx: RingCtx<K> = RingCtx::hypersurface(n).unwrap();
        for m in 1..n {
            let cx = resolution_hypersurface(&ctx, m, 5).unwrap();
            let t = TargetModule::ideal(cx.augmentation.clone().unwrap().row(0), "C").unwrap();
            if !hom_matches_ring(&ctx, &cx, &t, HOM_BOUND).unwrap() {
                return outcome(false, format!("Hom mismatch n={n} m={m}"));
            }
            let cc = hom_complex(&cx, &t).unwrap();
            let odd = if 2 * m <= n {
                [format!("Z^{}", n - m), "X".to_string()]
            } else {
                [format!("Z^{m}"), format!("X*Z^{}", 2 * m - n)]
            };
            let even = ["X".to_string(), format!("Z^{m}")];
            let vector = |g: &[String; 2]| g.iter().map(|s| ctx.parse(s).unwrap()).collect::<Vec<_>>();
            let (odd, even) = (vector(&odd), vector(&even));
            for (k, (s, verified)) in statuses(&ctx, &cc, 4).into_iter().enumerate() {
                let i = k + 1;
                if !(s.is_nonzero() && verified) {
                    return outcome(false, format!("Ext^{i} n={n} m={m}: {s:?}"));
                }
                let g = if i % 2 == 1 { &odd } else { &even };
                if !check_witness(&ctx, &cc, i, g).unwrap().nonzero_class() {
                    return outcome(false, format!("displayed generator not a nonzero class, n={n} m={m} i={i}"));
                }
            }
            checked += 1;
        }
        let mut rigid = Vec::new();
        for c in 0..n as i64 {
            let r = classify_sdm(&ctx, &DivisorClass::new(ctx.kind(), c), &ClassifyConfig::syzygy(1)).unwrap();
            if r.verdict.certified_level().is_some_and(|k| k >= 1) {
                rigid.push(c);
            } else if r.verdict != (Verdict::Exactly { n: 0 }) {
                return outcome(false, format!("n={n} class {c}: {}", r.verdict_label));
            }
        }
        if rigid != [0] {
            return outcome(false, format!("n={n}: 1-semidualizing classes {rigid:?}"));
        }
    }
    outcome(true, format!("{checked} classes: Hom = R to degree {HOM_BOUND}, Ext^1..4 nonzero on the displayed generators, only [R] is 1-semidualizing"))
}

fn identity_suites() -> Outcome {
    let mut plucker = 0;
    for (m, p) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)] {
        let ctx: RingCtx<K> = RingCtx::determinantal(m, p, 2).unwrap();
        let x = generic_matrix(&ctx).unwrap();
        for idx in all_plucker_indices(m, p) {
            if !plucker_relation(&x, &idx).unwrap().is_zero() {
                return outcome(false, format!("Plücker {m}x{p} {idx:?}"));
            }
            plucker += 1;
        }
    }
    let mut cof = 0;
    for n in 2..=4 {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n).unwrap();
        for idx in CofactorIndices::all(n) {
            if !ctx.is_zero(&cofactor_identity(&ctx, &idx).unwrap()) {
                return outcome(false, format!("cofactor n={n} {idx:?}"));
            }
            cof += 1;
        }
    }
    let mut colon = 0;
    for n in 2..=3 {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n).unwrap();
        for l in 1..=3 {
            if !check_nonzerodivisor(&ctx, l).unwrap() {
                return outcome(false, format!("nonzerodivisor n={n} l={l}"));
            }
            for k in 1..=l {
                if !check_colon(&ctx, l, k).unwrap().holds {
                    return outcome(false, format!("colon n={n} l={l} k={k}"));
                }
                colon += 1;
            }
        }
    }
    outcome(true, format!("{plucker} Plücker, {cof} cofactor, {colon} colon identities"))
}

fn basis_cross_check() -> Outcome {
    for n in 2..=3 {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n).unwrap();
        let pi = PosetPi::new(n, n, n).unwrap();
        for d in 0..=BASIS_DEGREE {
            let a = enumerate_std_monomials(&pi, d, false).len();
            let b = ctx.dim_piece(d as u32);
            if a != b {
                return outcome(false, format!("n={n} d={d}: {a} standard vs {b} normal"));
            }
        }
    }
    outcome(true, format!("counts agree for n = 2, 3 and d <= {BASIS_DEGREE}"))
}

fn class_group_laws() -> Outcome {
    for n in 2..=3 {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n).unwrap();
        let p = DivisorClass::new(ctx.kind(), 1);
        let law = verify_sum(&ctx, &p, &p.neg()).unwrap();
        if !(law.holds && law.model.is_zero()) {
            return outcome(false, format!("(p q)** not principal for n={n}"));
        }
        let base = p_ideal(&ctx, None).unwrap();
        for l in 1..=3u32 {
            let real = realize(&ctx, &DivisorClass::new(ctx.kind(), l as i64)).unwrap();
            let same = ideal_eq(&real, &ideal_power(&base, l, ctx.quotient()), ctx.quotient()).unwrap();
            if !(same && power_is_symbolic(&ctx, l).unwrap()) {
                return outcome(false, format!("realize({l}[p]) for n={n}"));
            }
        }
        if !verify_difference(&ctx, &DivisorClass::new(ctx.kind(), 2), &p).unwrap().holds {
            return outcome(false, format!("2[p] - [p] for n={n}"));
        }
    }
    outcome(true, "(p q)** = R and p^l reflexive with realize(l[p]) = p^l, n = 2, 3, l <= 3")
}

fn conjecture_table() -> Outcome {
    let table = ext_table::<K>(3, 3, 2, &[-1, 1], &ClassifyConfig::syzygy(4), &TableCaps::default()).unwrap();
    let k = table.predicted_level;
    let cells: Vec<String> = table.rows.iter().map(|r| format!("{}:{}={}", r.class, r.i, r.status)).collect();
    let through: Vec<Option<bool>> = [-1, 1].iter().map(|&c| table.vanishes_through(c, k)).collect();
    let ok = through.iter().all(|v| *v == Some(true));
    outcome(ok, format!("{} (level {k}): Ext^1..Ext^{k} vanish {through:?}; {}", table.flag, cells.join(" ")))
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, "matrix factorizations", BUDGET_1, true, matfac_identities),
        criterion(2, "displayed presentation matrices", BUDGET_2, true, displayed_matrices),
        criterion(3, "im gamma = ker eps", BUDGET_3, true, presentation_exactness),
        criterion(4, "parity for 2x2", BUDGET_4, true, parity_two_by_two),
        criterion(5, "rigid p and p^2 for 3x3", BUDGET_5, true, rigid_three_by_three),
        criterion(6, "p^3 over 3x3", BUDGET_6, true, example_p_cubed),
        criterion(7, "hypersurface family", BUDGET_7, true, hypersurface_family),
        criterion(8, "identity suites", BUDGET_8, true, identity_suites),
        criterion(9, "standard monomial counts", BUDGET_9, true, basis_cross_check),
        criterion(10, "class group laws", BUDGET_10, true, class_group_laws),
        criterion(11, "3x3 t=2 table (informational)", BUDGET_11, false, conjecture_table),
    ];
    assert!(results.iter().all(|&ok| ok), "a blocking criterion failed");
}
