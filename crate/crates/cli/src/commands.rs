use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use thiserror::Error;

use crate::certificate::{strings, Certificate};
use crate::report::{Check, CheckStatus, FieldChoice, Report};
use crate::{Cli, Cmd, EngineArg, FormatArg, RingArg, RingArgs};
use sdmkit_core::detring::{
    all_plucker_indices, cofactor_identity, cofactor_plucker, generic_matrix, plucker_relation, CofactorIndices, LocalImage,
    Localizer, MinorSymbol, PosetPi, RingCtx, RingKind, Straightener,
};
use sdmkit_core::exact_algebra::{Field, Rational, F32003};
use sdmkit_core::groebner::{membership, syzygies, Membership, ModuleBasis, ModuleOptions, SyzOptions};
use sdmkit_core::homology::{check_witness, ext, hom_complex, ExtConfig, ExtEngine, ExtStatus, TargetModule};
use sdmkit_core::matfac_res::{gamma_matrix, gamma_matrix_inductive, matfac_det, matfac_hypersurface, presentation_p_power};
use sdmkit_core::sdm::{
    class_resolution, classify_sdm, closure_evidence, ext_table, verify_difference, verify_sum, ClassGroup, ClassifyConfig,
    DivisorClass, TableCaps,
};
use sdmkit_core::AlgebraError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Out = Result<(), CliError>;

fn ring_kind(r: &RingArgs) -> Result<RingKind, CliError> {
    Ok(match r.ring {
        RingArg::Det => {
            let n = r.n as usize;
            let m = r.m.unwrap_or(n);
            RingKind::Determinantal { m, n, t: r.t.unwrap_or(m.min(n)) }
        }
        RingArg::Hypersurface => {
            if r.m.is_some() || r.t.is_some() {
                return Err(CliError::Usage("--m and --t only apply to determinantal rings".into()));
            }
            RingKind::Hypersurface { n: r.n }
        }
    })
}

fn engine_config(engine: EngineArg, bound: Option<i32>, default_bound: i32, step_cap: Option<u64>) -> ExtConfig {
    let engine = match engine {
        EngineArg::Syzygy => ExtEngine::Syzygy,
        EngineArg::Truncated => ExtEngine::Truncated,
        EngineArg::Both => ExtEngine::Both,
    };
    ExtConfig { engine, bound: bound.unwrap_or(default_bound), step_cap }
}

fn piece_bound(kind: RingKind, class: i64) -> i32 {
    match kind {
        RingKind::Determinantal { n, .. } => ((class.unsigned_abs() as usize) * n.saturating_sub(1) + 2 * n) as i32,
        RingKind::Hypersurface { n } => 2 * n as i32 + 2,
    }
}

fn csv_path(out: &Path) -> PathBuf {
    out.with_extension("csv")
}

pub fn run<K: Field>(cli: &Cli, rep: &mut Report) -> Out {
    let syz = SyzOptions { step_cap: cli.step_cap, ..Default::default() };
    match &cli.cmd {
        Cmd::VerifyMatfac { ring, class } => verify_matfac::<K>(ring, *class, rep),
        Cmd::Resolution { ring, class, length } => resolution::<K>(ring, *class, *length, &syz, rep),
        Cmd::Gamma { n, ell, format } => gamma::<K>(*n, *ell, *format, &cli.out, rep),
        Cmd::Presentation { n, ell } => presentation::<K>(*n, *ell, cli.step_cap, rep),
        Cmd::Straighten { m, n, t, factors } => straighten::<K>(*m, *n, *t, factors, rep),
        Cmd::Plucker { m, p } => plucker::<K>(*m, *p, rep),
        Cmd::CofactorId { n } => cofactor::<K>(*n, rep),
        Cmd::Localize { m, n, t } => localize::<K>(*m, *n, *t, rep),
        Cmd::Ext { ring, class, imax, engine, bound } => {
            let kind = ring_kind(ring)?;
            let cfg = engine_config(*engine, *bound, piece_bound(kind, *class), cli.step_cap);
            ext_cmd::<K>(kind, *class, *imax, &cfg, &syz, cli.time_limit, rep)
        }
        Cmd::Classify { ring, class, imax, engine, bound } => {
            let kind = ring_kind(ring)?;
            let cfg = ClassifyConfig {
                i_max: *imax,
                ext: engine_config(*engine, *bound, piece_bound(kind, *class), cli.step_cap),
                hom_bound: *bound,
                syz,
            };
            classify::<K>(kind, *class, &cfg, rep)
        }
        Cmd::Clgroup { ring, range, imax } => clgroup::<K>(ring_kind(ring)?, *range, *imax, cli.step_cap, rep),
        Cmd::ConjectureTable { m, n, t, imax, classes, engine, bound } => {
            let cfg = ClassifyConfig {
                i_max: *imax,
                ext: engine_config(*engine, *bound, 2 * (*m + *n) as i32, cli.step_cap),
                hom_bound: *bound,
                syz,
            };
            conjecture_table::<K>(*m, *n, *t, classes, &cfg, &cli.out, rep)
        }
        Cmd::Selftest { replay: Some(path) } => replay(path, rep),
        Cmd::Selftest { replay: None } => selftest::<K>(cli.seed, rep),
    }
}

fn verify_matfac<K: Field>(ring: &RingArgs, class: Option<i64>, rep: &mut Report) -> Out {
    let kind = ring_kind(ring)?;
    let ctx: RingCtx<K> = RingCtx::new(kind)?;
    let mfs = match kind {
        RingKind::Determinantal { .. } => vec![("det".to_string(), matfac_det(&ctx)?)],
        RingKind::Hypersurface { n } => {
            let ms: Vec<u32> = match class {
                Some(c) => vec![c as u32],
                None => (1..n).collect(),
            };
            ms.into_iter()
                .map(|m| Ok((format!("m={m}"), matfac_hypersurface(&ctx, m)?)))
                .collect::<Result<Vec<_>, AlgebraError>>()?
        }
    };
    for (label, mf) in mfs {
        let ok = mf.verify();
        println!("{kind} {label}: AB = BA = ({}) I: {ok}", mf.f());
        rep.check(Check::new(format!("{kind} {label}"), ok, json!({"f": mf.f().to_string()})));
        rep.certificates.push(Certificate::MatrixFactorization {
            ring: kind,
            a: mf.a().to_json(),
            b: mf.b().to_json(),
            f: mf.f().to_string(),
        });
    }
    Ok(())
}

fn resolution<K: Field>(ring: &RingArgs, class: i64, length: usize, syz: &SyzOptions, rep: &mut Report) -> Out {
    let kind = ring_kind(ring)?;
    let ctx: RingCtx<K> = RingCtx::new(kind)?;
    let cls = DivisorClass::new(kind, class);
    let (cx, gens) = class_resolution(&ctx, &cls, length, syz)?;
    let verified = cx.verify(ctx.quotient()).is_ok();
    let twists: Vec<Vec<i32>> = cx.modules.iter().map(|m| m.twists.clone()).collect();
    println!("resolution of {cls} = ({})", strings(&gens).join(", "));
    for (i, t) in twists.iter().enumerate() {
        println!("  F_{i}: rank {} twists {:?}", t.len(), t);
    }
    rep.check(Check::new("complex and augmentation compose to zero", verified, Value::Null));
    if let Some(aug) = &cx.augmentation {
        if let Some(d1) = cx.maps.first() {
            rep.certificates.push(Certificate::zero_product("eps d_1", &ctx, aug, d1));
        }
    }
    for (i, w) in cx.maps.windows(2).enumerate() {
        rep.certificates.push(Certificate::zero_product(format!("d_{} d_{}", i + 1, i + 2), &ctx, &w[0], &w[1]));
    }
    rep.payload = json!({
        "class": cls,
        "generators": strings(&gens),
        "twists": twists,
        "period": cx.period,
        "terminates": cx.terminates,
        "maps": cx.maps.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
    });
    Ok(())
}

fn gamma<K: Field>(n: usize, ell: usize, format: FormatArg, out: &Path, rep: &mut Report) -> Out {
    let ctx: RingCtx<K> = RingCtx::gorenstein(n)?;
    let pd = gamma_matrix(&ctx, ell)?;
    let ind = gamma_matrix_inductive(&ctx, ell)?;
    rep.check(Check::new(
        "direct and inductive constructions agree",
        pd.gamma.to_string_rows() == ind.gamma.to_string_rows(),
        Value::Null,
    ));
    rep.check(Check::new(
        "eps gamma = 0",
        ctx.quotient().is_zero_matrix(&pd.epsilon.mul(&pd.gamma)?),
        Value::Null,
    ));
    rep.certificates.push(Certificate::zero_product("eps gamma", &ctx, &pd.epsilon, &pd.gamma));
    let js = pd.to_json();
    match format {
        FormatArg::Csv => {
            let csv = pd.to_csv();
            print!("{csv}");
            std::fs::write(csv_path(out), &csv)?;
        }
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&js).unwrap()),
    }
    rep.payload = serde_json::to_value(js).unwrap();
    Ok(())
}

fn presentation<K: Field>(n: usize, ell: usize, step_cap: Option<u64>, rep: &mut Report) -> Out {
    let ctx: RingCtx<K> = RingCtx::gorenstein(n)?;
    let (pd, cert) = presentation_p_power(&ctx, ell, step_cap)?;
    println!(
        "n={n} l={ell}: im gamma in ker eps: {}, ker eps in im gamma: {} ({} kernel generators)",
        cert.image_in_kernel, cert.kernel_in_image, cert.kernel_generators
    );
    rep.check(Check::new("im gamma = ker eps", cert.exact(), serde_json::to_value(&cert).unwrap()));
    rep.certificates.push(Certificate::zero_product("eps gamma", &ctx, &pd.epsilon, &pd.gamma));
    let q = ctx.quotient();
    let kernel = syzygies(&pd.epsilon, q, &SyzOptions { step_cap, ..Default::default() })?.matrix;
    let basis = ModuleBasis::new(&pd.gamma, q, &ModuleOptions { step_cap, certificates: true, ..Default::default() })?;
    for (k, col) in kernel.columns().iter().enumerate() {
        if let Membership::Member { coefficients } = basis.member(col)? {
            rep.certificates
                .push(Certificate::combination(format!("kernel generator {k} in im gamma"), &ctx, &pd.gamma, &coefficients, col));
        }
    }
    rep.payload = serde_json::to_value(pd.to_json()).unwrap();
    Ok(())
}

fn straighten<K: Field>(m: usize, n: usize, t: usize, factors: &str, rep: &mut Report) -> Out {
    let fs: Vec<MinorSymbol> = factors
        .split('*')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let st: Straightener<K> = Straightener::new(m, n, t)?;
    let terms = st.straighten(&fs)?;
    let shown: Vec<Value> = terms.iter().map(|(c, mu)| json!({"coefficient": c.to_string(), "monomial": mu.to_string()})).collect();
    for (c, mu) in &terms {
        println!("{c} * {mu}");
    }
    rep.check(Check::new("re-expansion agrees modulo the ideal", true, Value::Null));
    rep.payload = json!({ "factors": factors, "terms": shown });
    Ok(())
}

fn plucker<K: Field>(m: usize, p: usize, rep: &mut Report) -> Out {
    let ctx: RingCtx<K> = RingCtx::determinantal(m, p, 2)?;
    let x = generic_matrix(&ctx)?;
    let all = all_plucker_indices(m, p);
    let mut bad = Vec::new();
    for idx in &all {
        if !plucker_relation(&x, idx)?.is_zero() {
            bad.push(serde_json::to_value(idx).unwrap());
        }
    }
    println!("{} relations of a generic {m}x{p} matrix, {} nonzero", all.len(), bad.len());
    rep.check(Check::new("all Plücker relations vanish", bad.is_empty(), json!({"count": all.len(), "nonzero": bad})));
    Ok(())
}

fn cofactor<K: Field>(n: usize, rep: &mut Report) -> Out {
    let ctx: RingCtx<K> = RingCtx::gorenstein(n)?;
    let all = CofactorIndices::all(n);
    let mut bad = Vec::new();
    for idx in &all {
        let f = cofactor_identity(&ctx, idx)?;
        let ok = ctx.is_zero(&f) && cofactor_plucker(&ctx, idx)?.is_zero();
        if !ok {
            bad.push(serde_json::to_value(idx).unwrap());
        }
        if !f.is_zero() {
            rep.certificates.push(Certificate::Vanishes {
                label: format!("cofactor identity {idx:?}"),
                ring: ctx.kind(),
                poly: f.to_string(),
            });
        }
    }
    println!("{} cofactor identities for n={n}, {} failing", all.len(), bad.len());
    rep.check(Check::new("cofactor identities vanish", bad.is_empty(), json!({"count": all.len(), "failing": bad})));
    Ok(())
}

fn localize<K: Field>(m: usize, n: usize, t: usize, rep: &mut Report) -> Out {
    let ctx: RingCtx<K> = RingCtx::determinantal(m, n, t)?;
    let loc = Localizer::new(&ctx)?;
    let mut minors_vanish = true;
    for g in ctx.ideal().generators() {
        minors_vanish &= loc.image(g)?.numerator.is_zero();
    }
    rep.check(Check::new("t-minors map to zero", minors_vanish, Value::Null));
    let src: Vec<LocalImage<K>> = loc.p_source(&ctx).iter().map(|g| loc.image(g)).collect::<Result<_, _>>()?;
    let tgt: Vec<LocalImage<K>> = loc.p_target(&ctx).into_iter().map(|g| LocalImage { numerator: g, power: 0 }).collect();
    let same = loc.same_extension(&src, &tgt, 2)?;
    rep.check(Check::new("p extends to p of the smaller ring", same, Value::Null));
    println!("{m}x{n} t={t}: minors vanish {minors_vanish}, p extends {same}");
    Ok(())
}

fn ext_cmd<K: Field>(
    kind: RingKind,
    class: i64,
    imax: usize,
    cfg: &ExtConfig,
    syz: &SyzOptions,
    time_limit: Option<u64>,
    rep: &mut Report,
) -> Out {
    let start = Instant::now();
    let ctx: RingCtx<K> = RingCtx::new(kind)?;
    let cls = DivisorClass::new(kind, class);
    let (cx, gens) = class_resolution(&ctx, &cls, imax + 1, syz)?;
    let label = cls.to_string();
    let target = TargetModule::ideal(gens.clone(), label.clone())?;
    let cc = hom_complex(&cx, &target)?;
    let row = target.generator_row(&ctx)?;
    let mut reports = Vec::new();
    for i in 1..=imax {
        if time_limit.is_some_and(|s| start.elapsed().as_secs() >= s) {
            rep.check(Check::infeasible(format!("Ext^{i}"), "time limit"));
            continue;
        }
        let r = ext(&ctx, &cx, &label, &target, i, cfg)?;
        println!("Ext^{i}({label}, {label}): {}", status_text(&r.status));
        match &r.status {
            ExtStatus::NonZero { .. } => {
                let w = r.witness.as_ref().expect("nonzero status carries a witness");
                let v = w.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<_>, _>>()?;
                let wc = check_witness(&ctx, &cc, i, &v)?;
                rep.check(Check::new(format!("Ext^{i} witness"), wc.nonzero_class(), serde_json::to_value(wc).unwrap()));
                if let Some(d) = cc.outgoing(i)? {
                    rep.certificates.push(Certificate::cocycle(format!("Ext^{i} witness is a cocycle"), &ctx, d, &v));
                }
                for (k, f) in v.iter().enumerate() {
                    if let Membership::Member { coefficients } = membership(std::slice::from_ref(f), &row, ctx.quotient())? {
                        rep.certificates.push(Certificate::combination(
                            format!("Ext^{i} witness entry {k} lies in C"),
                            &ctx,
                            &row,
                            &coefficients,
                            std::slice::from_ref(f),
                        ));
                    }
                }
            }
            ExtStatus::Infeasible { reason } => rep.check(Check::infeasible(format!("Ext^{i}"), reason.clone())),
            s => rep.check(Check::new(format!("Ext^{i}"), true, json!(s.label()))),
        }
        reports.push(r);
    }
    rep.payload = json!({ "class": cls, "generators": strings(&gens), "ext": reports });
    Ok(())
}

fn status_text(s: &ExtStatus) -> String {
    match s {
        ExtStatus::CertifiedZero => "zero (certified)".into(),
        ExtStatus::ZeroUpToDegree { bound } => format!("zero up to piece degree {bound}"),
        ExtStatus::NonZero { degree } => format!("nonzero (witness in degree {degree})"),
        ExtStatus::Infeasible { reason } => format!("infeasible: {reason}"),
    }
}

fn classify<K: Field>(kind: RingKind, class: i64, cfg: &ClassifyConfig, rep: &mut Report) -> Out {
    let ctx: RingCtx<K> = RingCtx::new(kind)?;
    let cls = DivisorClass::new(kind, class);
    let r = classify_sdm(&ctx, &cls, cfg)?;
    let group = ClassGroup::of(kind);
    let semidualizing = matches!(r.verdict.certified_level(), Some(k) if k >= cfg.i_max);
    println!("{kind} class {cls}: {}", r.verdict_label);
    if semidualizing {
        println!("semidualizing for all i <= {}", cfg.i_max);
    }
    if group.is_trivial() {
        println!("cl trivial");
    }
    rep.check(Check::new("verdict recomputes from the Ext statuses", r.recompute_verdict() == r.verdict, Value::Null));
    rep.check(Check::new("ann C = 0", r.ann_zero, Value::Null));
    rep.payload = json!({
        "report": r,
        "class_group": group,
        "class_group_trivial": group.is_trivial(),
        "semidualizing_through_imax": semidualizing,
    });
    Ok(())
}

fn clgroup<K: Field>(kind: RingKind, range: i64, imax: usize, step_cap: Option<u64>, rep: &mut Report) -> Out {
    let ctx: RingCtx<K> = RingCtx::new(kind)?;
    let classes: Vec<i64> = match ClassGroup::of(kind) {
        ClassGroup::Integers => (-range..=range).collect(),
        ClassGroup::Cyclic { order } => (0..order as i64).collect(),
    };
    let mut laws = Vec::new();
    for &a in &classes {
        for &b in &classes {
            let in_range = |v: i64| classes.contains(&DivisorClass::new(kind, v).value);
            if a > b || !in_range(a + b) || !in_range(a - b) {
                continue;
            }
            let (ca, cb) = (DivisorClass::new(kind, a), DivisorClass::new(kind, b));
            let s = verify_sum(&ctx, &ca, &cb)?;
            let d = verify_difference(&ctx, &ca, &cb)?;
            rep.check(Check::new(format!("[{a}] + [{b}]"), s.holds, Value::Null));
            rep.check(Check::new(format!("[{a}] - [{b}]"), d.holds, Value::Null));
            laws.push(json!({"a": a, "b": b, "sum": s.holds, "difference": d.holds}));
        }
    }
    let cfg = ClassifyConfig {
        i_max: imax,
        ext: ExtConfig { step_cap, ..ExtConfig::syzygy() },
        hom_bound: None,
        syz: SyzOptions { step_cap, ..Default::default() },
    };
    let mut members = Vec::new();
    let mut verdicts = Vec::new();
    for &c in &classes {
        let r = classify_sdm(&ctx, &DivisorClass::new(kind, c), &cfg)?;
        if matches!(r.verdict.certified_level(), Some(k) if k >= imax) {
            members.push(c);
        }
        println!("class {c}: {}", r.verdict_label);
        verdicts.push(json!({"class": c, "verdict": r.verdict, "label": r.verdict_label}));
    }
    let closure = closure_evidence(&members, &classes);
    println!("{imax}-semidualizing classes among those computed: {members:?}");
    rep.payload = json!({
        "class_group": ClassGroup::of(kind),
        "laws": laws,
        "verdicts": verdicts,
        "semidualizing_classes": members,
        "closure_evidence": closure,
    });
    Ok(())
}

fn conjecture_table<K: Field>(m: usize, n: usize, t: usize, classes: &[i64], cfg: &ClassifyConfig, out: &Path, rep: &mut Report) -> Out {
    let table = ext_table::<K>(m, n, t, classes, cfg, &TableCaps::default())?;
    let csv = table.to_csv();
    print!("{csv}");
    std::fs::write(csv_path(out), &csv)?;
    for r in &table.rows {
        if r.status.starts_with("infeasible") {
            rep.check(Check::infeasible(format!("class {} Ext^{}", r.class, r.i), r.status.clone()));
        }
    }
    let k = table.predicted_level;
    let vanishing: Vec<Value> = classes
        .iter()
        .map(|&c| json!({"class": c, "ext_1_to_k_vanish": table.vanishes_through(c, k.min(cfg.i_max))}))
        .collect();
    println!("{} (predicted level {k})", table.flag);
    rep.payload = json!({ "table": table, "predicted_level": k, "vanishing": vanishing });
    Ok(())
}

fn replay(path: &Path, rep: &mut Report) -> Out {
    let old = Report::read(path)?;
    let n = match old.config.field {
        FieldChoice::F32003 => replay_in::<F32003>(&old, rep)?,
        FieldChoice::Rational => replay_in::<Rational>(&old, rep)?,
    };
    println!("replayed {n} certificates from {}", path.display());
    Ok(())
}

fn replay_in<K: Field>(old: &Report, rep: &mut Report) -> Result<usize, CliError> {
    let mut rings: HashMap<RingKind, RingCtx<K>> = HashMap::new();
    for c in &old.certificates {
        let kind = c.ring();
        if !rings.contains_key(&kind) {
            rings.insert(kind, RingCtx::new(kind)?);
        }
        let ok = c.verify(&rings[&kind])?;
        rep.check(Check::new(format!("replay: {}", c.label()), ok, Value::Null));
    }
    for c in old.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
        rep.check(Check::new(format!("original check: {}", c.name), false, Value::Null));
    }
    Ok(old.certificates.len())
}

fn selftest<K: Field>(seed: u64, rep: &mut Report) -> Out {
    for n in 2..=3 {
        let ctx: RingCtx<K> = RingCtx::gorenstein(n)?;
        rep.check(Check::new(format!("det factorization n={n}"), matfac_det(&ctx)?.verify(), Value::Null));
    }
    for n in 2..=4u32 {
        let ctx: RingCtx<K> = RingCtx::hypersurface(n)?;
        for m in 1..n {
            rep.check(Check::new(format!("hypersurface factorization n={n} m={m}"), matfac_hypersurface(&ctx, m)?.verify(), Value::Null));
        }
    }
    let ctx: RingCtx<K> = RingCtx::gorenstein(2)?;
    let (_, cert) = presentation_p_power(&ctx, 2, None)?;
    rep.check(Check::new("presentation n=2 l=2", cert.exact(), Value::Null));
    let st: Straightener<K> = Straightener::new(3, 3, 3)?;
    let pool = PosetPi::new(3, 3, 3)?.elements();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut products = Vec::new();
    for _ in 0..8 {
        let k = rng.gen_range(2..=3);
        let fs: Vec<MinorSymbol> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let ok = st.straighten(&fs).is_ok();
        let shown = fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("*");
        rep.check(Check::new(format!("straighten {shown}"), ok, Value::Null));
        products.push(shown);
    }
    let cls = DivisorClass::new(ctx.kind(), 1);
    let law = verify_sum(&ctx, &cls, &cls.neg())?;
    rep.check(Check::new("[p] + [q] = 0 in R_2", law.holds, Value::Null));
    println!("{}", rep.summary());
    rep.payload = json!({ "seed": seed, "random_products": products, "ring": ctx.kind() });
    Ok(())
}
