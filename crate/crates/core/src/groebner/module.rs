//! Submodules of free modules over a quotient ring `k[x]/I`: syzygies and
//! membership with certificates, by lifting to `k[x]` (the relations
//! `f * e_i` for `f` in a basis of `I` are adjoined to every module).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::engine::{compute_gb, GbInput, GbOptions, MTerm, ModVec, ModuleGb, ModuleOrder, ModuleOrderKind};
use super::ideal::{poly_to_vec, IdealBasis};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix, PolyRing, Polynomial};

/// `k[x]/I` with `I` carrying a reduced Groebner basis.
#[derive(Clone, Debug)]
pub struct Quotient<K: Field> {
    ring: Arc<PolyRing>,
    ideal: IdealBasis<K>,
}

impl<K: Field> Quotient<K> {
    pub fn new(ideal: IdealBasis<K>) -> Result<Self> {
        if ideal.gb().is_none() {
            return Err(AlgebraError::Precondition(
                "quotient needs a Groebner basis".into(),
            ));
        }
        Ok(Quotient {
            ring: ideal.ring().clone(),
            ideal,
        })
    }

    /// The polynomial ring itself (`I = 0`).
    pub fn polynomial_ring(ring: &Arc<PolyRing>) -> Self {
        let ideal = IdealBasis::new(ring, Vec::new())
            .unwrap()
            .with_known_gb(Vec::new());
        Quotient {
            ring: ring.clone(),
            ideal,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ideal(&self) -> &IdealBasis<K> {
        &self.ideal
    }

    pub fn gb(&self) -> &[Polynomial<K>] {
        self.ideal.gb().unwrap()
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Polynomial<K> {
        self.ideal.normal_form(f).expect("ring checked by caller")
    }

    pub fn reduce_column(&self, v: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
        v.iter().map(|p| self.normal_form(p)).collect()
    }

    pub fn is_zero(&self, f: &Polynomial<K>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether every entry of `m` vanishes in the quotient.
    pub fn is_zero_matrix(&self, m: &PolyMatrix<K>) -> bool {
        (0..m.rows()).all(|i| (0..m.cols()).all(|j| self.is_zero(m.get(i, j))))
    }

    /// The relations `f * e_i`, `i < rank`.
    pub(crate) fn relations(&self, rank: usize) -> Vec<GbInput<K>> {
        let mut out = Vec::new();
        for i in 0..rank {
            for f in self.gb() {
                out.push(GbInput {
                    terms: poly_to_vec(f, i as u32),
                    relation: true,
                });
            }
        }
        out
    }

    /// Reduced product `m1 * m2` (entries in normal form).
    pub fn mul_reduced(&self, a: &PolyMatrix<K>, b: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
        let p = a.mul(b)?;
        Ok(p.map(|e| self.normal_form(e)))
    }
}

pub(crate) fn column_to_vec<K: Field>(col: &[Polynomial<K>]) -> ModVec<K> {
    let mut out = Vec::new();
    for (i, p) in col.iter().enumerate() {
        out.extend(poly_to_vec(p, i as u32));
    }
    out
}

pub(crate) fn vec_to_column<K: Field>(ring: &Arc<PolyRing>, v: &[MTerm<K>], len: usize) -> Vec<Polynomial<K>> {
    let mut buckets: Vec<Vec<(crate::exact_algebra::Monomial, K)>> = vec![Vec::new(); len];
    for t in v {
        buckets[t.pos as usize].push((t.mon.clone(), t.coef.clone()));
    }
    buckets
        .into_iter()
        .map(|b| Polynomial::from_terms(ring, b))
        .collect()
}

/// Row and column twists of `m`: the stored ones, else rows in degree 0
/// and columns inferred. `None` when `m` is not homogeneous.
pub fn grading_of<K: Field>(m: &PolyMatrix<K>) -> Option<(Vec<i32>, Vec<i32>)> {
    if let (Some(r), Some(c)) = (m.row_twists(), m.col_twists()) {
        return Some((r.to_vec(), c.to_vec()));
    }
    let rows = vec![0; m.rows()];
    let cols = m.infer_col_twists(&rows, 0).ok()?;
    Some((rows, cols))
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SyzOptions {
    pub order: ModuleOrderKind,
    pub degree_cap: Option<i64>,
    pub step_cap: Option<u64>,
    /// Skip the minimization pass.
    pub raw: bool,
}

/// Generators of `ker M` over the quotient ring, as matrix columns.
#[derive(Clone, Debug)]
pub struct SyzygyResult<K: Field> {
    pub matrix: PolyMatrix<K>,
    /// False when a degree cap truncated the computation; the columns then
    /// generate the kernel only up to that degree.
    pub complete: bool,
    pub steps: u64,
}

/// Kernel of `M: R^cols -> R^rows` over `R = k[x]/I`.
pub fn syzygies<K: Field>(m: &PolyMatrix<K>, q: &Quotient<K>, opts: &SyzOptions) -> Result<SyzygyResult<K>> {
    let ring = q.ring().clone();
    let grading = grading_of(m);
    if m.row_twists().is_some() && grading.is_none() {
        return Err(AlgebraError::Contract("twisted matrix is not homogeneous".into()));
    }
    let (row_tw, col_tw) = grading
        .clone()
        .unwrap_or((vec![0; m.rows()], vec![0; m.cols()]));
    let mut inputs: Vec<GbInput<K>> = q.relations(m.rows());
    for j in 0..m.cols() {
        inputs.push(GbInput {
            terms: column_to_vec(&m.column(j)),
            relation: false,
        });
    }
    let gopts = GbOptions {
        order: opts.order,
        degree_cap: opts.degree_cap,
        step_cap: opts.step_cap,
        track: true,
        skip_interreduce: true,
    };
    let order = ModuleOrder::new(opts.order, row_tw.clone());
    let run = compute_gb(&ring, order, inputs, q.ideal().reducers().clone(), &gopts)?;
    let mut steps = run.steps;
    let complete = run.complete;

    let mut syz: Vec<ModVec<K>> = run.syzygies;
    syz.retain(|v| !v.is_empty());
    let col_order = ModuleOrder::new(opts.order, col_tw.clone());
    for v in syz.iter_mut() {
        col_order.sort(&ring, v);
    }

    let chosen: Vec<ModVec<K>> = if grading.is_some() && !opts.raw {
        let mut inputs = q.relations(m.cols());
        inputs.extend(syz.iter().map(|v| GbInput {
            terms: v.clone(),
            relation: false,
        }));
        let mini = compute_gb(
            &ring,
            col_order.clone(),
            inputs,
            q.ideal().reducers().clone(),
            &GbOptions {
                order: opts.order,
                degree_cap: opts.degree_cap,
                step_cap: opts.step_cap,
                track: false,
                skip_interreduce: true,
            },
        )?;
        steps += mini.steps;
        mini.minimal_inputs.iter().map(|&k| syz[k].clone()).collect()
    } else {
        let mut seen = std::collections::HashSet::new();
        syz.into_iter().filter(|v| seen.insert(v.clone())).collect()
    };

    let cols: Vec<Vec<Polynomial<K>>> = chosen
        .iter()
        .map(|v| vec_to_column(&ring, v, m.cols()))
        .collect();
    let mut matrix = PolyMatrix::from_columns(&ring, m.cols(), &cols);
    if grading.is_some() {
        let tw = chosen
            .iter()
            .map(|v| col_order.tdeg(&ring, v[0].pos, &v[0].mon) as i32)
            .collect();
        matrix = matrix.with_twists(col_tw, tw)?;
    }
    Ok(SyzygyResult {
        matrix,
        complete,
        steps,
    })
}

#[derive(Clone, Debug)]
pub enum Membership<K: Field> {
    /// `M * coefficients == v` modulo `I`.
    Member { coefficients: Vec<Polynomial<K>> },
    /// The normal form of `v`, nonzero.
    NonMember { normal_form: Vec<Polynomial<K>> },
}

impl<K: Field> Membership<K> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum MembershipJson {
    Member { coefficients: Vec<String> },
    NonMember { normal_form: Vec<String> },
}

impl<K: Field> Membership<K> {
    pub fn to_json(&self) -> MembershipJson {
        match self {
            Membership::Member { coefficients } => MembershipJson::Member {
                coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
            },
            Membership::NonMember { normal_form } => MembershipJson::NonMember {
                normal_form: normal_form.iter().map(|c| c.to_string()).collect(),
            },
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ModuleOptions {
    pub order: ModuleOrderKind,
    pub degree_cap: Option<i64>,
    pub step_cap: Option<u64>,
    /// Keep cofactors so membership answers carry coefficients.
    pub certificates: bool,
}

/// A Groebner basis of the column span of a matrix over a quotient ring,
/// reusable for many membership queries.
#[derive(Clone, Debug)]
pub struct ModuleBasis<K: Field> {
    gb: ModuleGb<K>,
    quotient: Quotient<K>,
    generators: PolyMatrix<K>,
    certificates: bool,
    cap: Option<i64>,
}

impl<K: Field> ModuleBasis<K> {
    pub fn new(m: &PolyMatrix<K>, q: &Quotient<K>, opts: &ModuleOptions) -> Result<Self> {
        let ring = q.ring().clone();
        let row_tw = grading_of(m)
            .map(|g| g.0)
            .unwrap_or_else(|| vec![0; m.rows()]);
        let mut inputs = q.relations(m.rows());
        for j in 0..m.cols() {
            inputs.push(GbInput {
                terms: column_to_vec(&m.column(j)),
                relation: false,
            });
        }
        let gb = compute_gb(
            &ring,
            ModuleOrder::new(opts.order, row_tw),
            inputs,
            q.ideal().reducers().clone(),
            &GbOptions {
                order: opts.order,
                degree_cap: opts.degree_cap,
                step_cap: opts.step_cap,
                track: opts.certificates,
                skip_interreduce: false,
            },
        )?;
        Ok(ModuleBasis {
            gb,
            quotient: q.clone(),
            generators: m.clone(),
            certificates: opts.certificates,
            cap: opts.degree_cap,
        })
    }

    pub fn complete(&self) -> bool {
        self.gb.complete
    }

    pub fn engine(&self) -> &ModuleGb<K> {
        &self.gb
    }

    /// Indices of generators that form a minimal generating set (graded
    /// case).
    pub fn minimal_generators(&self) -> &[usize] {
        &self.gb.minimal_inputs
    }

    pub fn normal_form(&self, v: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
        let nf = self.gb.normal_form(column_to_vec(v))?;
        Ok(vec_to_column(self.quotient.ring(), &nf, self.generators.rows()))
    }

    pub fn member(&self, v: &[Polynomial<K>]) -> Result<Membership<K>> {
        if v.len() != self.generators.rows() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vector of length {} against rank {}",
                v.len(),
                self.generators.rows()
            )));
        }
        let vec = column_to_vec(v);
        if !self.gb.complete {
            let deg = vec
                .iter()
                .map(|t| self.gb.order.tdeg(&self.gb.ring, t.pos, &t.mon))
                .max()
                .unwrap_or(i64::MIN);
            let homogeneous = vec
                .iter()
                .all(|t| self.gb.order.tdeg(&self.gb.ring, t.pos, &t.mon) == deg);
            let cap = self.cap.unwrap_or(i64::MAX);
            if !homogeneous || deg > cap {
                return Err(AlgebraError::DegreeBound { degree: deg, bound: cap });
            }
        }
        let (nf, cof) = self.gb.reduce(vec)?;
        let ring = self.quotient.ring();
        if !nf.is_empty() {
            return Ok(Membership::NonMember {
                normal_form: vec_to_column(ring, &nf, self.generators.rows()),
            });
        }
        if !self.certificates {
            return Ok(Membership::Member {
                coefficients: Vec::new(),
            });
        }
        let coefficients: Vec<Polynomial<K>> = vec_to_column(ring, &cof.unwrap_or_default(), self.generators.cols())
            .into_iter()
            .map(|c| self.quotient.normal_form(&c))
            .collect();
        if !verify_combination(&self.generators, &coefficients, v, &self.quotient)? {
            return Err(AlgebraError::Contract(
                "membership certificate failed to verify".into(),
            ));
        }
        Ok(Membership::Member { coefficients })
    }
}

/// Checks `M * c == v` modulo the quotient ideal.
pub fn verify_combination<K: Field>(
    m: &PolyMatrix<K>,
    c: &[Polynomial<K>],
    v: &[Polynomial<K>],
    q: &Quotient<K>,
) -> Result<bool> {
    let mv = m.apply(c)?;
    for (a, b) in mv.iter().zip(v) {
        if !q.is_zero(&a.try_sub(b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One-shot membership test with certificate.
pub fn membership<K: Field>(v: &[Polynomial<K>], m: &PolyMatrix<K>, q: &Quotient<K>) -> Result<Membership<K>> {
    let cap = grading_of(m).and_then(|(rt, _)| {
        let mut deg = None;
        for (i, p) in v.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()? as i64 + rt[i] as i64;
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return None,
            }
        }
        deg
    });
    let basis = ModuleBasis::new(
        m,
        q,
        &ModuleOptions {
            degree_cap: cap,
            certificates: true,
            ..Default::default()
        },
    )?;
    basis.member(v)
}
