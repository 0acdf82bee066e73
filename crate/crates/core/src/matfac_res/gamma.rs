//! Presentation matrices `gamma_l` of the powers `p^l`, `p = (m_n1, ..., m_nn)`,
//! in `R_n(X)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::factorization::alpha;
use crate::detring::{m_n, psi_monomials, PosetPi, RingCtx, RingKind, StdMonomial};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, MatrixJson, PolyMatrix, Polynomial};
use crate::groebner::{syzygies, Membership, ModuleBasis, ModuleOptions, SyzOptions};

/// `e[j-1]` is the multiplicity of `m_nj`.
pub type PsiExponent = Vec<u32>;

/// `eps: R^r -> p^l` and `gamma: R^c -> R^r`, with row and column labels.
#[derive(Clone, Debug)]
pub struct PresentationData<K: Field> {
    pub n: usize,
    pub l: usize,
    pub epsilon: PolyMatrix<K>,
    pub gamma: PolyMatrix<K>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: usize,
    pub l: usize,
    pub epsilon: MatrixJson,
    pub gamma: MatrixJson,
}

impl<K: Field> PresentationData<K> {
    /// `gamma` with labels; entries in the polynomial text format.
    pub fn to_csv(&self) -> String {
        self.gamma.to_csv(Some(&self.row_labels), Some(&self.col_labels))
    }

    pub fn to_json(&self) -> PresentationJson {
        let mut gamma = self.gamma.to_json();
        gamma.row_labels = Some(self.row_labels.clone());
        gamma.col_labels = Some(self.col_labels.clone());
        let mut epsilon = self.epsilon.to_json();
        epsilon.col_labels = Some(self.row_labels.clone());
        PresentationJson { n: self.n, l: self.l, epsilon, gamma }
    }
}

/// Products of `l` generators `m_nj` as exponent vectors, ordered
/// lexicographically with `m_n1 > m_n2 > ... > m_nn`, largest first.
pub fn psi_exponents(n: usize, l: usize) -> Result<Vec<PsiExponent>> {
    let pi = PosetPi::new(n, n, n)?;
    Ok(psi_monomials(&pi, l).iter().map(|s| exponent_of(n, s)).collect())
}

fn exponent_of(n: usize, s: &StdMonomial) -> PsiExponent {
    let mut e = vec![0; n];
    for f in &s.factors {
        // [1..n-1 | cols] is m_nj for the missing column j
        let j = (1..=n).find(|c| !f.cols.contains(c)).expect("psi factor");
        e[j - 1] += 1;
    }
    e
}

/// `m[n,1]^2*m[n,3]`, or `1` for the empty product.
pub fn psi_label(n: usize, e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| {
            if k == 1 {
                format!("m[{},{}]", n, j + 1)
            } else {
                format!("m[{},{}]^{}", n, j + 1, k)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn square_n<K: Field>(ctx: &RingCtx<K>) -> Result<usize> {
    match ctx.kind() {
        RingKind::Determinantal { m, n, t } if m == n && t == n && n >= 2 => Ok(n),
        _ => Err(AlgebraError::Precondition("needs R_n(X) with n >= 2".into())),
    }
}

fn add_one(e: &[u32], j: usize) -> PsiExponent {
    let mut v = e.to_vec();
    v[j] += 1;
    v
}

fn epsilon_row<K: Field>(ctx: &RingCtx<K>, n: usize, rows: &[PsiExponent]) -> Result<PolyMatrix<K>> {
    let m: Vec<Polynomial<K>> = (1..=n).map(|j| m_n(ctx, j)).collect::<Result<_>>()?;
    let gens = rows
        .iter()
        .map(|e| {
            e.iter()
                .zip(&m)
                .fold(Polynomial::one(ctx.ring()), |acc, (&k, g)| &acc * &g.pow(k))
        })
        .collect();
    PolyMatrix::from_rows(ctx.ring(), vec![gens])
}

fn assemble<K: Field>(
    ctx: &RingCtx<K>,
    n: usize,
    l: usize,
    rows: Vec<PsiExponent>,
    cols: Vec<(PsiExponent, usize)>,
    gamma: PolyMatrix<K>,
) -> Result<PresentationData<K>> {
    let deg = (l * (n - 1)) as i32;
    let epsilon = epsilon_row(ctx, n, &rows)?.with_twists(vec![0], vec![deg; rows.len()])?;
    let gamma = gamma.with_twists(vec![deg; rows.len()], vec![deg + 1; cols.len()])?;
    let row_labels = rows.iter().map(|e| psi_label(n, e)).collect();
    let col_labels = cols
        .iter()
        .map(|(mu, j)| format!("({},{})", psi_label(n, mu), j))
        .collect();
    Ok(PresentationData { n, l, epsilon, gamma, row_labels, col_labels })
}

fn columns(n: usize, l: usize) -> Result<Vec<(PsiExponent, usize)>> {
    Ok(psi_exponents(n, l - 1)?
        .into_iter()
        .flat_map(|mu| (1..=n).map(move |j| (mu.clone(), j)))
        .collect())
}

/// `gamma_l`: for every generator `mu` of `p^(l-1)` a copy of `alpha` at
/// rows `mu m_n1, ..., mu m_nn` and columns `(mu, 1), ..., (mu, n)`.
pub fn gamma_matrix<K: Field>(ctx: &RingCtx<K>, l: usize) -> Result<PresentationData<K>> {
    let n = square_n(ctx)?;
    if l == 0 {
        return Err(AlgebraError::Precondition("need l >= 1".into()));
    }
    let a = alpha(ctx)?;
    let rows = psi_exponents(n, l)?;
    let cols = columns(n, l)?;
    let index: HashMap<&PsiExponent, usize> = rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut g = PolyMatrix::zero(ctx.ring(), rows.len(), cols.len());
    for (c, (mu, j)) in cols.iter().enumerate() {
        for i in 0..n {
            let r = index[&add_one(mu, i)];
            g.set(r, c, a.get(i, j - 1).clone());
        }
    }
    assemble(ctx, n, l, rows, cols, g)
}

/// `gamma_l` from `gamma_(l-1)`: for each `j` a copy placed at the rows and
/// columns whose labels contain `m_nj`. Overlapping copies must agree.
pub fn gamma_matrix_inductive<K: Field>(ctx: &RingCtx<K>, l: usize) -> Result<PresentationData<K>> {
    let n = square_n(ctx)?;
    if l == 0 {
        return Err(AlgebraError::Precondition("need l >= 1".into()));
    }
    if l == 1 {
        let rows = psi_exponents(n, 1)?;
        let cols = columns(n, 1)?;
        return assemble(ctx, n, 1, rows, cols, alpha(ctx)?);
    }
    let prev = gamma_matrix_inductive(ctx, l - 1)?;
    let prev_rows = psi_exponents(n, l - 1)?;
    let prev_cols = columns(n, l - 1)?;
    let rows = psi_exponents(n, l)?;
    let cols = columns(n, l)?;
    let ri: HashMap<&PsiExponent, usize> = rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let ci: HashMap<(&PsiExponent, usize), usize> = cols.iter().enumerate().map(|(i, (e, j))| ((e, *j), i)).collect();
    let mut g = PolyMatrix::zero(ctx.ring(), rows.len(), cols.len());
    let mut placed = vec![false; rows.len() * cols.len()];
    for j in 0..n {
        for (pr, lam) in prev_rows.iter().enumerate() {
            let r = ri[&add_one(lam, j)];
            for (pc, (mu, k)) in prev_cols.iter().enumerate() {
                let c = ci[&(&add_one(mu, j), *k)];
                let v = prev.gamma.get(pr, pc);
                if placed[r * cols.len() + c] {
                    if g.get(r, c) != v {
                        return Err(AlgebraError::Contract(format!(
                            "overlapping copies disagree at ({}, {})",
                            psi_label(n, &rows[r]),
                            c
                        )));
                    }
                } else {
                    g.set(r, c, v.clone());
                    placed[r * cols.len() + c] = true;
                }
            }
        }
    }
    assemble(ctx, n, l, rows, cols, g)
}

/// Both inclusions between `im gamma` and `ker eps`, checked by module
/// Groebner bases.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExactnessCertificate {
    pub n: usize,
    pub l: usize,
    /// `eps gamma = 0`, i.e. every column of `gamma` lies in `ker eps`.
    pub image_in_kernel: bool,
    /// Every computed syzygy of `eps` is a combination of `gamma`'s columns.
    pub kernel_in_image: bool,
    pub kernel_generators: usize,
    pub steps: u64,
}

impl ExactnessCertificate {
    pub fn exact(&self) -> bool {
        self.image_in_kernel && self.kernel_in_image
    }
}

/// The presentation of `p^l` with a certificate that `im gamma_l = ker eps`.
/// `step_cap` bounds the Groebner computations.
pub fn presentation_p_power<K: Field>(
    ctx: &RingCtx<K>,
    l: usize,
    step_cap: Option<u64>,
) -> Result<(PresentationData<K>, ExactnessCertificate)> {
    let pd = gamma_matrix(ctx, l)?;
    let q = ctx.quotient();
    let image_in_kernel = q.is_zero_matrix(&pd.epsilon.mul(&pd.gamma)?);
    let syz = syzygies(&pd.epsilon, q, &SyzOptions { step_cap, ..Default::default() })?;
    if !syz.complete {
        return Err(AlgebraError::Infeasible(format!("syzygies of eps for n={}, l={l} hit the step cap", pd.n)));
    }
    let basis = ModuleBasis::new(&pd.gamma, q, &ModuleOptions { step_cap, ..Default::default() })?;
    if !basis.complete() {
        return Err(AlgebraError::Infeasible("module basis of gamma hit the step cap".into()));
    }
    let mut kernel_in_image = true;
    for c in syz.matrix.columns() {
        if let Membership::NonMember { .. } = basis.member(&c)? {
            kernel_in_image = false;
            break;
        }
    }
    let cert = ExactnessCertificate {
        n: pd.n,
        l,
        image_in_kernel,
        kernel_in_image,
        kernel_generators: syz.matrix.cols(),
        steps: syz.steps,
    };
    Ok((pd, cert))
}
