use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::minor::{subsets, MinorSymbol};
use super::ring::{matrix_variables, RingCtx};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::linalg::{sparse_from_pairs, Echelon, SparseVec};
use crate::exact_algebra::{Field, Monomial, PolyRing, Polynomial, TermOrder};
use crate::groebner::{IdealBasis, Quotient};

/// `[a|b] <= [c|d]` iff `u >= v` and `a_i <= c_i`, `b_i <= d_i` for `i <= v`,
/// where `u`, `v` are the sizes.
pub fn poset_leq(x: &MinorSymbol, y: &MinorSymbol) -> bool {
    let (u, v) = (x.size(), y.size());
    u >= v && (0..v).all(|i| x.rows[i] <= y.rows[i] && x.cols[i] <= y.cols[i])
}

/// Sort key of a linear extension of the poset.
fn key(s: &MinorSymbol) -> (std::cmp::Reverse<usize>, &[usize], &[usize]) {
    (std::cmp::Reverse(s.size()), &s.rows, &s.cols)
}

/// Total order refining [`poset_leq`].
pub fn linear_cmp(a: &MinorSymbol, b: &MinorSymbol) -> Ordering {
    key(a).cmp(&key(b))
}

/// The poset of minors of size `< t` of a generic `m x n` matrix. `t` may be
/// `min(m, n) + 1`, which gives the polynomial ring itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetPi {
    pub m: usize,
    pub n: usize,
    pub t: usize,
}

impl PosetPi {
    pub fn new(m: usize, n: usize, t: usize) -> Result<Self> {
        if m == 0 || n == 0 || t < 2 || t > m.min(n) + 1 {
            return Err(AlgebraError::Precondition(format!("bad poset shape m={m}, n={n}, t={t}")));
        }
        Ok(PosetPi { m, n, t })
    }

    /// Elements in increasing linear-extension order.
    pub fn elements(&self) -> Vec<MinorSymbol> {
        let mut v = MinorSymbol::all_up_to(self.m, self.n, self.t - 1);
        v.sort_by(linear_cmp);
        v
    }

    pub fn contains(&self, s: &MinorSymbol) -> bool {
        s.size() < self.t && s.check_bounds(self.m, self.n).is_ok()
    }

    pub fn leq(&self, a: &MinorSymbol, b: &MinorSymbol) -> bool {
        poset_leq(a, b)
    }

    /// The generators `[1..t-1 | cols]` of the row ideal `p`.
    pub fn psi(&self) -> Vec<MinorSymbol> {
        let rows: Vec<usize> = (1..self.t).collect();
        let mut v: Vec<MinorSymbol> = subsets(self.n, self.t - 1)
            .into_iter()
            .map(|c| MinorSymbol { rows: rows.clone(), cols: c })
            .collect();
        v.sort_by(linear_cmp);
        v
    }
}

/// A product `z_1 z_2 ... z_k` of a chain `z_1 <= z_2 <= ...` in the poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StdMonomial {
    pub factors: Vec<MinorSymbol>,
}

impl StdMonomial {
    pub fn one() -> Self {
        StdMonomial { factors: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.size()).sum()
    }

    pub fn is_standard(&self) -> bool {
        self.factors.windows(2).all(|w| poset_leq(&w[0], &w[1]))
    }

    /// Whether every factor is one of `psi`.
    pub fn in_psi(&self, psi: &[MinorSymbol]) -> bool {
        self.factors.iter().all(|f| psi.contains(f))
    }

    /// Compares largest factors first.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let a = self.factors.iter().rev();
        let b = other.factors.iter().rev();
        for (x, y) in a.zip(b) {
            match linear_cmp(x, y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }

    pub fn to_poly<K: Field>(&self, ring: &std::sync::Arc<PolyRing>) -> Polynomial<K> {
        let mut acc = Polynomial::one(ring);
        for f in &self.factors {
            acc = &acc * &super::ring::generic_minor(ring, f);
        }
        acc
    }
}

impl fmt::Display for StdMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join("·"))
    }
}

/// Row and column content (multiplicity of each index) of a product.
fn content(factors: &[MinorSymbol], m: usize, n: usize) -> (Vec<u32>, Vec<u32>) {
    let mut r = vec![0u32; m + 1];
    let mut c = vec![0u32; n + 1];
    for f in factors {
        for &i in &f.rows {
            r[i] += 1;
        }
        for &j in &f.cols {
            c[j] += 1;
        }
    }
    (r, c)
}

/// Standard monomials of total degree `d` built from `pool` (which must be
/// sorted increasingly), optionally with prescribed row/column content.
/// Listed with the largest factors first in decreasing lexicographic order.
fn chains(pool: &[MinorSymbol], d: usize, target: Option<&(Vec<u32>, Vec<u32>)>, m: usize, n: usize) -> Vec<StdMonomial> {
    // build descending: pick z_k >= z_{k-1} >= ... choosing from the top
    struct Walk<'a> {
        pool: &'a [MinorSymbol],
        target: Option<&'a (Vec<u32>, Vec<u32>)>,
        out: Vec<StdMonomial>,
        rows: Vec<u32>,
        cols: Vec<u32>,
    }
    fn go(w: &mut Walk, cur: &mut Vec<usize>, left: usize) {
        if left == 0 {
            if let Some(t) = w.target {
                if w.rows != t.0 || w.cols != t.1 {
                    return;
                }
            }
            let mut f: Vec<MinorSymbol> = cur.iter().map(|&i| w.pool[i].clone()).collect();
            f.reverse();
            w.out.push(StdMonomial { factors: f });
            return;
        }
        let top = cur.last().copied().unwrap_or(w.pool.len() - 1);
        for i in (0..=top).rev() {
            let z = &w.pool[i];
            if z.size() > left {
                continue;
            }
            if let Some(&prev) = cur.last() {
                if !poset_leq(z, &w.pool[prev]) {
                    continue;
                }
            }
            if let Some(t) = w.target {
                if z.rows.iter().any(|&r| w.rows[r] + 1 > t.0[r]) || z.cols.iter().any(|&c| w.cols[c] + 1 > t.1[c]) {
                    continue;
                }
            }
            for &r in &z.rows {
                w.rows[r] += 1;
            }
            for &c in &z.cols {
                w.cols[c] += 1;
            }
            cur.push(i);
            go(w, cur, left - z.size());
            cur.pop();
            for &r in &z.rows {
                w.rows[r] -= 1;
            }
            for &c in &z.cols {
                w.cols[c] -= 1;
            }
        }
    }
    if pool.is_empty() {
        return if d == 0 { vec![StdMonomial::one()] } else { Vec::new() };
    }
    let mut w = Walk {
        pool,
        target,
        out: Vec::new(),
        rows: vec![0; m + 1],
        cols: vec![0; n + 1],
    };
    go(&mut w, &mut Vec::new(), d);
    w.out
}

/// All standard monomials of degree `d`, or with `restrict_psi` only the
/// products of the generators of `p`.
pub fn enumerate_std_monomials(pi: &PosetPi, d: usize, restrict_psi: bool) -> Vec<StdMonomial> {
    let pool = if restrict_psi { pi.psi() } else { pi.elements() };
    chains(&pool, d, None, pi.m, pi.n)
}

/// Products of exactly `l` generators of `p`, in the order used to label
/// the rows of the presentation matrix of `p^l`.
pub fn psi_monomials(pi: &PosetPi, l: usize) -> Vec<StdMonomial> {
    enumerate_std_monomials(pi, l * (pi.t - 1), true)
}

/// Expresses products of poset elements in the standard monomial basis.
#[derive(Clone, Debug)]
pub struct Straightener<K: Field> {
    pi: PosetPi,
    ring: std::sync::Arc<PolyRing>,
    quotient: Quotient<K>,
}

impl<K: Field> Straightener<K> {
    /// `t <= min(m, n)` uses `R_t`, `t = min(m, n) + 1` the polynomial ring.
    pub fn new(m: usize, n: usize, t: usize) -> Result<Self> {
        let pi = PosetPi::new(m, n, t)?;
        if t <= m.min(n) {
            let ctx = RingCtx::<K>::determinantal(m, n, t)?;
            return Ok(Self::from_ctx(&ctx));
        }
        let ring = PolyRing::new(matrix_variables(m, n), TermOrder::GrevLex);
        let quotient = Quotient::polynomial_ring(&ring);
        Ok(Straightener { pi, ring, quotient })
    }

    pub fn from_ctx(ctx: &RingCtx<K>) -> Self {
        let super::RingKind::Determinantal { m, n, t } = ctx.kind() else {
            panic!("straightening needs a determinantal ring")
        };
        Straightener {
            pi: PosetPi { m, n, t },
            ring: ctx.ring().clone(),
            quotient: ctx.quotient().clone(),
        }
    }

    pub fn poset(&self) -> &PosetPi {
        &self.pi
    }

    pub fn ring(&self) -> &std::sync::Arc<PolyRing> {
        &self.ring
    }

    pub fn quotient(&self) -> &Quotient<K> {
        &self.quotient
    }

    pub fn ideal(&self) -> &IdealBasis<K> {
        self.quotient.ideal()
    }

    /// Writes `prod factors` as `sum c * mu` over standard monomials `mu`,
    /// then re-expands and checks the identity modulo the defining ideal.
    pub fn straighten(&self, factors: &[MinorSymbol]) -> Result<Vec<(K, StdMonomial)>> {
        for f in factors {
            if !self.pi.contains(f) {
                return Err(AlgebraError::Precondition(format!("{f} is not in the poset")));
            }
        }
        let prod = StdMonomial { factors: factors.to_vec() }.to_poly::<K>(&self.ring);
        let target = self.quotient.normal_form(&prod);
        let d = factors.iter().map(|f| f.size()).sum();
        let cont = content(factors, self.pi.m, self.pi.n);
        let pool = self.pi.elements();
        let cands = chains(&pool, d, Some(&cont), self.pi.m, self.pi.n);

        let mut index: HashMap<Monomial, usize> = HashMap::new();
        let mut coords = |p: &Polynomial<K>| -> SparseVec<K> {
            let pairs = p
                .terms()
                .iter()
                .map(|(mo, c)| {
                    let n = index.len();
                    (*index.entry(mo.clone()).or_insert(n), c.clone())
                })
                .collect();
            sparse_from_pairs(pairs)
        };
        let mut ech = Echelon::new(true);
        for c in &cands {
            let v = coords(&self.quotient.normal_form(&c.to_poly(&self.ring)));
            ech.insert(v);
        }
        let tv = coords(&target);
        let sol = ech.solve(&tv).ok_or_else(|| {
            AlgebraError::Contract("product is not in the span of standard monomials".into())
        })?;
        let mut out: Vec<(K, StdMonomial)> = sol.into_iter().map(|(i, c)| (c, cands[i].clone())).collect();
        out.sort_by(|a, b| b.1.lex_cmp(&a.1));

        let mut back = Polynomial::zero(&self.ring);
        for (c, mu) in &out {
            back = &back + &mu.to_poly::<K>(&self.ring).scale(c);
        }
        if !self.quotient.is_zero(&(&back - &prod)) {
            return Err(AlgebraError::Contract("straightening failed to re-expand".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{Rational, F32003};

    fn s(x: &str) -> MinorSymbol {
        x.parse().unwrap()
    }

    #[test]
    fn order_examples() {
        assert!(poset_leq(&s("[1|1]"), &s("[2|2]")));
        assert!(!poset_leq(&s("[1|2]"), &s("[2|1]")));
        assert!(!poset_leq(&s("[2|1]"), &s("[1|2]")));
        assert!(poset_leq(&s("[1,2|1,2]"), &s("[1|2]")));
        assert!(!poset_leq(&s("[1|2]"), &s("[1,2|1,2]")));
    }

    #[test]
    fn poset_axioms_and_linear_extension() {
        for n in 2..=3 {
            for t in 2..=n + 1 {
                let pi = PosetPi::new(n, n, t).unwrap();
                let el = pi.elements();
                for a in &el {
                    assert!(poset_leq(a, a));
                    for b in &el {
                        if a != b && poset_leq(a, b) {
                            assert!(!poset_leq(b, a));
                            assert_eq!(linear_cmp(a, b), Ordering::Less);
                        }
                        for c in &el {
                            if poset_leq(a, b) && poset_leq(b, c) {
                                assert!(poset_leq(a, c));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn psi_rows_for_three_by_three() {
        let pi = PosetPi::new(3, 3, 3).unwrap();
        let got: Vec<String> = psi_monomials(&pi, 2).iter().map(|m| m.to_string()).collect();
        // m31 = [1,2|2,3], m32 = [1,2|1,3], m33 = [1,2|1,2]; factors listed smallest first
        assert_eq!(
            got,
            vec![
                "[1,2|2,3]·[1,2|2,3]",
                "[1,2|1,3]·[1,2|2,3]",
                "[1,2|1,2]·[1,2|2,3]",
                "[1,2|1,3]·[1,2|1,3]",
                "[1,2|1,2]·[1,2|1,3]",
                "[1,2|1,2]·[1,2|1,2]",
            ]
        );
        assert_eq!(enumerate_std_monomials(&pi, 0, false), vec![StdMonomial::one()]);
    }

    #[test]
    fn basis_count_matches_normal_monomials() {
        for n in 2..=3usize {
            let ctx: RingCtx<F32003> = RingCtx::gorenstein(n).unwrap();
            let pi = PosetPi::new(n, n, n).unwrap();
            let top = if n == 2 { 6 } else { 4 };
            for d in 0..=top {
                assert_eq!(
                    enumerate_std_monomials(&pi, d, false).len(),
                    ctx.dim_piece(d as u32),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn straighten_two_by_two_in_polynomial_ring() {
        let st: Straightener<Rational> = Straightener::new(2, 2, 3).unwrap();
        let out = st.straighten(&[s("[1|2]"), s("[2|1]")]).unwrap();
        let shown: Vec<(String, String)> = out.iter().map(|(c, m)| (c.to_string(), m.to_string())).collect();
        assert_eq!(
            shown,
            vec![
                ("1".to_string(), "[1|1]·[2|2]".to_string()),
                ("-1".to_string(), "[1,2|1,2]".to_string())
            ]
        );
        let same = st.straighten(&[s("[1|1]"), s("[2|2]")]).unwrap();
        assert_eq!(same.len(), 1);
        assert!(same[0].0.is_one());
        assert!(st.straighten(&[s("[1,2|1,2]"), s("[1,2|1,2]")]).unwrap().len() == 1);
        let r3: Straightener<Rational> = Straightener::new(2, 2, 2).unwrap();
        assert!(r3.straighten(&[s("[1,2|1,2]")]).is_err());
    }

    #[test]
    fn straightened_incomparable_pairs_have_a_common_lower_factor() {
        let st: Straightener<F32003> = Straightener::new(3, 3, 3).unwrap();
        let el = st.poset().elements();
        let mut checked = 0;
        for a in &el {
            for b in &el {
                if linear_cmp(a, b) != Ordering::Less || poset_leq(a, b) || poset_leq(b, a) {
                    continue;
                }
                for (_, mu) in st.straighten(&[a.clone(), b.clone()]).unwrap() {
                    assert!(mu.is_standard());
                    let low = &mu.factors[0];
                    assert!(poset_leq(low, a) && poset_leq(low, b), "{a} {b} -> {mu}");
                }
                checked += 1;
            }
        }
        assert!(checked > 20);
    }
}
