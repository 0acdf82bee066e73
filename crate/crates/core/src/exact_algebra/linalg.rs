//! Sparse row echelon forms over an exact field.

use super::field::Field;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no
/// zero values.
pub type SparseVec<K> = Vec<(usize, K)>;

/// `a - c * b`
pub fn axpy<K: Field>(a: &[(usize, K)], b: &[(usize, K)], c: &K) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul(c).neg()));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.sub_mul_assign(&b[j].1, c);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_pairs<K: Field>(mut v: Vec<(usize, K)>) -> SparseVec<K> {
    v.sort_by_key(|p| p.0);
    let mut out: SparseVec<K> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(l) if l.0 == i => l.1 = l.1.add(&c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|p| !p.1.is_zero());
    out
}

#[derive(Clone, Debug)]
struct Row<K> {
    v: SparseVec<K>,
    comb: SparseVec<K>,
}

/// Incrementally built echelon basis of a span, optionally recording how
/// each basis row arose from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    rows: Vec<Row<K>>,
    pivot_of: std::collections::HashMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// Result of inserting a vector.
#[derive(Clone, Debug)]
pub enum Insert<K> {
    /// New pivot row.
    Independent,
    /// Linear dependency among the inserted vectors (when tracking): the
    /// combination is zero.
    Dependent(SparseVec<K>),
}

impl<K: Field> Echelon<K> {
    pub fn new(track: bool) -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_of: Default::default(),
            track,
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_inner(&self, mut v: SparseVec<K>, mut comb: SparseVec<K>, full: bool) -> (SparseVec<K>, SparseVec<K>) {
        let mut done: SparseVec<K> = Vec::new();
        loop {
            let Some((lead, c)) = v.first().cloned() else { break };
            match self.pivot_of.get(&lead) {
                Some(&r) => {
                    let row = &self.rows[r];
                    let f = c.div(&row.v[0].1);
                    v = axpy(&v, &row.v, &f);
                    if self.track {
                        comb = axpy(&comb, &row.comb, &f);
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    done.push(v.remove(0));
                }
            }
        }
        if full {
            (done, comb)
        } else {
            (v, comb)
        }
    }

    /// Inserts `v` as input vector number `self.inserted()`.
    pub fn insert(&mut self, v: SparseVec<K>) -> Insert<K> {
        let id = self.inserted;
        self.inserted += 1;
        let comb = if self.track { vec![(id, K::one())] } else { Vec::new() };
        let (r, comb) = self.reduce_inner(v, comb, false);
        if r.is_empty() {
            return Insert::Dependent(comb);
        }
        self.pivot_of.insert(r[0].0, self.rows.len());
        self.rows.push(Row { v: r, comb });
        Insert::Independent
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce_inner(v.clone(), Vec::new(), false).0.is_empty()
    }

    /// Coefficients `c` (over inserted vectors) with `sum c_k * input_k == v`,
    /// when `v` is in the span. Requires tracking.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<SparseVec<K>> {
        assert!(self.track, "solve needs a tracking echelon");
        let (r, comb) = self.reduce_inner(v.clone(), Vec::new(), false);
        if !r.is_empty() {
            return None;
        }
        // v - sum(f * row) = 0 and comb accumulated -sum(f * row.comb)
        Some(comb.into_iter().map(|(i, c)| (i, c.neg())).collect())
    }

    /// Fully reduced remainder of `v` (zero iff `v` is in the span).
    pub fn remainder(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_inner(v.clone(), Vec::new(), true).0
    }

    /// The pivot columns.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.v[0].0).collect()
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<K: Field>(vs: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new(false);
    for v in vs {
        e.insert(v.clone());
    }
    e.rank()
}

/// Basis of the kernel of the map sending basis vector `k` to `vs[k]`.
pub fn kernel<K: Field>(vs: &[SparseVec<K>]) -> Vec<SparseVec<K>> {
    let mut e = Echelon::new(true);
    let mut out = Vec::new();
    for v in vs {
        if let Insert::Dependent(c) = e.insert(v.clone()) {
            out.push(c);
        }
    }
    out
}
