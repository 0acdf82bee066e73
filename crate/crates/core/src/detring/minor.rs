use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyRing, Polynomial};

/// A minor `[a_1..a_u | b_1..b_u]` of the generic matrix, 1-based, both
/// index lists strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorSymbol {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSymbol {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let inc = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.first().map_or(true, |&a| a >= 1);
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(AlgebraError::Parse(format!(
                "minor needs equally many rows and columns, got {rows:?} | {cols:?}"
            )));
        }
        if !inc(&rows) || !inc(&cols) {
            return Err(AlgebraError::Parse(format!(
                "minor indices must be increasing and 1-based: {rows:?} | {cols:?}"
            )));
        }
        Ok(MinorSymbol { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn check_bounds(&self, m: usize, n: usize) -> Result<()> {
        if self.rows.iter().any(|&i| i > m) || self.cols.iter().any(|&j| j > n) {
            return Err(AlgebraError::OutOfRange(format!("{self} does not fit a {m}x{n} matrix")));
        }
        Ok(())
    }

    /// All `u`-minors of an `m x n` matrix, ordered by rows then columns.
    pub fn all(m: usize, n: usize, u: usize) -> Vec<MinorSymbol> {
        let mut out = Vec::new();
        for rows in subsets(m, u) {
            for cols in subsets(n, u) {
                out.push(MinorSymbol { rows: rows.clone(), cols });
            }
        }
        out
    }

    /// All minors of size `1..=max`.
    pub fn all_up_to(m: usize, n: usize, max: usize) -> Vec<MinorSymbol> {
        (1..=max.min(m).min(n)).flat_map(|u| Self::all(m, n, u)).collect()
    }
}

/// Increasing `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n + 1 - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

impl fmt::Display for MinorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}|{}]", j(&self.rows), j(&self.cols))
    }
}

impl FromStr for MinorSymbol {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| AlgebraError::Parse(format!("expected [rows|cols], got {s:?}")))?;
        let (a, b) = inner
            .split_once('|')
            .ok_or_else(|| AlgebraError::Parse(format!("missing '|' in {s:?}")))?;
        let list = |x: &str| -> Result<Vec<usize>> {
            x.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| AlgebraError::Parse(format!("bad index {p:?} in {s:?}")))
                })
                .collect()
        };
        MinorSymbol::new(list(a)?, list(b)?)
    }
}

/// Determinant of a square matrix of polynomials (Laplace expansion along
/// rows, memoized on the set of remaining columns).
pub fn det<K: Field>(ring: &Arc<PolyRing>, rows: &[Vec<Polynomial<K>>]) -> Polynomial<K> {
    let u = rows.len();
    if u == 0 {
        return Polynomial::one(ring);
    }
    assert!(u <= 63 && rows.iter().all(|r| r.len() == u), "det needs a square matrix");
    let mut memo: HashMap<u64, Polynomial<K>> = HashMap::new();
    det_rec(ring, rows, 0, (1u64 << u) - 1, &mut memo)
}

fn det_rec<K: Field>(
    ring: &Arc<PolyRing>,
    rows: &[Vec<Polynomial<K>>],
    r: usize,
    cols: u64,
    memo: &mut HashMap<u64, Polynomial<K>>,
) -> Polynomial<K> {
    if cols == 0 {
        return Polynomial::one(ring);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(ring);
    let mut sign_neg = false;
    for j in 0..rows.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let e = &rows[r][j];
        if !e.is_zero() {
            let sub = det_rec(ring, rows, r + 1, cols & !(1 << j), memo);
            let t = e * &sub;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Determinant of the generic submatrix with the given rows and columns in
/// the given order; columns need not be increasing and a repeated column
/// gives zero.
pub fn det_of<K: Field>(ring: &Arc<PolyRing>, entry: impl Fn(usize, usize) -> Polynomial<K>, rows: &[usize], cols: &[usize]) -> Polynomial<K> {
    assert_eq!(rows.len(), cols.len());
    let mut seen = cols.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Polynomial::zero(ring);
    }
    let m: Vec<Vec<Polynomial<K>>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| entry(i, j)).collect())
        .collect();
    det(ring, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{parse_poly, Rational, TermOrder};

    #[test]
    fn symbol_round_trip() {
        let s: MinorSymbol = "[1,2|1,3]".parse().unwrap();
        assert_eq!(s.rows, vec![1, 2]);
        assert_eq!(s.to_string(), "[1,2|1,3]");
        assert!("[1,1|1,2]".parse::<MinorSymbol>().is_err());
        assert!("[1|1,2]".parse::<MinorSymbol>().is_err());
        assert!("1,2|1,2".parse::<MinorSymbol>().is_err());
        assert!("[0|1]".parse::<MinorSymbol>().is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(MinorSymbol::all(3, 3, 2).len(), 9);
        assert_eq!(MinorSymbol::all(2, 4, 2).len(), 6);
        assert_eq!(MinorSymbol::all_up_to(3, 3, 2).len(), 18);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(2, 3).len(), 0);
    }

    #[test]
    fn permuted_columns_change_sign() {
        let r = PolyRing::new(vec!["a".into(), "b".into(), "c".into(), "d".into()], TermOrder::GrevLex);
        let names = [["a", "b"], ["c", "d"]];
        let entry = |i: usize, j: usize| -> Polynomial<Rational> { parse_poly(&r, names[i - 1][j - 1]).unwrap() };
        let d = det_of(&r, entry, &[1, 2], &[1, 2]);
        assert_eq!(d, parse_poly(&r, "a*d - b*c").unwrap());
        assert_eq!(det_of(&r, entry, &[1, 2], &[2, 1]), -&d);
        assert!(det_of(&r, entry, &[1, 2], &[2, 2]).is_zero());
    }
}
