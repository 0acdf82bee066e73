use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::parse::parse_poly;
use super::poly::{same_ring, PolyRing, Polynomial};
use crate::error::{AlgebraError, Result};

/// Dense matrix of polynomials, optionally graded.
///
/// With twists set, entry `(i, j)` is homogeneous of degree
/// `col_twists[j] - row_twists[i]` (or zero).
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<K: Field> {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<K>>,
    row_twists: Option<Vec<i32>>,
    col_twists: Option<Vec<i32>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
            row_twists: None,
            col_twists: None,
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial<K>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(AlgebraError::IncompatibleContext(
                "matrix entry from another ring".into(),
            ));
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries,
            row_twists: None,
            col_twists: None,
        })
    }

    pub fn from_columns(ring: &Arc<PolyRing>, nrows: usize, cols: &[Vec<Polynomial<K>>]) -> Self {
        let mut m = Self::zero(ring, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length");
            for (i, p) in col.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    /// Parses a matrix given as rows of polynomial strings.
    pub fn parse(ring: &Arc<PolyRing>, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Polynomial<K> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<K>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row_twists(&self) -> Option<&[i32]> {
        self.row_twists.as_deref()
    }

    pub fn col_twists(&self) -> Option<&[i32]> {
        self.col_twists.as_deref()
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<K>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial<K>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial<K>> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Attaches twists after checking every entry's degree against them.
    pub fn with_twists(mut self, row_twists: Vec<i32>, col_twists: Vec<i32>) -> Result<Self> {
        if row_twists.len() != self.rows || col_twists.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch("twist lengths".into()));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let want = col_twists[j] - row_twists[i];
                match p.homogeneous_degree() {
                    Some(d) if d as i32 == want => {}
                    _ => {
                        return Err(AlgebraError::Contract(format!(
                            "entry ({i},{j}) = {p} is not homogeneous of degree {want}"
                        )))
                    }
                }
            }
        }
        self.row_twists = Some(row_twists);
        self.col_twists = Some(col_twists);
        Ok(self)
    }

    /// Column twists making every entry homogeneous, given row twists.
    /// Fails when a column mixes degrees; zero columns get `default`.
    pub fn infer_col_twists(&self, row_twists: &[i32], default: i32) -> Result<Vec<i32>> {
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut tw: Option<i32> = None;
            for (i, rt) in row_twists.iter().enumerate().take(self.rows) {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let d = p.homogeneous_degree().ok_or_else(|| {
                    AlgebraError::Contract(format!("entry ({i},{j}) is not homogeneous"))
                })? as i32;
                let t = d + rt;
                match tw {
                    None => tw = Some(t),
                    Some(s) if s == t => {}
                    Some(_) => {
                        return Err(AlgebraError::Contract(format!(
                            "column {j} is not homogeneous for the given row twists"
                        )))
                    }
                }
            }
            out.push(tw.unwrap_or(default));
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::IncompatibleContext("matrices over different rings".into()));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut terms = Vec::new();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    terms.extend((a * b).into_terms());
                }
                out.set(i, j, Polynomial::from_terms(&self.ring, terms));
            }
        }
        if let (Some(rt), Some(ct), Some(ort), Some(oct)) = (
            &self.row_twists,
            &self.col_twists,
            &other.row_twists,
            &other.col_twists,
        ) {
            if ct == ort {
                out.row_twists = Some(rt.clone());
                out.col_twists = Some(oct.clone());
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut terms = Vec::new();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        terms.extend((a * x).into_terms());
                    }
                }
                Polynomial::from_terms(&self.ring, terms)
            })
            .collect())
    }

    pub fn transpose(&self) -> PolyMatrix<K> {
        let mut out = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Polynomial<K>) -> PolyMatrix<K> {
        self.map(|p| p * c)
    }

    pub fn map(&self, f: impl Fn(&Polynomial<K>) -> Polynomial<K>) -> PolyMatrix<K> {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            row_twists: self.row_twists.clone(),
            col_twists: self.col_twists.clone(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&Polynomial<K>) -> Result<Polynomial<K>>,
    ) -> Result<PolyMatrix<K>> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        let ring = entries.first().map_or(self.ring.clone(), |p| p.ring().clone());
        Ok(PolyMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
            row_twists: self.row_twists.clone(),
            col_twists: self.col_twists.clone(),
        })
    }

    /// Block-diagonal sum of `copies` copies of `self`.
    pub fn direct_sum_power(&self, copies: usize) -> PolyMatrix<K> {
        let mut out = PolyMatrix::zero(&self.ring, self.rows * copies, self.cols * copies);
        for c in 0..copies {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out.set(c * self.rows + i, c * self.cols + j, self.get(i, j).clone());
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
        if self.rows != other.rows {
            return Err(AlgebraError::DimensionMismatch("hconcat row counts".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(PolyMatrix::from_columns(&self.ring, self.rows, &cols))
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    /// CSV with optional header/row labels; entries in the text format.
    pub fn to_csv(&self, row_labels: Option<&[String]>, col_labels: Option<&[String]>) -> String {
        let mut out = String::new();
        let quote = |s: &str| {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        if let Some(cl) = col_labels {
            let mut cells = Vec::new();
            if row_labels.is_some() {
                cells.push(String::new());
            }
            cells.extend(cl.iter().map(|s| quote(s)));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for i in 0..self.rows {
            let mut cells = Vec::new();
            if let Some(rl) = row_labels {
                cells.push(quote(&rl[i]));
            }
            cells.extend((0..self.cols).map(|j| quote(&self.get(i, j).to_string())));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_string_rows(),
            row_twists: self.row_twists.clone(),
            col_twists: self.col_twists.clone(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_json(ring: &Arc<PolyRing>, j: &MatrixJson) -> Result<Self> {
        let rows = j
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut m = if rows.is_empty() {
            PolyMatrix::zero(ring, j.rows, j.cols)
        } else {
            Self::from_rows(ring, rows)?
        };
        if m.rows != j.rows || m.cols != j.cols {
            return Err(AlgebraError::DimensionMismatch("json matrix shape".into()));
        }
        if let (Some(r), Some(c)) = (&j.row_twists, &j.col_twists) {
            m = m.with_twists(r.clone(), c.clone())?;
        }
        Ok(m)
    }
}

/// JSON form of a matrix: nested arrays of polynomial strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_twists: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_twists: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_labels: Option<Vec<String>>,
}

impl<K: Field> fmt::Debug for PolyMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.to_string_rows()[i])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::field::Rational;
    use crate::exact_algebra::monomial::TermOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(
            ["x[1,2]", "x[1,1]", "x[2,2]", "x[2,1]"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            TermOrder::GrevLex,
        )
    }

    #[test]
    fn identity_is_neutral() {
        let r = ring();
        let b = PolyMatrix::<Rational>::parse(&r, &[&["x[2,2]", "x[2,1]"], &["x[1,2]", "x[1,1]"]])
            .unwrap();
        assert_eq!(PolyMatrix::identity(&r, 2).mul(&b).unwrap(), b);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let r = ring();
        let a = PolyMatrix::<Rational>::zero(&r, 2, 3);
        assert!(matches!(a.mul(&a), Err(AlgebraError::DimensionMismatch(_))));
    }

    #[test]
    fn twists_compose_and_are_checked() {
        let r = ring();
        let a = PolyMatrix::<Rational>::parse(
            &r,
            &[&["x[1,1]", "-x[2,1]"], &["-x[1,2]", "x[2,2]"]],
        )
        .unwrap()
        .with_twists(vec![1, 1], vec![2, 2])
        .unwrap();
        let b = PolyMatrix::<Rational>::parse(&r, &[&["x[2,2]", "x[2,1]"], &["x[1,2]", "x[1,1]"]])
            .unwrap()
            .with_twists(vec![2, 2], vec![3, 3])
            .unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.row_twists(), Some(&[1, 1][..]));
        assert_eq!(ab.col_twists(), Some(&[3, 3][..]));
        assert!(b.clone().with_twists(vec![0, 0], vec![3, 3]).is_err());
    }

    #[test]
    fn csv_and_json_forms() {
        let r = ring();
        let a = PolyMatrix::<Rational>::parse(&r, &[&["x[1,1]", "-x[2,1]"]]).unwrap();
        assert_eq!(a.to_csv(None, None), "\"x[1,1]\",\"-x[2,1]\"\n");
        let labelled = a.to_csv(Some(&["e".into()]), Some(&["c1".into(), "c2".into()]));
        assert_eq!(labelled, ",c1,c2\ne,\"x[1,1]\",\"-x[2,1]\"\n");
        let j = a.to_json();
        assert_eq!(PolyMatrix::from_json(&r, &j).unwrap(), a);
    }
}
