//! Labeled dense matrices over a [`Field`].
//!
//! Every row and column carries a [`Label`]; labels on one axis are pairwise
//! distinct. Positional indexing follows label order and is derived, so all
//! constructions that combine matrices work on labels.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::scalar::{Field, Gf2, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: Vec<Label>,
    cols: Vec<Label>,
    data: Vec<F>,
}

pub type RatMatrix = Matrix<Rational>;
pub type BinMatrix = Matrix<Gf2>;

fn check_distinct(labels: &[Label]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn index_of(labels: &[Label], l: &Label) -> Option<usize> {
    labels.iter().position(|x| x == l)
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: Vec<Label>, cols: Vec<Label>, data: Vec<F>) -> Result<Self> {
        check_distinct(&rows)?;
        check_distinct(&cols)?;
        if data.len() != rows.len() * cols.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows.len(),
                cols.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Label>, cols: Vec<Label>, grid: Vec<Vec<F>>) -> Result<Self> {
        if grid.len() != rows.len() || grid.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::ShapeMismatch("ragged grid".into()));
        }
        Matrix::new(rows, cols, grid.into_iter().flatten().collect())
    }

    /// Integer grid mapped into `F`.
    pub fn from_ints(rows: Vec<Label>, cols: Vec<Label>, grid: &[&[i64]]) -> Result<Self> {
        let grid = grid.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect();
        Matrix::from_rows(rows, cols, grid)
    }

    pub fn zeros(rows: Vec<Label>, cols: Vec<Label>) -> Result<Self> {
        let n = rows.len() * cols.len();
        Matrix::new(rows, cols, vec![F::zero(); n])
    }

    /// Square identity whose row and column labels are both `labels`.
    pub fn identity(labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        let mut data = vec![F::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = F::one();
        }
        Matrix::new(labels.clone(), labels, data)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.cols
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols.len() + j]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.entry(i, j).clone()
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: F) {
        let n = self.cols.len();
        self.data[i * n + j] = v;
    }

    pub fn row_index(&self, l: &Label) -> Option<usize> {
        index_of(&self.rows, l)
    }

    pub fn col_index(&self, l: &Label) -> Option<usize> {
        index_of(&self.cols, l)
    }

    pub fn has_row(&self, l: &Label) -> bool {
        self.row_index(l).is_some()
    }

    pub fn has_col(&self, l: &Label) -> bool {
        self.col_index(l).is_some()
    }

    fn row_pos(&self, l: &Label) -> Result<usize> {
        self.row_index(l).ok_or_else(|| Error::UnknownLabel(l.clone()))
    }

    fn col_pos(&self, l: &Label) -> Result<usize> {
        self.col_index(l).ok_or_else(|| Error::UnknownLabel(l.clone()))
    }

    /// Entry addressed by labels.
    pub fn at(&self, row: &Label, col: &Label) -> Result<&F> {
        Ok(self.entry(self.row_pos(row)?, self.col_pos(col)?))
    }

    pub fn row(&self, i: usize) -> &[F] {
        let n = self.cols.len();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.nrows()).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn transpose(&self) -> Self {
        let (m, n) = (self.nrows(), self.ncols());
        let mut data = Vec::with_capacity(m * n);
        for j in 0..n {
            for i in 0..m {
                data.push(self.get(i, j));
            }
        }
        Matrix { rows: self.cols.clone(), cols: self.rows.clone(), data }
    }

    /// Positional selection; indices may repeat only if the caller fixes the
    /// labels afterwards.
    fn select_raw(&self, rows: &[usize], cols: &[usize]) -> Vec<F> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        data
    }

    /// Submatrix by positional indices (must be distinct on each axis).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let rl = rows.iter().map(|&i| self.rows[i].clone()).collect();
        let cl = cols.iter().map(|&j| self.cols[j].clone()).collect();
        Matrix::new(rl, cl, self.select_raw(rows, cols))
    }

    /// Rows and columns restricted and reordered to the given labels.
    pub fn submatrix(&self, rows: &[Label], cols: &[Label]) -> Result<Self> {
        check_distinct(rows)?;
        check_distinct(cols)?;
        let ri = rows.iter().map(|l| self.row_pos(l)).collect::<Result<Vec<_>>>()?;
        let ci = cols.iter().map(|l| self.col_pos(l)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            data: self.select_raw(&ri, &ci),
        })
    }

    /// Submatrix where labels may repeat. Repeated occurrences are
    /// relabeled `label~k` (k-th repeat) so the result keeps distinct labels.
    pub fn submatrix_multiset(&self, rows: &[Label], cols: &[Label]) -> Result<Self> {
        let ri = rows.iter().map(|l| self.row_pos(l)).collect::<Result<Vec<_>>>()?;
        let ci = cols.iter().map(|l| self.col_pos(l)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: decorate_repeats(rows),
            cols: decorate_repeats(cols),
            data: self.select_raw(&ri, &ci),
        })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows.clone(), cols: self.cols.clone(), data: self.data.iter().map(f).collect() }
    }

    /// Entrywise 0 / nonzero indicator over GF(2).
    pub fn support(&self) -> BinMatrix {
        self.map(|x| Gf2(!x.is_zero()))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// `[self | other]`; row labels must agree in order, column labels must
    /// be disjoint.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::LabelMismatch("row labels of horizontally stacked blocks".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.nrows() {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix::new(self.rows.clone(), cols, data)
    }

    /// `[self; other]`; column labels must agree in order.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::LabelMismatch("column labels of vertically stacked blocks".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(rows, self.cols.clone(), data)
    }

    /// Matrix product; `self`'s column labels must equal `other`'s row labels
    /// (same order).
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LabelMismatch("inner labels of matrix product".into()));
        }
        let (m, k, n) = (self.nrows(), self.ncols(), other.ncols());
        let mut data = vec![F::zero(); m * n];
        for i in 0..m {
            for t in 0..k {
                let a = self.entry(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = data[i * n + j].clone() + a.clone() * other.get(t, j);
                    data[i * n + j] = v;
                }
            }
        }
        Matrix::new(self.rows.clone(), other.cols.clone(), data)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::LabelMismatch("labels of summed matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { rows: self.rows.clone(), cols: self.cols.clone(), data })
    }

    /// Outer product `c ⊗ r` of a column indexed by `rows` and a row indexed
    /// by `cols`.
    pub fn outer(rows: Vec<Label>, c: &[F], cols: Vec<Label>, r: &[F]) -> Result<Self> {
        let data = c.iter().flat_map(|ci| r.iter().map(move |rj| ci.clone() * rj.clone())).collect();
        Matrix::new(rows, cols, data)
    }

    pub fn with_row_labels(&self, rows: Vec<Label>) -> Result<Self> {
        if rows.len() != self.nrows() {
            return Err(Error::ShapeMismatch("row label count".into()));
        }
        Matrix::new(rows, self.cols.clone(), self.data.clone())
    }

    pub fn with_col_labels(&self, cols: Vec<Label>) -> Result<Self> {
        if cols.len() != self.ncols() {
            return Err(Error::ShapeMismatch("column label count".into()));
        }
        Matrix::new(self.rows.clone(), cols, self.data.clone())
    }

    /// Renames labels on both axes through `f`.
    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Result<Self> {
        Matrix::new(
            self.rows.iter().map(&f).collect(),
            self.cols.iter().map(&f).collect(),
            self.data.clone(),
        )
    }

    /// Renames labels present in `map`, leaving others unchanged.
    pub fn rename(&self, map: &HashMap<Label, Label>) -> Result<Self> {
        self.relabel(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
    }

    /// Exact determinant. The empty matrix has determinant one.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.nrows(), cols: self.ncols() });
        }
        Ok(F::det(self.nrows(), &self.data))
    }

    pub fn rank(&self) -> usize {
        F::rank(self.nrows(), self.ncols(), &self.data)
    }

    pub fn field(&self) -> crate::scalar::FieldTag {
        F::TAG
    }

    /// Nonzero entries `(i, j)` in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize)> {
        let n = self.ncols();
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, _)| (k / n, k % n))
            .collect()
    }
}

fn decorate_repeats(labels: &[Label]) -> Vec<Label> {
    let mut counts: HashMap<&Label, usize> = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let c = counts.entry(l).or_insert(0);
            *c += 1;
            if *c == 1 {
                l.clone()
            } else {
                Label::from(format!("{l}~{}", *c - 1))
            }
        })
        .collect()
}

impl BinMatrix {
    /// Embedding of a GF(2) matrix into the rationals (`1 -> 1`).
    pub fn to_rational(&self) -> RatMatrix {
        self.map(|b| if b.0 { Rational::one() } else { Rational::zero() })
    }
}

impl RatMatrix {
    /// Entrywise absolute value.
    pub fn abs(&self) -> RatMatrix {
        self.map(|x| x.abs())
    }
}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::format::matrix_to_text(self))
    }
}

impl<F: Field> std::fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::format::matrix_to_text(self))
    }
}
