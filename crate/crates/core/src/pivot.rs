//! Long and short tableau pivots over the rationals.
//!
//! The short pivot is given twice: [`short_tableau_pivot`] evaluates the
//! four-case closed form, [`short_tableau_pivot_constructive`] runs the
//! adjoin-identity / long-pivot / swap / drop construction. Each is the
//! other's test oracle.
//!
//! Label convention for the short pivot at `(x, y)`: the result's row label
//! `x` is replaced in place by `y`, and its column label `y` by `x`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{Matrix, RatMatrix};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PivotSpec {
    pub row: Label,
    pub col: Label,
}

impl PivotSpec {
    pub fn new(row: impl Into<Label>, col: impl Into<Label>) -> Self {
        PivotSpec { row: row.into(), col: col.into() }
    }
}

/// Positions of the pivot and its (nonzero) value.
fn locate(a: &RatMatrix, p: &PivotSpec) -> Result<(usize, usize, Rational)> {
    let x = a.row_index(&p.row).ok_or_else(|| Error::UnknownLabel(p.row.clone()))?;
    let y = a.col_index(&p.col).ok_or_else(|| Error::UnknownLabel(p.col.clone()))?;
    let v = a.get(x, y);
    if v.is_zero() {
        return Err(Error::ZeroPivot { row: p.row.clone(), col: p.col.clone() });
    }
    Ok((x, y, v))
}

pub fn long_tableau_pivot(a: &RatMatrix, p: &PivotSpec) -> Result<RatMatrix> {
    let (x, y, piv) = locate(a, p)?;
    let mut out = a.clone();
    for j in 0..a.ncols() {
        out.set(x, j, a.get(x, j) / &piv);
    }
    for i in 0..a.nrows() {
        if i == x {
            continue;
        }
        let f = a.get(i, y);
        if f.is_zero() {
            continue;
        }
        for j in 0..a.ncols() {
            out.set(i, j, a.get(i, j) - &f * a.entry(x, j) / &piv);
        }
    }
    Ok(out)
}

/// Label lists after exchanging row `x` with column `y`.
fn swapped_labels(a: &RatMatrix, x: usize, y: usize) -> Result<(Vec<Label>, Vec<Label>)> {
    let (rl, cl) = (&a.row_labels()[x], &a.col_labels()[y]);
    let mut rows = a.row_labels().to_vec();
    let mut cols = a.col_labels().to_vec();
    if rows.iter().enumerate().any(|(i, l)| i != x && l == cl) {
        return Err(Error::LabelCollision(cl.clone()));
    }
    if cols.iter().enumerate().any(|(j, l)| j != y && l == rl) {
        return Err(Error::LabelCollision(rl.clone()));
    }
    rows[x] = cl.clone();
    cols[y] = rl.clone();
    Ok((rows, cols))
}

/// Pluggable short-pivot implementation, so a harness can swap in a faulty
/// variant.
pub type ShortPivotFn = fn(&RatMatrix, &PivotSpec) -> Result<RatMatrix>;

pub fn short_tableau_pivot(a: &RatMatrix, p: &PivotSpec) -> Result<RatMatrix> {
    let (x, y, piv) = locate(a, p)?;
    let (rows, cols) = swapped_labels(a, x, y)?;
    let (m, n) = (a.nrows(), a.ncols());
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let v = match (i == x, j == y) {
                (true, true) => piv.recip(),
                (true, false) => a.get(x, j) / &piv,
                (false, true) => -a.get(i, y) / &piv,
                (false, false) => a.get(i, j) - a.get(i, y) * a.entry(x, j) / &piv,
            };
            data.push(v);
        }
    }
    Matrix::new(rows, cols, data)
}

pub fn short_tableau_pivot_constructive(a: &RatMatrix, p: &PivotSpec) -> Result<RatMatrix> {
    let (x, y, _) = locate(a, p)?;
    let (rows, cols) = swapped_labels(a, x, y)?;
    let (m, n) = (a.nrows(), a.ncols());
    // [I | A] with positional identity columns 0..m, A columns m..m+n
    let ext_cols: Vec<Label> = (0..m + n).map(|k| Label::from(format!("#{k}"))).collect();
    let mut data = Vec::with_capacity(m * (m + n));
    for i in 0..m {
        for k in 0..m {
            data.push(if i == k { Rational::from_integer(1.into()) } else { Rational::zero() });
        }
        data.extend_from_slice(a.row(i));
    }
    let ext_rows: Vec<Label> = (0..m).map(|k| Label::from(format!("#r{k}"))).collect();
    let ext = Matrix::new(ext_rows.clone(), ext_cols.clone(), data)?;
    let piv = long_tableau_pivot(&ext, &PivotSpec { row: ext_rows[x].clone(), col: ext_cols[m + y].clone() })?;
    // swap columns x and y, then keep the A part
    let mut out = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let src = if j == y { x } else { m + j };
            out.push(piv.get(i, src));
        }
    }
    Matrix::new(rows, cols, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::scalar::{frac, rat};

    fn q(grid: &[&[i64]]) -> RatMatrix {
        let rows = crate::label::numbered("r", grid.len());
        let cols = crate::label::numbered("c", grid[0].len());
        Matrix::from_ints(rows, cols, grid).unwrap()
    }

    #[test]
    fn long_examples() {
        let i2 = q(&[&[1, 0], &[0, 1]]);
        assert_eq!(long_tableau_pivot(&i2, &PivotSpec::new("r0", "c0")).unwrap(), i2);
        let m = q(&[&[2, 4], &[1, 3]]);
        let p = long_tableau_pivot(&m, &PivotSpec::new("r0", "c0")).unwrap();
        assert_eq!(p.data(), &[rat(1), rat(2), rat(0), rat(1)]);
        assert_eq!(p.row_labels(), m.row_labels());
    }

    #[test]
    fn short_examples() {
        let one = q(&[&[1]]);
        let p = short_tableau_pivot(&one, &PivotSpec::new("r0", "c0")).unwrap();
        assert_eq!(p.data(), &[rat(1)]);
        assert_eq!(p.row_labels(), &labels(["c0"])[..]);
        assert_eq!(p.col_labels(), &labels(["r0"])[..]);

        let m = q(&[&[1, 1], &[1, -1]]);
        let p = short_tableau_pivot(&m, &PivotSpec::new("r0", "c0")).unwrap();
        assert_eq!(p.data(), &[rat(1), rat(1), rat(-1), rat(-2)]);

        let m = q(&[&[2, 4], &[1, 3]]);
        let p = short_tableau_pivot(&m, &PivotSpec::new("r0", "c0")).unwrap();
        assert_eq!(p.data(), &[frac(1, 2), rat(2), frac(-1, 2), rat(1)]);
    }

    #[test]
    fn constructive_agrees() {
        for m in [q(&[&[1]]), q(&[&[1, 1], &[1, -1]]), q(&[&[2, 4], &[1, 3]]), q(&[&[0, 3, 1], &[2, 0, -1]])] {
            for (i, j) in m.nonzeros() {
                let p = PivotSpec { row: m.row_labels()[i].clone(), col: m.col_labels()[j].clone() };
                assert_eq!(short_tableau_pivot(&m, &p).unwrap(), short_tableau_pivot_constructive(&m, &p).unwrap());
            }
        }
    }

    #[test]
    fn errors() {
        let m = q(&[&[0, 1]]);
        assert_eq!(
            short_tableau_pivot(&m, &PivotSpec::new("r0", "c0")),
            Err(Error::ZeroPivot { row: "r0".into(), col: "c0".into() })
        );
        assert_eq!(
            long_tableau_pivot(&m, &PivotSpec::new("zz", "c0")),
            Err(Error::UnknownLabel("zz".into()))
        );
        // row label equal to another column label
        let m = Matrix::from_ints(labels(["a"]), labels(["b", "a"]), &[&[1, 1]]).unwrap();
        assert_eq!(short_tableau_pivot(&m, &PivotSpec::new("a", "b")), Err(Error::LabelCollision("a".into())));
    }

    #[test]
    fn involution() {
        let m = q(&[&[2, 4, 1], &[1, 3, 0]]);
        let p = short_tableau_pivot(&m, &PivotSpec::new("r1", "c2")).unwrap_err();
        assert!(matches!(p, Error::ZeroPivot { .. }));
        let once = short_tableau_pivot(&m, &PivotSpec::new("r0", "c2")).unwrap();
        let twice = short_tableau_pivot(&once, &PivotSpec::new("c2", "r0")).unwrap();
        assert_eq!(twice, m);
    }
}
