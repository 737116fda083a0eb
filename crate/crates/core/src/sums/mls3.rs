//! The matrix family containing canonical signings of 3-sums, and the
//! vector lemmas about canonically re-signed summands.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::three::{D0Form, Sum3Frame};
use crate::error::{Error, Result};
use crate::label::{numbered, Label};
use crate::matrix::{Matrix, RatMatrix};
use crate::scalar::{rat, Rational};
use crate::tu::is_tu;

/// Parameters of the family: `C = [[Aℓ, 0], [D, Ar]]` with rows
/// `xl`, then `x0, x1`, then `xr`, and columns `yl` then `yr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mls3Class {
    pub xl: Vec<Label>,
    pub yl: Vec<Label>,
    pub xr: Vec<Label>,
    pub yr: Vec<Label>,
    pub x0: Label,
    pub x1: Label,
    /// Indexed by [`Mls3Class::d_rows`].
    pub c0: Vec<Rational>,
    pub c1: Vec<Rational>,
}

impl Mls3Class {
    /// `x0, x1, xr...`
    pub fn d_rows(&self) -> Vec<Label> {
        let mut v = vec![self.x0.clone(), self.x1.clone()];
        v.extend(self.xr.iter().cloned());
        v
    }

    /// Class of a canonical signing `B″` with the (normalized) frame it was
    /// built from; `c0`, `c1` are read off columns `y0`, `y1`.
    pub fn of_canonical(b: &RatMatrix, frame: &Sum3Frame) -> Result<Mls3Class> {
        let f = frame;
        let mut xl = f.xl.clone();
        xl.push(f.x2.clone());
        let mut yl = f.yl.clone();
        yl.extend([f.y0.clone(), f.y1.clone()]);
        let mut yr = vec![f.y2.clone()];
        yr.extend(f.yr.iter().cloned());
        let mut cls = Mls3Class { xl, yl, xr: f.xr.clone(), yr, x0: f.x0.clone(), x1: f.x1.clone(), c0: vec![], c1: vec![] };
        let rows = cls.d_rows();
        cls.c0 = column(b, &rows, &f.y0)?;
        cls.c1 = column(b, &rows, &f.y1)?;
        Ok(cls)
    }

    /// The class after a short pivot at `(x, y)` inside `Aℓ`: the pivot
    /// exchanges the two labels.
    pub fn after_pivot(&self, x: &Label, y: &Label) -> Mls3Class {
        let mut c = self.clone();
        for l in c.xl.iter_mut() {
            if l == x {
                *l = y.clone();
            }
        }
        for l in c.yl.iter_mut() {
            if l == y {
                *l = x.clone();
            }
        }
        c
    }
}

fn column(m: &RatMatrix, rows: &[Label], col: &Label) -> Result<Vec<Rational>> {
    rows.iter().map(|r| m.at(r, col).cloned()).collect()
}

fn row(m: &RatMatrix, r: &Label, cols: &[Label]) -> Result<Vec<Rational>> {
    cols.iter().map(|c| m.at(r, c).cloned()).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_unit_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero() || x.abs().is_one())
}

/// `v` is zero or `±w` for some `w` in `cands`.
fn in_signed_set(v: &[Rational], cands: &[&[Rational]]) -> bool {
    v.iter().all(Zero::is_zero) || cands.iter().any(|w| v == *w || v.iter().zip(w.iter()).all(|(a, b)| *a == -b.clone()))
}

/// Positional matrix from row vectors, with throwaway labels.
fn grid(rows: Vec<Vec<Rational>>, ncols: usize) -> Result<RatMatrix> {
    Matrix::from_rows(numbered("r", rows.len()), numbered("c", ncols), rows)
}

/// Positional matrix from column vectors of equal length.
fn from_columns(cols: &[Vec<Rational>], nrows: usize) -> Result<RatMatrix> {
    let rows = (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    grid(rows, cols.len())
}

fn columns_of(m: &RatMatrix) -> Vec<Vec<Rational>> {
    (0..m.ncols()).map(|j| m.column(j)).collect()
}

fn rows_of(m: &RatMatrix) -> Vec<Vec<Rational>> {
    (0..m.nrows()).map(|i| m.row(i).to_vec()).collect()
}

fn tu(m: &RatMatrix) -> Result<bool> {
    Ok(is_tu(m)?.is_tu)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mls3Report {
    /// Properties 1 to 7, in order.
    pub properties: [bool; 7],
    /// One line per failed property.
    pub failures: Vec<String>,
}

impl Mls3Report {
    pub fn holds(&self) -> bool {
        self.properties.iter().all(|&p| p)
    }

    /// Number (1 to 7) of the first failed property.
    pub fn first_failure(&self) -> Option<usize> {
        self.properties.iter().position(|&p| !p).map(|i| i + 1)
    }
}

pub fn in_mls3_class(c: &RatMatrix, cls: &Mls3Class) -> Result<Mls3Report> {
    let drows = cls.d_rows();
    let mut all_rows: Vec<Label> = cls.xl.clone();
    all_rows.extend(drows.iter().cloned());
    let mut all_cols = cls.yl.clone();
    all_cols.extend(cls.yr.iter().cloned());
    let row_set: HashSet<&Label> = all_rows.iter().collect();
    let col_set: HashSet<&Label> = all_cols.iter().collect();
    if row_set.len() != all_rows.len()
        || col_set.len() != all_cols.len()
        || row_set != c.row_labels().iter().collect()
        || col_set != c.col_labels().iter().collect()
    {
        return Err(Error::PartitionMismatch(format!(
            "matrix rows {:?} / columns {:?} do not split as {:?} / {:?}",
            c.row_labels(),
            c.col_labels(),
            all_rows,
            all_cols
        )));
    }
    if cls.c0.len() != drows.len() || cls.c1.len() != drows.len() {
        return Err(Error::PartitionMismatch(format!("c0 and c1 must have {} entries", drows.len())));
    }

    let mut props = [true; 7];
    let mut failures = Vec::new();
    let mut fail = |k: usize, msg: String, props: &mut [bool; 7]| {
        props[k - 1] = false;
        failures.push(format!("property {k}: {msg}"));
    };

    let top_right = c.submatrix(&cls.xl, &cls.yr)?;
    if !top_right.is_zero() {
        fail(1, "top-right block is not zero".into(), &mut props);
    }

    let al = c.submatrix(&cls.xl, &cls.yl)?;
    let d = c.submatrix(&drows, &cls.yl)?;
    let ar = c.submatrix(&drows, &cls.yr)?;
    let al_d = al.vstack(&d)?;
    if !tu(&al_d)? {
        fail(2, "[Aℓ; D] is not TU".into(), &mut props);
    }

    let c2 = sub(&cls.c0, &cls.c1);
    let tail = |v: &[Rational]| v[2..].to_vec();
    let (r0, r1, r2) = (tail(&cls.c0), tail(&cls.c1), tail(&c2));
    for (j, y) in cls.yl.iter().enumerate() {
        let col: Vec<Rational> = d.column(j)[2..].to_vec();
        if !in_signed_set(&col, &[&r0, &r1, &r2]) {
            fail(3, format!("D(Xr′, {y}) is not in {{0, ±c0, ±c1, ±(c0 - c1)}}"), &mut props);
            break;
        }
    }

    let mut cols = vec![cls.c0.clone(), cls.c1.clone(), c2.clone()];
    cols.extend(columns_of(&ar));
    if !tu(&from_columns(&cols, drows.len())?)? {
        fail(4, "[c0 c1 c0-c1 Ar] is not TU".into(), &mut props);
    }

    let n = cls.yl.len();
    let mut aux: Vec<Vec<Rational>> = rows_of(&al)
        .into_iter()
        .map(|mut r| {
            r.push(rat(0));
            r
        })
        .collect();
    for i in 0..2 {
        let mut r = d.row(i).to_vec();
        r.push(rat(1));
        aux.push(r);
    }
    if !tu(&grid(aux, n + 1)?)? {
        fail(5, "[Aℓ 0; D(x0) 1; D(x1) 1] is not TU".into(), &mut props);
    }

    if !(cls.c0[0].is_one() && cls.c0[1].is_zero()) {
        fail(6, format!("(c0(x0), c0(x1)) = ({}, {}), expected (1, 0)", cls.c0[0], cls.c0[1]), &mut props);
    }

    let p = (&cls.c1[0], &cls.c1[1]);
    let ok7 = (p.0.is_zero() && *p.1 == rat(-1)) || (p.0.is_one() && p.1.is_one());
    if !ok7 {
        fail(7, format!("(c1(x0), c1(x1)) = ({}, {}), expected (0, -1) or (1, 1)", p.0, p.1), &mut props);
    }

    Ok(Mls3Report { properties: props, failures })
}

/// Items of the `c` lemma on `Br″` (or, transposed, the `d` lemma on `Bℓ″`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorLemmaReport {
    /// No coordinate has `(c0, c1) ∈ {(1, -1), (-1, 1)}`.
    pub no_opposite_pair: bool,
    /// `c2 = c0 - c1` has entries in `{0, ±1}`.
    pub difference_unit: bool,
    /// `[c0 c2 A]` is TU.
    pub first_with_difference_tu: bool,
    /// `[c1 c2 A]` is TU.
    pub second_with_difference_tu: bool,
    /// `[c0 c1 c2 A]` is TU.
    pub all_three_tu: bool,
}

impl VectorLemmaReport {
    pub fn holds(&self) -> bool {
        self.no_opposite_pair
            && self.difference_unit
            && self.first_with_difference_tu
            && self.second_with_difference_tu
            && self.all_three_tu
    }
}

fn vector_lemmas(v0: &[Rational], v1: &[Rational], k: usize, a_cols: Vec<Vec<Rational>>) -> Result<VectorLemmaReport> {
    let one = Rational::one();
    let no_opposite_pair = v0.iter().zip(v1).all(|(a, b)| !((*a == one && *b == -one.clone()) || (*a == -one.clone() && *b == one)));
    let v2 = sub(v0, v1);
    let difference_unit = is_unit_vec(&v2);
    // bordered matrices drop the first `k` coordinates (the x2 row or y2 column)
    let (c0, c1, c2) = (v0[k..].to_vec(), v1[k..].to_vec(), v2[k..].to_vec());
    let n = c0.len();
    let check = |lead: Vec<Vec<Rational>>| -> Result<bool> {
        let mut cols = lead;
        cols.extend(a_cols.iter().cloned());
        tu(&from_columns(&cols, n)?)
    };
    Ok(VectorLemmaReport {
        no_opposite_pair,
        difference_unit,
        first_with_difference_tu: check(vec![c0.clone(), c2.clone()])?,
        second_with_difference_tu: check(vec![c1.clone(), c2.clone()])?,
        all_three_tu: check(vec![c0, c1, c2])?,
    })
}

/// Vectors `c0 = Br″(Xr, y0)`, `c1 = Br″(Xr, y1)`. The TU items use rows
/// `x0, x1, Xr′` next to `Ar″ = Br″(x0 x1 Xr′, y2 Yr′)`.
pub fn check_c_lemma(br: &RatMatrix, frame: &Sum3Frame) -> Result<VectorLemmaReport> {
    let rows = frame.right_rows();
    let c0 = column(br, &rows, &frame.y0)?;
    let c1 = column(br, &rows, &frame.y1)?;
    let lower = &rows[1..];
    let mut acols = vec![frame.y2.clone()];
    acols.extend(frame.yr.iter().cloned());
    let ar = br.submatrix(lower, &acols)?;
    vector_lemmas(&c0, &c1, 1, columns_of(&ar))
}

/// Transposed statement on `Bℓ″`: `d0 = Bℓ″(x0, Yℓ)`, `d1 = Bℓ″(x1, Yℓ)`,
/// bordered with `Aℓ″ᵀ` over columns `Yℓ′, y0, y1`.
pub fn check_d_lemma(bl: &RatMatrix, frame: &Sum3Frame) -> Result<VectorLemmaReport> {
    let mut cols = frame.y01();
    cols.splice(0..0, frame.yl.iter().cloned());
    cols.push(frame.y2.clone());
    let d0 = row(bl, &frame.x0, &cols)?;
    let d1 = row(bl, &frame.x1, &cols)?;
    // y2 is last here; move it first so the bordered matrices drop it
    let rot = |v: Vec<Rational>| {
        let mut v = v;
        let last = v.pop().expect("y2 present");
        v.insert(0, last);
        v
    };
    let lower = &cols[..cols.len() - 1];
    let mut arows = frame.xl.clone();
    arows.push(frame.x2.clone());
    let al = bl.submatrix(&arows, lower)?;
    vector_lemmas(&rot(d0), &rot(d1), 1, rows_of(&al))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductLemmaReport {
    /// `c2 = c0 - c1` has entries in `{0, ±1}`.
    pub difference_unit: bool,
    /// `D″` equals the product formula for its `D0″` form.
    pub product_identity: bool,
    /// Each column of `D″` is in `{0, ±c0, ±c1, ±c2}`.
    pub columns_in_set: bool,
    /// Each row of `D″` is in `{0, ±d0, ±d1, ±d2}`.
    pub rows_in_set: bool,
    /// `[Aℓ″; D″]` is TU.
    pub al_d_tu: bool,
}

impl ProductLemmaReport {
    pub fn holds(&self) -> bool {
        self.difference_unit && self.product_identity && self.columns_in_set && self.rows_in_set && self.al_d_tu
    }
}

/// Checks on `B″` built from the normalized `frame`.
pub fn check_product_lemma(b: &RatMatrix, frame: &Sum3Frame, form: D0Form) -> Result<ProductLemmaReport> {
    let f = frame;
    let mut drows = f.x01();
    drows.extend(f.xr.iter().cloned());
    let mut dcols = f.yl.clone();
    dcols.extend(f.y01());
    let c0 = column(b, &drows, &f.y0)?;
    let c1 = column(b, &drows, &f.y1)?;
    let c2 = sub(&c0, &c1);
    let d0 = row(b, &f.x0, &dcols)?;
    let d1 = row(b, &f.x1, &dcols)?;
    let d2 = sub(&d0, &d1);
    let d = b.submatrix(&drows, &dcols)?;

    let outer = |c: &[Rational], r: &[Rational]| Matrix::outer(drows.clone(), c, dcols.clone(), r);
    let expected = match form {
        D0Form::Identity => outer(&c0, &d0)?.add(&outer(&c1, &d1)?.neg())?,
        D0Form::Triangular => outer(&c0, &d0)?.add(&outer(&c0, &d1)?.neg())?.add(&outer(&c1, &d1)?)?,
    };
    let columns_in_set = (0..d.ncols()).all(|j| in_signed_set(&d.column(j), &[&c0, &c1, &c2]));
    let rows_in_set = (0..d.nrows()).all(|i| in_signed_set(d.row(i), &[&d0, &d1, &d2]));
    let mut top = f.xl.clone();
    top.push(f.x2.clone());
    let al = b.submatrix(&top, &dcols)?;
    Ok(ProductLemmaReport {
        difference_unit: is_unit_vec(&c2),
        product_identity: expected == d,
        columns_in_set,
        rows_in_set,
        al_d_tu: tu(&al.vstack(&d)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::sums::three::{canonical_signing_bordered, canonical_signing_sum3_detailed, tests::minimal_frame};

    fn minimal(d0: [[i64; 2]; 2]) -> RatMatrix {
        let s = Matrix::from_ints(
            labels(["x2", "x0", "x1"]),
            labels(["y0", "y1", "y2"]),
            &[&[1, 1, 0], &[d0[0][0], d0[0][1], 1], &[d0[1][0], d0[1][1], 1]],
        )
        .unwrap();
        canonical_signing_bordered(&s).unwrap()
    }

    #[test]
    fn minimal_canonical_in_class() {
        for d0 in [[[1, 0], [0, 1]], [[1, 1], [0, 1]]] {
            let q = minimal(d0);
            let s = canonical_signing_sum3_detailed(&q, &q, &minimal_frame()).unwrap();
            let cls = Mls3Class::of_canonical(&s.signed, &s.blocks.frame).unwrap();
            let rep = in_mls3_class(&s.signed, &cls).unwrap();
            assert!(rep.holds(), "{rep:?}");
            assert!(check_c_lemma(&s.right, &s.blocks.frame).unwrap().holds());
            assert!(check_d_lemma(&s.left, &s.blocks.frame).unwrap().holds());
            assert!(check_product_lemma(&s.signed, &s.blocks.frame, s.blocks.form).unwrap().holds());
        }
    }

    #[test]
    fn property_six_violation() {
        let q = minimal([[1, 0], [0, 1]]);
        let s = canonical_signing_sum3_detailed(&q, &q, &minimal_frame()).unwrap();
        let mut cls = Mls3Class::of_canonical(&s.signed, &s.blocks.frame).unwrap();
        cls.c0[0] = rat(0);
        let rep = in_mls3_class(&s.signed, &cls).unwrap();
        assert!(!rep.holds());
        assert!(rep.failures.iter().any(|f| f.starts_with("property 6")));
        assert!(!rep.properties[5]);
    }

    #[test]
    fn partition_mismatch() {
        let q = minimal([[1, 0], [0, 1]]);
        let s = canonical_signing_sum3_detailed(&q, &q, &minimal_frame()).unwrap();
        let mut cls = Mls3Class::of_canonical(&s.signed, &s.blocks.frame).unwrap();
        cls.xl.push("ghost".into());
        assert!(matches!(in_mls3_class(&s.signed, &cls), Err(Error::PartitionMismatch(_))));
    }
}
