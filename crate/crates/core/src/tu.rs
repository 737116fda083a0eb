//! Total unimodularity and k-partial unimodularity by minor enumeration.
//!
//! Minors are visited in increasing size `k`, then by row combination, then
//! by column combination, each combination in lexicographic order of
//! positions. The first violating minor in that order is the witness, so
//! reports are reproducible.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{BinMatrix, Matrix, RatMatrix};
use crate::scalar::{bareiss_bigint, bareiss_i64, is_unit_or_zero, to_i64_exact, Field, Gf2, Rational};

/// Default number of minors `is_tu` evaluates before giving up.
pub const DEFAULT_MINOR_LIMIT: u64 = 20_000_000;

/// Above this size `i64` Bareiss could overflow on `{0, ±1}` input.
const I64_BAREISS_MAX: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minor {
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    #[serde(serialize_with = "ser_rational")]
    pub det: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuReport {
    pub is_tu: bool,
    pub witness: Option<Minor>,
    /// Number of selections examined, including the witness.
    pub minors_checked: u64,
}

impl TuReport {
    fn pass(minors_checked: u64) -> Self {
        TuReport { is_tu: true, witness: None, minors_checked }
    }
}

/// Next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for t in i + 1..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Next k-multiset of `0..n` (non-decreasing sequence) in lexicographic order.
fn next_multiset(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] + 1 < n {
            let v = c[i] + 1;
            for t in &mut c[i..] {
                *t = v;
            }
            return true;
        }
    }
    false
}

fn has_repeat(c: &[usize]) -> bool {
    c.windows(2).any(|w| w[0] == w[1])
}

/// Minor evaluator over a fixed matrix, using machine integers when every
/// entry is in `{0, ±1}`.
struct MinorEval<'a> {
    a: &'a RatMatrix,
    ints: Option<Vec<i64>>,
    buf: Vec<i64>,
}

impl<'a> MinorEval<'a> {
    fn new(a: &'a RatMatrix) -> Self {
        let ints = a
            .data()
            .iter()
            .map(|q| to_i64_exact(q).filter(|v| v.abs() <= 1))
            .collect::<Option<Vec<_>>>();
        MinorEval { a, ints, buf: Vec::new() }
    }

    fn det(&mut self, rows: &[usize], cols: &[usize]) -> Rational {
        let k = rows.len();
        let n = self.a.ncols();
        match &self.ints {
            Some(g) if k <= I64_BAREISS_MAX => {
                self.buf.clear();
                for &i in rows {
                    for &j in cols {
                        self.buf.push(g[i * n + j]);
                    }
                }
                Rational::from_integer(BigInt::from(bareiss_i64(k, &mut self.buf)))
            }
            Some(g) => {
                let mut big: Vec<BigInt> = rows
                    .iter()
                    .flat_map(|&i| cols.iter().map(move |&j| BigInt::from(g[i * n + j])))
                    .collect();
                Rational::from_integer(bareiss_bigint(k, &mut big))
            }
            None => {
                let a = self.a;
                let data: Vec<Rational> = rows
                    .iter()
                    .flat_map(|&i| cols.iter().map(move |&j| a.get(i, j)))
                    .collect();
                Rational::det(k, &data)
            }
        }
    }

    fn minor(&self, rows: &[usize], cols: &[usize], det: Rational) -> Minor {
        Minor {
            rows: rows.iter().map(|&i| self.a.row_labels()[i].clone()).collect(),
            cols: cols.iter().map(|&j| self.a.col_labels()[j].clone()).collect(),
            det,
        }
    }
}

pub fn is_tu(a: &RatMatrix) -> Result<TuReport> {
    is_tu_with_limit(a, DEFAULT_MINOR_LIMIT)
}

pub fn is_tu_with_limit(a: &RatMatrix, limit: u64) -> Result<TuReport> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut ev = MinorEval::new(a);
    let mut checked = 0u64;
    let bump = |checked: &mut u64| -> Result<()> {
        *checked += 1;
        if *checked > limit {
            return Err(Error::SizeLimitExceeded { what: "TU minor enumeration", limit });
        }
        Ok(())
    };
    // k = 1 and the fast path both need the entry scan
    for i in 0..m {
        for j in 0..n {
            bump(&mut checked)?;
            let v = a.get(i, j);
            if !is_unit_or_zero(&v) {
                return Ok(TuReport { is_tu: false, witness: Some(ev.minor(&[i], &[j], v)), minors_checked: checked });
            }
        }
    }
    for k in 2..=m.min(n) {
        let mut rows: Vec<usize> = (0..k).collect();
        loop {
            let mut cols: Vec<usize> = (0..k).collect();
            loop {
                bump(&mut checked)?;
                let d = ev.det(&rows, &cols);
                if !is_unit_or_zero(&d) {
                    let w = ev.minor(&rows, &cols, d);
                    return Ok(TuReport { is_tu: false, witness: Some(w), minors_checked: checked });
                }
                if !next_combination(&mut cols, n) {
                    break;
                }
            }
            if !next_combination(&mut rows, m) {
                break;
            }
        }
    }
    Ok(TuReport::pass(checked))
}

/// Checks every `k x k` selection, repeated indices allowed. Selections with
/// a repeated row or column have determinant zero and are not eliminated.
pub fn is_k_pu(a: &RatMatrix, k: usize) -> TuReport {
    let (m, n) = (a.nrows(), a.ncols());
    if k == 0 {
        return TuReport::pass(1);
    }
    if m == 0 || n == 0 {
        return TuReport::pass(0);
    }
    let mut ev = MinorEval::new(a);
    let mut checked = 0u64;
    let mut rows = vec![0; k];
    loop {
        let mut cols = vec![0; k];
        loop {
            checked += 1;
            if !has_repeat(&rows) && !has_repeat(&cols) {
                let d = ev.det(&rows, &cols);
                if !is_unit_or_zero(&d) {
                    let w = ev.minor(&rows, &cols, d);
                    return TuReport { is_tu: false, witness: Some(w), minors_checked: checked };
                }
            }
            if !next_multiset(&mut cols, n) {
                break;
            }
        }
        if !next_multiset(&mut rows, m) {
            break;
        }
    }
    TuReport::pass(checked)
}

fn check_factor(label: &Label, f: &Rational) -> Result<()> {
    if is_unit_or_zero(f) {
        Ok(())
    } else {
        Err(Error::BadFactor { label: label.clone(), factor: f.to_string() })
    }
}

/// Multiplies row `i` by `f(label_i)`; factors must lie in `{0, ±1}`.
pub fn scale_rows(a: &RatMatrix, f: impl Fn(&Label) -> Rational) -> Result<RatMatrix> {
    let mut out = a.clone();
    for (i, l) in a.row_labels().iter().enumerate() {
        let s = f(l);
        check_factor(l, &s)?;
        for j in 0..a.ncols() {
            out.set(i, j, a.get(i, j) * &s);
        }
    }
    Ok(out)
}

pub fn scale_cols(a: &RatMatrix, f: impl Fn(&Label) -> Rational) -> Result<RatMatrix> {
    let mut out = a.clone();
    for (j, l) in a.col_labels().iter().enumerate() {
        let s = f(l);
        check_factor(l, &s)?;
        for i in 0..a.nrows() {
            out.set(i, j, a.get(i, j) * &s);
        }
    }
    Ok(out)
}

fn same_label_set(a: &[Label], b: &[Label]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

/// `|q(i, j)| = b(i, j)` for every label pair. Label order may differ.
pub fn is_signing_of(q: &RatMatrix, b: &BinMatrix) -> Result<bool> {
    if !same_label_set(q.row_labels(), b.row_labels()) || !same_label_set(q.col_labels(), b.col_labels()) {
        return Err(Error::LabelMismatch("signing and target have different labels".into()));
    }
    let rmap: Vec<usize> = q.row_labels().iter().map(|l| b.row_index(l).unwrap()).collect();
    let cmap: Vec<usize> = q.col_labels().iter().map(|l| b.col_index(l).unwrap()).collect();
    for i in 0..q.nrows() {
        for j in 0..q.ncols() {
            let v = q.entry(i, j);
            let want = b.get(rmap[i], cmap[j]).bit();
            let ok = if want { v.abs().is_one() } else { v.is_zero() };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A `{0, ±1}` rational matrix together with the GF(2) matrix it signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signing {
    pub signed: RatMatrix,
    pub of: BinMatrix,
}

impl Signing {
    /// Checks the entrywise condition; total unimodularity is checked
    /// separately.
    pub fn new(signed: RatMatrix, of: BinMatrix) -> Result<Self> {
        if !is_signing_of(&signed, &of)? {
            return Err(Error::LabelMismatch("matrix is not a signing of its target".into()));
        }
        Ok(Signing { signed, of })
    }

    /// Signing `signed` of its own support.
    pub fn of_support(signed: RatMatrix) -> Result<Self> {
        let of = signed.support();
        Signing::new(signed, of)
    }
}

/// Entrywise product with a sign pattern: `b(i, j) * signs(i, j)`.
pub fn apply_signs(b: &BinMatrix, signs: &[i8]) -> RatMatrix {
    let mut k = 0;
    Matrix::new(
        b.row_labels().to_vec(),
        b.col_labels().to_vec(),
        b.data()
            .iter()
            .map(|&g: &Gf2| {
                let s = signs[k];
                k += 1;
                if g.bit() {
                    Rational::from_integer(BigInt::from(s))
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    )
    .expect("labels come from a valid matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{labels, numbered};
    use crate::scalar::rat;

    fn q(grid: &[&[i64]]) -> RatMatrix {
        Matrix::from_ints(numbered("r", grid.len()), numbered("c", grid[0].len()), grid).unwrap()
    }

    #[test]
    fn identity_is_tu() {
        let i5 = RatMatrix::identity(numbered("e", 5)).unwrap();
        assert!(is_tu(&i5).unwrap().is_tu);
    }

    #[test]
    fn minus_two_witness() {
        let r = is_tu(&q(&[&[1, 1], &[1, -1]])).unwrap();
        assert!(!r.is_tu);
        let w = r.witness.unwrap();
        assert_eq!(w.det, rat(-2));
        assert_eq!(w.rows, labels(["r0", "r1"]));
    }

    #[test]
    fn large_entry_is_a_one_by_one_witness() {
        let r = is_tu(&q(&[&[1, 0], &[0, 2]])).unwrap();
        let w = r.witness.unwrap();
        assert_eq!((w.rows, w.cols, w.det), (labels(["r1"]), labels(["c1"]), rat(2)));
    }

    #[test]
    fn limit_is_enforced() {
        let i5 = RatMatrix::identity(numbered("e", 5)).unwrap();
        assert!(matches!(is_tu_with_limit(&i5, 10), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn k_pu_examples() {
        let m = q(&[&[1, 1], &[1, -1]]);
        assert!(is_k_pu(&m, 1).is_tu);
        assert!(!is_k_pu(&m, 2).is_tu);
        // 3 > min dims: every selection repeats an index
        assert!(is_k_pu(&m, 3).is_tu);
        // multisets of size 2 from 2 items: 3 per axis
        assert_eq!(is_k_pu(&q(&[&[1, 0], &[0, 1]]), 2).minors_checked, 9);
    }

    #[test]
    fn scaling() {
        let m = q(&[&[1, 1], &[0, 1]]);
        assert_eq!(scale_rows(&m, |_| rat(1)).unwrap(), m);
        let z = scale_rows(&m, |l| if l.as_str() == "r0" { rat(0) } else { rat(1) }).unwrap();
        assert_eq!(z.row(0), &[rat(0), rat(0)]);
        assert_eq!(
            scale_cols(&m, |_| rat(2)),
            Err(Error::BadFactor { label: "c0".into(), factor: "2".into() })
        );
    }

    #[test]
    fn signing_examples() {
        let i2 = RatMatrix::identity(numbered("r", 2)).unwrap();
        assert!(is_signing_of(&i2, &i2.support()).unwrap());
        let a = q(&[&[1, -1]]);
        let ones = q(&[&[1, 1]]).support();
        assert!(is_signing_of(&a, &ones).unwrap());
        assert!(!is_signing_of(&q(&[&[1, 0]]), &ones).unwrap());
        assert!(is_signing_of(&q(&[&[1]]), &ones).is_err());
    }
}
