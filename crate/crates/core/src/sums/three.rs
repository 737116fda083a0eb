use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{classify_invertible_2x2_gf2, gf2_inverse_2x2, TwoByTwoForm, IDENTITY_2X2, TRIANGULAR_2X2};
use crate::label::Label;
use crate::matrix::{BinMatrix, Matrix, RatMatrix};
use crate::matroid::{BinRepr, RatRepr, StandardRepr};
use crate::scalar::{rat, Field, Gf2, Rational};
use crate::tu::{scale_cols, scale_rows};

/// Labels of a 3-sum: the six shared labels and the four private sets.
///
/// Row order used everywhere: `Xℓ′, x2, x0, x1` on the left, `x2, x0, x1, Xr′`
/// on the right and `Xℓ′, x2, x0, x1, Xr′` in the sum. Columns likewise with
/// `Yℓ′, y0, y1, y2 | y0, y1, y2, Yr′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sum3Frame {
    pub x0: Label,
    pub x1: Label,
    pub x2: Label,
    pub y0: Label,
    pub y1: Label,
    pub y2: Label,
    pub xl: Vec<Label>,
    pub yl: Vec<Label>,
    pub xr: Vec<Label>,
    pub yr: Vec<Label>,
}

fn cat(parts: &[&[Label]]) -> Vec<Label> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

impl Sum3Frame {
    pub fn left_rows(&self) -> Vec<Label> {
        cat(&[&self.xl, &[self.x2.clone(), self.x0.clone(), self.x1.clone()]])
    }

    pub fn left_cols(&self) -> Vec<Label> {
        cat(&[&self.yl, &[self.y0.clone(), self.y1.clone(), self.y2.clone()]])
    }

    pub fn right_rows(&self) -> Vec<Label> {
        cat(&[&[self.x2.clone(), self.x0.clone(), self.x1.clone()], &self.xr])
    }

    pub fn right_cols(&self) -> Vec<Label> {
        cat(&[&[self.y0.clone(), self.y1.clone(), self.y2.clone()], &self.yr])
    }

    pub fn sum_rows(&self) -> Vec<Label> {
        cat(&[&self.xl, &[self.x2.clone(), self.x0.clone(), self.x1.clone()], &self.xr])
    }

    pub fn sum_cols(&self) -> Vec<Label> {
        cat(&[&self.yl, &[self.y0.clone(), self.y1.clone(), self.y2.clone()], &self.yr])
    }

    /// `[x0, x1]`
    pub fn x01(&self) -> Vec<Label> {
        vec![self.x0.clone(), self.x1.clone()]
    }

    /// `[y0, y1]`
    pub fn y01(&self) -> Vec<Label> {
        vec![self.y0.clone(), self.y1.clone()]
    }

    /// Every label of the frame must be distinct.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for l in self.sum_rows().iter().chain(self.sum_cols().iter()) {
            if !seen.insert(l.clone()) {
                return Err(Error::PatternViolation(format!("frame: label `{l}` appears twice")));
            }
        }
        Ok(())
    }

    fn swapped(&self, swap_x: bool, swap_y: bool) -> Sum3Frame {
        let mut f = self.clone();
        if swap_x {
            std::mem::swap(&mut f.x0, &mut f.x1);
        }
        if swap_y {
            std::mem::swap(&mut f.y0, &mut f.y1);
        }
        f
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum D0Form {
    /// `[[1,0],[0,1]]`
    Identity,
    /// `[[1,1],[0,1]]`
    Triangular,
}

/// Blocks of a 3-sum, with the frame already normalized so that `D0` is in
/// one of the two canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sum3Blocks<F: Field> {
    /// Frame after normalization.
    pub frame: Sum3Frame,
    /// Frame as given.
    pub original_frame: Sum3Frame,
    pub form: D0Form,
    /// `x0` and `x1` were exchanged by normalization.
    pub swapped_x: bool,
    /// `y0` and `y1` were exchanged by normalization.
    pub swapped_y: bool,
    /// `Bℓ(Xℓ′ ∪ {x2}, Yℓ′ ∪ {y0, y1})`
    #[serde(skip)]
    pub a_l: Matrix<F>,
    /// `Br({x0, x1} ∪ Xr′, {y2} ∪ Yr′)`
    #[serde(skip)]
    pub a_r: Matrix<F>,
    /// `Bℓ({x0, x1}, Yℓ′)`
    #[serde(skip)]
    pub d_l: Matrix<F>,
    /// `Br(Xr′, {y0, y1})`
    #[serde(skip)]
    pub d_r: Matrix<F>,
    /// `Bℓ({x0, x1}, {y0, y1})`
    #[serde(skip)]
    pub d0: Matrix<F>,
}

fn same_set(a: &[Label], b: &[Label]) -> bool {
    a.len() == b.len() && a.iter().collect::<HashSet<_>>() == b.iter().collect::<HashSet<_>>()
}

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::PatternViolation(msg.into()))
}

fn check_frame_sets<F: Field>(bl: &StandardRepr<F>, br: &StandardRepr<F>, frame: &Sum3Frame) -> Result<()> {
    frame.validate()?;
    let checks = [
        (bl.x(), frame.left_rows(), "rows of Bℓ"),
        (bl.y(), frame.left_cols(), "columns of Bℓ"),
        (br.x(), frame.right_rows(), "rows of Br"),
        (br.y(), frame.right_cols(), "columns of Br"),
    ];
    for (have, want, what) in checks {
        if !same_set(have, &want) {
            return violation(format!("frame: {what} are {have:?}, expected {want:?}"));
        }
    }
    Ok(())
}

fn extract_blocks<F: Field>(
    bl: &Matrix<F>,
    br: &Matrix<F>,
    frame: &Sum3Frame,
    original: &Sum3Frame,
    form: D0Form,
    swaps: (bool, bool),
) -> Result<Sum3Blocks<F>> {
    let f = frame;
    let top = cat(&[&f.xl, std::slice::from_ref(&f.x2)]);
    let left = cat(&[&f.yl, &f.y01()]);
    let bottom = cat(&[&f.x01(), &f.xr]);
    let right = cat(&[std::slice::from_ref(&f.y2), &f.yr]);
    Ok(Sum3Blocks {
        frame: frame.clone(),
        original_frame: original.clone(),
        form,
        swapped_x: swaps.0,
        swapped_y: swaps.1,
        a_l: bl.submatrix(&top, &left)?,
        a_r: br.submatrix(&bottom, &right)?,
        d_l: bl.submatrix(&f.x01(), &f.yl)?,
        d_r: br.submatrix(&f.xr, &f.y01())?,
        d0: bl.submatrix(&f.x01(), &f.y01())?,
    })
}

/// Checks the 3-sum preconditions in a fixed order and returns the blocks.
///
/// Order: frame labels, `D0` invertible, `D0` equal on both sides, the `x2`
/// rows, the `y2` columns. Any invertible `D0` is accepted; the frame is
/// normalized by exchanging `x0`/`x1` and/or `y0`/`y1` until `D0` is
/// `[[1,0],[0,1]]` or `[[1,1],[0,1]]`.
pub fn validate_sum3(bl: &BinRepr, br: &BinRepr, frame: &Sum3Frame) -> Result<Sum3Blocks<Gf2>> {
    check_frame_sets(bl, br, frame)?;
    let (l, r) = (bl.matrix(), br.matrix());
    let f = frame;
    let d0 = l.submatrix(&f.x01(), &f.y01())?;
    let class = classify_invertible_2x2_gf2(&d0)?;
    let Some((rp, cp)) = class.perms() else {
        return violation("D0 is singular");
    };
    if r.submatrix(&f.x01(), &f.y01())? != d0 {
        return violation("D0 differs between Bℓ and Br");
    }
    let one = Gf2::ONE;
    let zero = Gf2::ZERO;
    let expect = |m: &BinMatrix, side: &str, row: &Label, col: &Label, v: Gf2| -> Result<()> {
        if *m.at(row, col)? != v {
            return violation(format!("{side}({row}, {col}) must be {v}"));
        }
        Ok(())
    };
    for (m, side) in [(l, "Bℓ"), (r, "Br")] {
        expect(m, side, &f.x2, &f.y0, one)?;
        expect(m, side, &f.x2, &f.y1, one)?;
        expect(m, side, &f.x2, &f.y2, zero)?;
    }
    for col in &f.yr {
        expect(r, "Br", &f.x2, col, zero)?;
    }
    for (m, side) in [(l, "Bℓ"), (r, "Br")] {
        expect(m, side, &f.x0, &f.y2, one)?;
        expect(m, side, &f.x1, &f.y2, one)?;
    }
    for row in &f.xl {
        expect(l, "Bℓ", row, &f.y2, zero)?;
    }
    let form = match class {
        TwoByTwoForm::IdentityLike { .. } => D0Form::Identity,
        _ => D0Form::Triangular,
    };
    let swaps = (rp[0] == 1, cp[0] == 1);
    let normalized = frame.swapped(swaps.0, swaps.1);
    extract_blocks(l, r, &normalized, frame, form, swaps)
}

fn assemble<F: Field>(b: &Sum3Blocks<F>, d0_inv: &Matrix<F>) -> Result<Matrix<F>> {
    let d_lr = b.d_r.matmul(d0_inv)?.matmul(&b.d_l)?;
    let top = b.a_l.hstack(&Matrix::zeros(b.a_l.row_labels().to_vec(), b.a_r.col_labels().to_vec())?)?;
    let d = b.d_l.hstack(&b.d0)?.vstack(&d_lr.hstack(&b.d_r)?)?;
    top.vstack(&d.hstack(&b.a_r)?)
}

/// Assembles `[[Aℓ, 0], [D, Ar]]` with `D = [[Dℓ, D0], [Dℓr, Dr]]` and
/// `Dℓr = Dr · D0⁻¹ · Dℓ` over GF(2).
pub fn sum3(blocks: &Sum3Blocks<Gf2>) -> Result<BinRepr> {
    StandardRepr::new(assemble(blocks, &gf2_inverse_2x2(&blocks.d0)?)?)
}

/// Validates and assembles in one step.
pub fn sum3_of(bl: &BinRepr, br: &BinRepr, frame: &Sum3Frame) -> Result<BinRepr> {
    sum3(&validate_sum3(bl, br, frame)?)
}

fn rational_inverse_2x2(d0: &RatMatrix) -> Result<RatMatrix> {
    let (a, b, c, d) = (d0.get(0, 0), d0.get(0, 1), d0.get(1, 0), d0.get(1, 1));
    let det = a.clone() * d.clone() - b.clone() * c.clone();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Matrix::new(
        d0.col_labels().to_vec(),
        d0.row_labels().to_vec(),
        vec![d / det.clone(), -b / det.clone(), -c / det.clone(), a / det],
    )
}

fn positional_form(d0: &BinMatrix) -> Option<D0Form> {
    if d0.nrows() != 2 || d0.ncols() != 2 {
        return None;
    }
    let is = |f: &[[bool; 2]; 2]| (0..2).all(|i| (0..2).all(|j| d0.get(i, j).bit() == f[i][j]));
    if is(&IDENTITY_2X2) {
        Some(D0Form::Identity)
    } else if is(&TRIANGULAR_2X2) {
        Some(D0Form::Triangular)
    } else {
        None
    }
}

/// Signed `D0′` for a canonical `D0`, keeping its labels.
pub fn canonical_signing_3x3(d0: &BinMatrix) -> Result<RatMatrix> {
    let grid: [[i64; 2]; 2] = match positional_form(d0).ok_or(Error::NotCanonicalForm)? {
        D0Form::Identity => [[1, 0], [0, -1]],
        D0Form::Triangular => [[1, 1], [0, 1]],
    };
    Matrix::from_ints(d0.row_labels().to_vec(), d0.col_labels().to_vec(), &[&grid[0], &grid[1]])
}

/// `S → S′` on the bordered 3x3 corner, rows `x2, x0, x1` and columns
/// `y0, y1, y2` positionally.
pub fn canonical_signing_bordered(s: &BinMatrix) -> Result<RatMatrix> {
    if s.nrows() != 3 || s.ncols() != 3 {
        return Err(Error::NotCanonicalForm);
    }
    let bit = |i, j| s.get(i, j).bit();
    if !(bit(0, 0) && bit(0, 1) && !bit(0, 2) && bit(1, 2) && bit(2, 2)) {
        return Err(Error::NotCanonicalForm);
    }
    let d0 = s.select(&[1, 2], &[0, 1])?;
    let d0s = canonical_signing_3x3(&d0)?;
    let mut grid = vec![vec![rat(1), rat(1), rat(0)]];
    for i in 0..2 {
        grid.push(vec![d0s.get(i, 0), d0s.get(i, 1), rat(1)]);
    }
    Matrix::from_rows(s.row_labels().to_vec(), s.col_labels().to_vec(), grid)
}

/// Rescales rows and columns of `q` by the `±1` factors `u`, `v` that bring
/// the bordered corner at the frame's six labels to `S′`.
///
/// Only the frame's `x0, x1, x2, y0, y1, y2` are used.
pub fn canonical_resign(q: &RatMatrix, frame: &Sum3Frame) -> Result<RatMatrix> {
    let f = frame;
    let unit = |r: &Label, c: &Label| -> Result<Rational> {
        let v = q.at(r, c)?.clone();
        if v.abs().is_one() {
            Ok(v)
        } else {
            Err(Error::ZeroResignFactor { row: r.clone(), col: c.clone() })
        }
    };
    let a = unit(&f.x2, &f.y0)?;
    let b = unit(&f.x2, &f.y1)?;
    let c = unit(&f.x0, &f.y0)?;
    let d = unit(&f.x0, &f.y2)?;
    let e = unit(&f.x1, &f.y2)?;
    let u_x0 = a.clone() * c.clone();
    let u_x1 = a.clone() * c.clone() * d.clone() * e;
    let v_y2 = a.clone() * c * d;
    let rows = scale_rows(q, |l| {
        if *l == f.x0 {
            u_x0.clone()
        } else if *l == f.x1 {
            u_x1.clone()
        } else {
            Rational::one()
        }
    })?;
    scale_cols(&rows, |l| {
        if *l == f.y0 {
            a.clone()
        } else if *l == f.y1 {
            b.clone()
        } else if *l == f.y2 {
            v_y2.clone()
        } else {
            Rational::one()
        }
    })
}

/// Intermediate results of the canonical signing of a 3-sum.
#[derive(Debug, Clone)]
pub struct Sum3Signing {
    /// `B″`
    pub signed: RatMatrix,
    /// Canonically re-signed `Bℓ″`.
    pub left: RatMatrix,
    /// Canonically re-signed `Br″`.
    pub right: RatMatrix,
    /// Blocks of `B″`, with the normalized frame.
    pub blocks: Sum3Blocks<Rational>,
}

/// `B″` from TU signings of `Bℓ` and `Br`.
pub fn canonical_signing_sum3(bl_signed: &RatMatrix, br_signed: &RatMatrix, frame: &Sum3Frame) -> Result<RatMatrix> {
    canonical_signing_sum3_detailed(bl_signed, br_signed, frame).map(|s| s.signed)
}

pub fn canonical_signing_sum3_detailed(
    bl_signed: &RatMatrix,
    br_signed: &RatMatrix,
    frame: &Sum3Frame,
) -> Result<Sum3Signing> {
    let bl = StandardRepr::new(bl_signed.support())?;
    let br = StandardRepr::new(br_signed.support())?;
    let bin = validate_sum3(&bl, &br, frame)?;
    let nf = &bin.frame;
    let left = canonical_resign(bl_signed, nf)?;
    let right = canonical_resign(br_signed, nf)?;
    let blocks = extract_blocks(&left, &right, nf, frame, bin.form, (bin.swapped_x, bin.swapped_y))?;
    if right.submatrix(&nf.x01(), &nf.y01())? != blocks.d0 {
        return violation("signed D0 differs between Bℓ and Br");
    }
    let signed = assemble(&blocks, &rational_inverse_2x2(&blocks.d0)?)?;
    Ok(Sum3Signing { signed, left, right, blocks })
}

/// `B″` as a standard representation.
pub fn canonical_signing_sum3_repr(bl_signed: &RatMatrix, br_signed: &RatMatrix, frame: &Sum3Frame) -> Result<RatRepr> {
    StandardRepr::new(canonical_signing_sum3(bl_signed, br_signed, frame)?)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::label::labels;
    use crate::tu::{is_signing_of, is_tu};

    fn l(s: &str) -> Label {
        s.into()
    }

    pub(crate) fn minimal_frame() -> Sum3Frame {
        Sum3Frame {
            x0: l("x0"),
            x1: l("x1"),
            x2: l("x2"),
            y0: l("y0"),
            y1: l("y1"),
            y2: l("y2"),
            xl: vec![],
            yl: vec![],
            xr: vec![],
            yr: vec![],
        }
    }

    fn s_pattern(d0: [[i64; 2]; 2]) -> BinMatrix {
        Matrix::from_ints(
            labels(["x2", "x0", "x1"]),
            labels(["y0", "y1", "y2"]),
            &[&[1, 1, 0], &[d0[0][0], d0[0][1], 1], &[d0[1][0], d0[1][1], 1]],
        )
        .unwrap()
    }

    #[test]
    fn minimal_identity_instance() {
        let f = minimal_frame();
        let s = StandardRepr::new(s_pattern([[1, 0], [0, 1]])).unwrap();
        let blocks = validate_sum3(&s, &s, &f).unwrap();
        assert_eq!(blocks.form, D0Form::Identity);
        assert!(!blocks.swapped_x && !blocks.swapped_y);
        let b = sum3(&blocks).unwrap();
        assert_eq!(b.matrix(), s.matrix());
    }

    #[test]
    fn border_violation() {
        let f = minimal_frame();
        let good = StandardRepr::new(s_pattern([[1, 0], [0, 1]])).unwrap();
        let bad = Matrix::from_ints(
            labels(["x2", "x0", "x1"]),
            labels(["y0", "y1", "y2"]),
            &[&[1, 1, 1], &[1, 0, 1], &[0, 1, 1]],
        )
        .unwrap();
        let r = validate_sum3(&StandardRepr::new(bad).unwrap(), &good, &f);
        assert_eq!(r.unwrap_err(), Error::PatternViolation("Bℓ(x2, y2) must be 0".into()));
    }

    #[test]
    fn d0_mismatch_and_singular() {
        let f = minimal_frame();
        let a = StandardRepr::new(s_pattern([[1, 0], [0, 1]])).unwrap();
        let b = StandardRepr::new(s_pattern([[1, 1], [0, 1]])).unwrap();
        assert_eq!(
            validate_sum3(&a, &b, &f).unwrap_err(),
            Error::PatternViolation("D0 differs between Bℓ and Br".into())
        );
        let sing = StandardRepr::new(s_pattern([[1, 1], [1, 1]])).unwrap();
        assert_eq!(validate_sum3(&sing, &sing, &f).unwrap_err(), Error::PatternViolation("D0 is singular".into()));
    }

    #[test]
    fn normalization_swaps() {
        let f = minimal_frame();
        let s = StandardRepr::new(s_pattern([[0, 1], [1, 0]])).unwrap();
        let blocks = validate_sum3(&s, &s, &f).unwrap();
        assert_eq!(blocks.form, D0Form::Identity);
        assert!(blocks.swapped_x);
        assert_eq!(blocks.frame.x0, l("x1"));
        let b = sum3(&blocks).unwrap();
        // same matrix up to the order of x0 and x1
        let back = b.matrix().submatrix(s.x(), s.y()).unwrap();
        assert_eq!(&back, s.matrix());
    }

    #[test]
    fn canonical_forms() {
        let i = Matrix::from_ints(labels(["a", "b"]), labels(["c", "d"]), &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(canonical_signing_3x3(&i).unwrap().data(), &[rat(1), rat(0), rat(0), rat(-1)]);
        let t = Matrix::from_ints(labels(["a", "b"]), labels(["c", "d"]), &[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(canonical_signing_3x3(&t).unwrap().data(), &[rat(1), rat(1), rat(0), rat(1)]);
        let other = Matrix::from_ints(labels(["a", "b"]), labels(["c", "d"]), &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(canonical_signing_3x3(&other), Err(Error::NotCanonicalForm));
        for d0 in [[[1, 0], [0, 1]], [[1, 1], [0, 1]]] {
            let sp = canonical_signing_bordered(&s_pattern(d0)).unwrap();
            assert!(is_tu(&sp).unwrap().is_tu);
            assert!(is_signing_of(&sp, &s_pattern(d0)).unwrap());
        }
    }

    #[test]
    fn resign_reaches_s_prime() {
        let f = minimal_frame();
        for d0 in [[[1, 0], [0, 1]], [[1, 1], [0, 1]]] {
            let s = s_pattern(d0);
            let target = canonical_signing_bordered(&s).unwrap();
            // every sign pattern on the support that is TU
            let nz = s.nonzeros();
            for mask in 0u32..1 << nz.len() {
                let mut q = s.to_rational();
                let mut grid: Vec<Vec<Rational>> = (0..3).map(|i| q.row(i).to_vec()).collect();
                for (k, &(i, j)) in nz.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        grid[i][j] = -grid[i][j].clone();
                    }
                }
                q = Matrix::from_rows(q.row_labels().to_vec(), q.col_labels().to_vec(), grid).unwrap();
                if !is_tu(&q).unwrap().is_tu {
                    continue;
                }
                let r = canonical_resign(&q, &f).unwrap();
                assert_eq!(r, target);
                assert_eq!(canonical_resign(&r, &f).unwrap(), r);
            }
        }
    }

    #[test]
    fn resign_zero_factor() {
        let f = minimal_frame();
        let q = Matrix::from_ints(
            labels(["x2", "x0", "x1"]),
            labels(["y0", "y1", "y2"]),
            &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]],
        )
        .unwrap();
        assert_eq!(
            canonical_resign(&q, &f),
            Err(Error::ZeroResignFactor { row: l("x0"), col: l("y0") })
        );
    }

    #[test]
    fn minimal_pipeline() {
        let f = minimal_frame();
        let s = s_pattern([[1, 0], [0, 1]]);
        // a TU signing other than S′: flip row x0
        let q = scale_rows(&canonical_signing_bordered(&s).unwrap(), |l| if l.as_str() == "x0" { rat(-1) } else { rat(1) }).unwrap();
        let b = canonical_signing_sum3(&q, &q, &f).unwrap();
        assert_eq!(b, canonical_signing_bordered(&s).unwrap());
    }

    #[test]
    fn triangular_inverse() {
        let t = Matrix::from_ints(labels(["a", "b"]), labels(["c", "d"]), &[&[1, 1], &[0, 1]]).unwrap();
        let inv = gf2_inverse_2x2(&t).unwrap();
        assert_eq!(inv.data(), t.data());
        let tq: RatMatrix = t.to_rational();
        let inv_q = rational_inverse_2x2(&tq).unwrap();
        assert_eq!(tq.matmul(&inv_q).unwrap(), Matrix::identity(labels(["a", "b"])).unwrap());
    }
}
