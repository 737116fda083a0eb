use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::Matrix;
use crate::matroid::StandardRepr;
use crate::scalar::Field;

fn first_common<'a>(a: &'a [Label], b: &[Label]) -> Option<&'a Label> {
    let set: HashSet<&Label> = b.iter().collect();
    a.iter().find(|l| set.contains(l))
}

/// Block diagonal `[[Bℓ, 0], [0, Br]]` on `Xℓ ∪ Xr` and `Yℓ ∪ Yr`.
pub fn sum1<F: Field>(bl: &StandardRepr<F>, br: &StandardRepr<F>) -> Result<StandardRepr<F>> {
    let sets = [bl.x(), bl.y(), br.x(), br.y()];
    for i in 0..4 {
        for j in i + 1..4 {
            if let Some(l) = first_common(sets[i], sets[j]) {
                return Err(Error::LabelOverlap(l.clone()));
            }
        }
    }
    let top = bl.matrix().hstack(&Matrix::zeros(bl.x().to_vec(), br.y().to_vec())?)?;
    let bottom = Matrix::zeros(br.x().to_vec(), bl.y().to_vec())?.hstack(br.matrix())?;
    StandardRepr::new(top.vstack(&bottom)?)
}

/// `[[Aℓ, 0], [c ⊗ r, Ar]]` where `r = Bℓ(x, Yℓ)`, `c = Br(Xr, y)`,
/// `Aℓ = Bℓ(Xℓ \ x, Yℓ)` and `Ar = Br(Xr, Yr \ y)`.
///
/// Rows of the result are `Xℓ \ x` in `Bℓ` order followed by `Xr`; columns
/// are `Yℓ` followed by `Yr \ y`.
pub fn sum2<F: Field>(bl: &StandardRepr<F>, br: &StandardRepr<F>, x: &Label, y: &Label) -> Result<StandardRepr<F>> {
    let overlap = |a: &[Label], b: &[Label]| -> Vec<Label> {
        let set: HashSet<&Label> = b.iter().collect();
        a.iter().filter(|l| set.contains(l)).cloned().collect()
    };
    let xs = overlap(bl.x(), br.x());
    if xs != [x.clone()] {
        return Err(Error::BadOverlap(format!("row sets must meet exactly in `{x}`, they meet in {xs:?}")));
    }
    let ys = overlap(bl.y(), br.y());
    if ys != [y.clone()] {
        return Err(Error::BadOverlap(format!("column sets must meet exactly in `{y}`, they meet in {ys:?}")));
    }
    if let Some(l) = first_common(bl.x(), br.y()).or_else(|| first_common(br.x(), bl.y())) {
        return Err(Error::BadOverlap(format!("`{l}` is a row on one side and a column on the other")));
    }
    let (l, r) = (bl.matrix(), br.matrix());
    let xi = l.row_index(x).expect("checked overlap");
    let yi = r.col_index(y).expect("checked overlap");
    let row = l.row(xi).to_vec();
    let col = r.column(yi);
    if row.iter().all(Zero::is_zero) {
        return Err(Error::ZeroRow(x.clone()));
    }
    if col.iter().all(Zero::is_zero) {
        return Err(Error::ZeroCol(y.clone()));
    }
    let xl: Vec<Label> = bl.x().iter().filter(|l| *l != x).cloned().collect();
    let yr: Vec<Label> = br.y().iter().filter(|l| *l != y).cloned().collect();
    let a_l = l.submatrix(&xl, bl.y())?;
    let a_r = r.submatrix(br.x(), &yr)?;
    let d = Matrix::outer(br.x().to_vec(), &col, bl.y().to_vec(), &row)?;
    let top = a_l.hstack(&Matrix::zeros(xl.clone(), yr.clone())?)?;
    let bottom = d.hstack(&a_r)?;
    StandardRepr::new(top.vstack(&bottom)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::scalar::{rat, Gf2};

    fn bin(rows: &[&str], cols: &[&str], grid: &[&[i64]]) -> StandardRepr<Gf2> {
        StandardRepr::new(Matrix::from_ints(labels(rows), labels(cols), grid).unwrap()).unwrap()
    }

    #[test]
    fn sum1_examples() {
        let s = sum1(&bin(&["a"], &["b"], &[&[1]]), &bin(&["c"], &["d"], &[&[1]])).unwrap();
        assert_eq!(s.matrix().data(), &[Gf2::ONE, Gf2::ZERO, Gf2::ZERO, Gf2::ONE]);
        let empty = StandardRepr::new(Matrix::<Gf2>::zeros(vec![], vec![]).unwrap()).unwrap();
        let br = bin(&["c"], &["d"], &[&[1]]);
        assert_eq!(sum1(&empty, &br).unwrap(), br);
        assert_eq!(
            sum1(&bin(&["a"], &["b"], &[&[1]]), &bin(&["b"], &["d"], &[&[1]])),
            Err(Error::LabelOverlap("b".into()))
        );
    }

    #[test]
    fn sum2_examples() {
        // r = (1, 1), c = (1): D = [[1, 1]]
        let bl = bin(&["p", "x"], &["u", "y"], &[&[1, 0], &[1, 1]]);
        let br = bin(&["x"], &["y", "v"], &[&[1, 1]]);
        let s = sum2(&bl, &br, &"x".into(), &"y".into()).unwrap();
        assert_eq!(s.x(), &labels(["p", "x"])[..]);
        assert_eq!(s.y(), &labels(["u", "y", "v"])[..]);
        let m = s.matrix();
        assert_eq!(m.row(1), &[Gf2::ONE, Gf2::ONE, Gf2::ONE]);
        assert_eq!(m.row(0), &[Gf2::ONE, Gf2::ZERO, Gf2::ZERO]);

        // r = (1), c = (1, 0): D = [[1], [0]]
        let bl = bin(&["x"], &["y"], &[&[1]]);
        let br = bin(&["x", "q"], &["y"], &[&[1], &[0]]);
        let s = sum2(&bl, &br, &"x".into(), &"y".into()).unwrap();
        assert_eq!(s.matrix().data(), &[Gf2::ONE, Gf2::ZERO]);

        let zero_r = bin(&["x"], &["y"], &[&[0]]);
        assert_eq!(sum2(&zero_r, &br, &"x".into(), &"y".into()), Err(Error::ZeroRow("x".into())));
        let zero_c = bin(&["x", "q"], &["y"], &[&[0], &[0]]);
        assert_eq!(sum2(&bl, &zero_c, &"x".into(), &"y".into()), Err(Error::ZeroCol("y".into())));
        assert!(matches!(sum2(&bl, &bin(&["z"], &["y"], &[&[1]]), &"x".into(), &"y".into()), Err(Error::BadOverlap(_))));
    }

    #[test]
    fn sum2_rational_signs() {
        let bl: StandardRepr<crate::scalar::Rational> = StandardRepr::new(Matrix::from_ints(labels(["x"]), labels(["a", "y"]), &[&[1, -1]]).unwrap()).unwrap();
        let br: StandardRepr<crate::scalar::Rational> = StandardRepr::new(Matrix::from_ints(labels(["x", "q"]), labels(["y"]), &[&[1], &[-1]]).unwrap()).unwrap();
        let s = sum2(&bl, &br, &"x".into(), &"y".into()).unwrap();
        assert_eq!(s.matrix().data(), &[rat(1), rat(-1), rat(-1), rat(1)]);
    }
}
