use std::collections::{HashMap, HashSet};

use crate::error::Error;
use crate::label::Label;
use crate::matrix::{BinMatrix, Matrix};
use crate::matroid::{BinRepr, StandardRepr};

const R10_ROWS: [[i64; 5]; 5] = [
    [1, 0, 0, 1, 1],
    [1, 1, 0, 0, 1],
    [0, 1, 1, 0, 1],
    [0, 0, 1, 1, 1],
    [1, 1, 1, 1, 1],
];

/// Row labels `x1..x5`.
pub fn r10_row_labels() -> Vec<Label> {
    (1..=5).map(|i| Label::new(format!("x{i}"))).collect()
}

/// Column labels `y1..y5`.
pub fn r10_col_labels() -> Vec<Label> {
    (1..=5).map(|i| Label::new(format!("y{i}"))).collect()
}

pub fn r10() -> BinRepr {
    let grid: Vec<&[i64]> = R10_ROWS.iter().map(|r| r.as_slice()).collect();
    StandardRepr::new(Matrix::from_ints(r10_row_labels(), r10_col_labels(), &grid).expect("fixed shape"))
        .expect("disjoint labels")
}

/// Renames `x1..x5`, `y1..y5`; unmapped labels keep their name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct R10Cert {
    pub rows: Vec<(Label, Label)>,
    pub cols: Vec<(Label, Label)>,
    /// Matrix the relabeled R10 must equal, if given.
    pub expect: Option<BinMatrix>,
}

impl R10Cert {
    pub fn identity() -> Self {
        R10Cert::default()
    }

    /// The relabeled R10, checked against `expect`. Errors carry a plain
    /// reason; callers attach the tree path.
    pub fn realize(&self) -> std::result::Result<BinRepr, String> {
        let map = |pairs: &[(Label, Label)], canon: &[Label]| -> std::result::Result<HashMap<Label, Label>, String> {
            let mut m = HashMap::new();
            for (from, to) in pairs {
                if !canon.contains(from) {
                    return Err(format!("`{from}` is not an R10 label on this axis"));
                }
                if m.insert(from.clone(), to.clone()).is_some() {
                    return Err(format!("`{from}` is mapped twice"));
                }
            }
            Ok(m)
        };
        let rm = map(&self.rows, &r10_row_labels())?;
        let cm = map(&self.cols, &r10_col_labels())?;
        let apply = |canon: Vec<Label>, m: &HashMap<Label, Label>| -> Vec<Label> {
            canon.into_iter().map(|l| m.get(&l).cloned().unwrap_or(l)).collect()
        };
        let rows = apply(r10_row_labels(), &rm);
        let cols = apply(r10_col_labels(), &cm);
        let mut seen = HashSet::new();
        for l in rows.iter().chain(&cols) {
            if !seen.insert(l) {
                return Err(format!("relabeling sends two labels to `{l}`"));
            }
        }
        let b = r10().into_matrix().with_row_labels(rows).and_then(|m| m.with_col_labels(cols)).map_err(|e| e.to_string())?;
        if let Some(want) = &self.expect {
            let ok = want.nrows() == 5
                && want.ncols() == 5
                && want.submatrix(b.row_labels(), b.col_labels()).is_ok_and(|w| w == b);
            if !ok {
                return Err("matrix differs from the relabeled R10".into());
            }
        }
        StandardRepr::new(b).map_err(|e: Error| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf2;
    use crate::signing::find_tu_signing;

    #[test]
    fn displayed_entries() {
        let r = r10();
        assert_eq!(r.matrix().get(0, 0), Gf2::ONE);
        assert_eq!(r.matrix().get(0, 1), Gf2::ZERO);
        assert_eq!(r.ground().len(), 10);
        assert!(find_tu_signing(r.matrix()).unwrap().is_some());
    }

    #[test]
    fn relabel_cert() {
        let c = R10Cert { rows: vec![("x1".into(), "a".into())], cols: vec![("y2".into(), "b".into())], expect: None };
        let r = c.realize().unwrap();
        assert_eq!(r.x()[0], Label::from("a"));
        assert_eq!(r.y()[1], Label::from("b"));
        let dup = R10Cert { rows: vec![("x1".into(), "x2".into())], ..Default::default() };
        assert!(dup.realize().is_err());
        let wrong = R10Cert { rows: vec![("y1".into(), "q".into())], ..Default::default() };
        assert!(wrong.realize().is_err());
        let exp = R10Cert { expect: Some(r10().into_matrix().transpose()), ..Default::default() };
        assert!(exp.realize().is_err());
        let exp = R10Cert { expect: Some(r10().into_matrix()), ..Default::default() };
        assert!(exp.realize().is_ok());
    }
}
