//! Row spaces of GF(2) standard representations by enumeration.
//!
//! Vectors over a ground list are bitmasks: bit `k` is the coordinate of the
//! `k`-th label. Everything here enumerates all `2^n` combinations, so it is
//! meant for small grounds only.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::BinMatrix;
use crate::matroid::{dual_repr, BinRepr};

pub const MAX_ROWSPACE_GROUND: usize = 20;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ROWSPACE_GROUND {
        return Err(Error::SizeLimitExceeded { what: "row space enumeration", limit: MAX_ROWSPACE_GROUND as u64 });
    }
    Ok(())
}

/// Rows of `a` as masks over `order`, which must contain every column label.
fn row_masks(a: &BinMatrix, order: &[Label]) -> Result<Vec<u64>> {
    let pos: Vec<usize> = a
        .col_labels()
        .iter()
        .map(|l| order.iter().position(|o| o == l).ok_or_else(|| Error::UnknownLabel(l.clone())))
        .collect::<Result<_>>()?;
    Ok((0..a.nrows())
        .map(|i| (0..a.ncols()).filter(|&j| a.get(i, j).bit()).fold(0u64, |acc, j| acc | 1 << pos[j]))
        .collect())
}

/// Every GF(2) combination of the rows of `a`.
pub fn row_space(a: &BinMatrix, order: &[Label]) -> Result<BTreeSet<u64>> {
    check_size(order.len())?;
    check_size(a.nrows())?;
    let rows = row_masks(a, order)?;
    Ok((0u64..1 << rows.len())
        .map(|c| (0..rows.len()).filter(|&i| c >> i & 1 == 1).fold(0, |acc, i| acc ^ rows[i]))
        .collect())
}

/// `{(u, uB) : u ∈ GF(2)^X}` over the ground `X ∪ Y`.
pub fn standard_row_space(s: &BinRepr) -> Result<BTreeSet<u64>> {
    let (nx, ny) = (s.x().len(), s.y().len());
    check_size(nx + ny)?;
    let b = s.matrix();
    Ok((0u64..1 << nx)
        .map(|u| {
            let ub = (0..ny).fold(0u64, |acc, j| {
                let bit = (0..nx).filter(|&i| u >> i & 1 == 1 && b.get(i, j).bit()).count() % 2;
                acc | (bit as u64) << (nx + j)
            });
            u | ub
        })
        .collect())
}

/// `{(bBᵀ, b) : b ∈ GF(2)^Y}` over the ground `X ∪ Y`.
pub fn standard_orth_complement(s: &BinRepr) -> Result<BTreeSet<u64>> {
    let (nx, ny) = (s.x().len(), s.y().len());
    check_size(nx + ny)?;
    let m = s.matrix();
    Ok((0u64..1 << ny)
        .map(|b| {
            let bbt = (0..nx).fold(0u64, |acc, i| {
                let bit = (0..ny).filter(|&j| b >> j & 1 == 1 && m.get(i, j).bit()).count() % 2;
                acc | (bit as u64) << i
            });
            bbt | b << nx
        })
        .collect())
}

/// All vectors of `GF(2)^n` orthogonal to every member of `space`.
pub fn orthogonal_complement(space: &BTreeSet<u64>, n: usize) -> Result<BTreeSet<u64>> {
    check_size(n)?;
    Ok((0u64..1 << n).filter(|v| space.iter().all(|u| (u & v).count_ones() % 2 == 0)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowSpaceReport {
    /// Row combinations of `[1 | B]` equal `{(u, uB)}`.
    pub row_space: bool,
    /// Brute-force orthogonal complement equals `{(bBᵀ, b)}`.
    pub orth_complement: bool,
    /// Row space of `[1 | B*]` for the dual equals the complement.
    pub dual_row_space: bool,
}

impl RowSpaceReport {
    pub fn holds(&self) -> bool {
        self.row_space && self.orth_complement && self.dual_row_space
    }
}

pub fn check_row_space_lemmas(s: &BinRepr) -> Result<RowSpaceReport> {
    let ground = s.ground();
    let u = row_space(&s.full_matrix(), &ground)?;
    let perp = orthogonal_complement(&u, ground.len())?;
    let dual = row_space(&dual_repr(s).full_matrix(), &ground)?;
    Ok(RowSpaceReport {
        row_space: u == standard_row_space(s)?,
        orth_complement: perp == standard_orth_complement(s)?,
        dual_row_space: dual == perp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::matrix::Matrix;
    use crate::matroid::StandardRepr;

    #[test]
    fn single_entry() {
        let s = StandardRepr::new(Matrix::from_ints(labels(["x"]), labels(["y"]), &[&[1]]).unwrap()).unwrap();
        assert_eq!(standard_row_space(&s).unwrap(), BTreeSet::from([0, 0b11]));
        assert_eq!(standard_orth_complement(&s).unwrap(), BTreeSet::from([0, 0b11]));
        assert!(check_row_space_lemmas(&s).unwrap().holds());
    }

    #[test]
    fn two_by_three() {
        let b = Matrix::from_ints(labels(["x0", "x1"]), labels(["y0", "y1", "y2"]), &[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        let s = StandardRepr::new(b).unwrap();
        let u = standard_row_space(&s).unwrap();
        assert_eq!(u.len(), 4);
        let perp = orthogonal_complement(&u, 5).unwrap();
        assert_eq!(perp.len(), 8);
        assert!(check_row_space_lemmas(&s).unwrap().holds());
    }
}
