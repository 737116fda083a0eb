//! Bit-packed GF(2) kernels and the 2x2 classification used by the 3-sum.

use crate::error::{Error, Result};
use crate::matrix::{BinMatrix, Matrix};
use crate::scalar::Gf2;

const WORD: usize = 64;

/// Dense GF(2) matrix with each row packed into `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(WORD);
        BitMatrix { rows, cols, words, bits: vec![0; rows * words] }
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Gf2]) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if data[i * cols + j].0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / WORD];
        if v {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for k in 0..self.words {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.bits.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Rank by forward elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(p, rank);
            for i in rank + 1..m.rows {
                if m.get(i, c) {
                    m.xor_row_into(rank, i);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse via Gauss-Jordan, `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, true);
        }
        for c in 0..n {
            let p = (c..n).find(|&i| aug.get(i, c))?;
            aug.swap_rows(p, c);
            for i in 0..n {
                if i != c && aug.get(i, c) {
                    aug.xor_row_into(c, i);
                }
            }
        }
        let mut inv = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Canonical shape of an invertible 2x2 GF(2) matrix after reindexing.
///
/// Permutations are positional: `d0[row_perm[i]][col_perm[j]]` equals the
/// canonical form's entry `(i, j)`, where the forms are `[[1,0],[0,1]]` and
/// `[[1,1],[0,1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoByTwoForm {
    IdentityLike { row_perm: [usize; 2], col_perm: [usize; 2] },
    TriangularLike { row_perm: [usize; 2], col_perm: [usize; 2] },
    Singular,
}

impl TwoByTwoForm {
    pub fn perms(&self) -> Option<([usize; 2], [usize; 2])> {
        match *self {
            TwoByTwoForm::IdentityLike { row_perm, col_perm }
            | TwoByTwoForm::TriangularLike { row_perm, col_perm } => Some((row_perm, col_perm)),
            TwoByTwoForm::Singular => None,
        }
    }
}

pub const IDENTITY_2X2: [[bool; 2]; 2] = [[true, false], [false, true]];
pub const TRIANGULAR_2X2: [[bool; 2]; 2] = [[true, true], [false, true]];

const PERMS: [([usize; 2], [usize; 2]); 4] =
    [([0, 1], [0, 1]), ([1, 0], [0, 1]), ([0, 1], [1, 0]), ([1, 0], [1, 0])];

pub fn classify_invertible_2x2_gf2(d0: &BinMatrix) -> Result<TwoByTwoForm> {
    if d0.nrows() != 2 || d0.ncols() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "expected 2x2, got {}x{}",
            d0.nrows(),
            d0.ncols()
        )));
    }
    let matches = |form: &[[bool; 2]; 2], rp: &[usize; 2], cp: &[usize; 2]| {
        (0..2).all(|i| (0..2).all(|j| d0.get(rp[i], cp[j]).0 == form[i][j]))
    };
    for (rp, cp) in PERMS {
        if matches(&IDENTITY_2X2, &rp, &cp) {
            return Ok(TwoByTwoForm::IdentityLike { row_perm: rp, col_perm: cp });
        }
    }
    for (rp, cp) in PERMS {
        if matches(&TRIANGULAR_2X2, &rp, &cp) {
            return Ok(TwoByTwoForm::TriangularLike { row_perm: rp, col_perm: cp });
        }
    }
    Ok(TwoByTwoForm::Singular)
}

/// Inverse of a 2x2 GF(2) matrix; labels of the result are transposed
/// (rows become the input's columns) so that `d0 * inv` is defined.
pub fn gf2_inverse_2x2(d0: &BinMatrix) -> Result<BinMatrix> {
    if d0.nrows() != 2 || d0.ncols() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "expected 2x2, got {}x{}",
            d0.nrows(),
            d0.ncols()
        )));
    }
    let (a, b, c, d) = (d0.get(0, 0), d0.get(0, 1), d0.get(1, 0), d0.get(1, 1));
    if (a * d - b * c).0 {
        // adjugate; the determinant is 1
        Matrix::new(
            d0.col_labels().to_vec(),
            d0.row_labels().to_vec(),
            vec![d, b, c, a],
        )
    } else {
        Err(Error::SingularMatrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;

    fn bin(rows: &[[u8; 2]; 2]) -> BinMatrix {
        let data = rows.iter().flatten().map(|&v| Gf2(v == 1)).collect();
        Matrix::new(labels(["r0", "r1"]), labels(["c0", "c1"]), data).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_invertible_2x2_gf2(&bin(&[[1, 0], [0, 1]])).unwrap(),
            TwoByTwoForm::IdentityLike { row_perm: [0, 1], col_perm: [0, 1] }
        );
        assert_eq!(
            classify_invertible_2x2_gf2(&bin(&[[0, 1], [1, 1]])).unwrap(),
            TwoByTwoForm::TriangularLike { row_perm: [1, 0], col_perm: [0, 1] }
        );
        assert_eq!(
            classify_invertible_2x2_gf2(&bin(&[[1, 1], [1, 1]])).unwrap(),
            TwoByTwoForm::Singular
        );
    }

    /// Every one of the 16 matrices: invertible ones are classified, and
    /// applying the returned permutations yields the stated form.
    #[test]
    fn classify_exhaustive() {
        let mut invertible = 0;
        for bits in 0u8..16 {
            let m = bin(&[[bits & 1, bits >> 1 & 1], [bits >> 2 & 1, bits >> 3 & 1]]);
            let det = m.get(0, 0) * m.get(1, 1) + m.get(0, 1) * m.get(1, 0);
            let form = classify_invertible_2x2_gf2(&m).unwrap();
            match form {
                TwoByTwoForm::Singular => assert!(!det.0),
                TwoByTwoForm::IdentityLike { row_perm, col_perm }
                | TwoByTwoForm::TriangularLike { row_perm, col_perm } => {
                    invertible += 1;
                    let target = if matches!(form, TwoByTwoForm::IdentityLike { .. }) {
                        IDENTITY_2X2
                    } else {
                        TRIANGULAR_2X2
                    };
                    for i in 0..2 {
                        for j in 0..2 {
                            assert_eq!(m.get(row_perm[i], col_perm[j]).0, target[i][j]);
                        }
                    }
                }
            }
        }
        assert_eq!(invertible, 6);
    }

    #[test]
    fn inverse_examples() {
        for m in [bin(&[[1, 0], [0, 1]]), bin(&[[1, 1], [0, 1]]), bin(&[[0, 1], [1, 0]])] {
            let inv = gf2_inverse_2x2(&m).unwrap();
            // each of these is self-inverse
            assert_eq!(inv.data(), m.data());
            let prod = m.matmul(&inv).unwrap();
            assert_eq!(prod.data(), &[Gf2::ONE, Gf2::ZERO, Gf2::ZERO, Gf2::ONE]);
        }
        assert_eq!(gf2_inverse_2x2(&bin(&[[1, 1], [1, 1]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn bit_inverse_and_rank() {
        let m = BitMatrix::from_dense(
            3,
            3,
            &[1, 1, 0, 1, 0, 1, 0, 1, 1].map(|v| Gf2(v == 1)),
        );
        assert_eq!(m.rank(), 2);
        assert!(m.inverse().is_none());
        let wide = BitMatrix::from_dense(1, 130, &[Gf2::ONE; 130]);
        assert_eq!(wide.rank(), 1);
    }
}
