//! Exact totally unimodular matrices and regular matroids.
//!
//! Matrices are labeled and generic over a [`Field`]; the two provided
//! fields are the rationals and GF(2), with [`RatMatrix`] and [`BinMatrix`]
//! as the working aliases.

pub mod error;
pub mod format;
pub mod gf2;
pub mod label;
pub mod matrix;
pub mod matroid;
pub mod pivot;
pub mod rowspace;
pub mod scalar;
pub mod signing;
pub mod special;
pub mod sums;
pub mod tu;
pub mod verify;

pub use error::{Error, Result};
pub use format::{parse_matrix, AnyMatrix};
pub use gf2::{classify_invertible_2x2_gf2, gf2_inverse_2x2, BitMatrix, TwoByTwoForm};
pub use label::{labels, Label};
pub use matrix::{BinMatrix, Matrix, RatMatrix};
pub use scalar::{frac, rat, Field, FieldTag, Gf2, Rational};
pub use pivot::{long_tableau_pivot, short_tableau_pivot, short_tableau_pivot_constructive, PivotSpec};
pub use signing::{find_tu_signing, find_tu_signing_traced};
pub use tu::{is_k_pu, is_signing_of, is_tu, is_tu_with_limit, scale_cols, scale_rows, Signing, TuReport};
