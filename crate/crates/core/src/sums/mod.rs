//! 1-, 2- and 3-sums of standard representations.

mod basic;
mod mls3;
mod three;

pub use basic::{sum1, sum2};
pub use mls3::{
    check_c_lemma, check_d_lemma, check_product_lemma, in_mls3_class, Mls3Class, Mls3Report, ProductLemmaReport,
    VectorLemmaReport,
};
pub use three::{
    canonical_resign, canonical_signing_3x3, canonical_signing_bordered, canonical_signing_sum3,
    canonical_signing_sum3_detailed, canonical_signing_sum3_repr, sum3, sum3_of, validate_sum3, D0Form, Sum3Blocks,
    Sum3Frame, Sum3Signing,
};
