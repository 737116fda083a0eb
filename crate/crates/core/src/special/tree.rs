use crate::error::{Error, Result};
use crate::label::Label;
use crate::matroid::{BinRepr, StandardRepr};
use crate::signing::find_tu_signing;
use crate::sums::{canonical_signing_sum3, sum1, sum2, sum3_of, Sum3Frame};
use crate::tu::Signing;

use super::graph::{cographic_standard_repr, graphic_standard_repr, Digraph, RegularRepr};
use super::r10::R10Cert;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Leaf {
    Graphic(Digraph),
    Cographic(Digraph),
    R10(R10Cert),
}

/// Decomposition of a good matroid into graphic, cographic and R10 pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodTree {
    Leaf(Leaf),
    Sum1(Box<GoodTree>, Box<GoodTree>),
    Sum2 { x: Label, y: Label, left: Box<GoodTree>, right: Box<GoodTree> },
    Sum3 { frame: Sum3Frame, left: Box<GoodTree>, right: Box<GoodTree> },
}

impl GoodTree {
    pub fn graphic(g: Digraph) -> Self {
        GoodTree::Leaf(Leaf::Graphic(g))
    }

    pub fn cographic(g: Digraph) -> Self {
        GoodTree::Leaf(Leaf::Cographic(g))
    }

    pub fn r10(c: R10Cert) -> Self {
        GoodTree::Leaf(Leaf::R10(c))
    }

    pub fn sum1(l: GoodTree, r: GoodTree) -> Self {
        GoodTree::Sum1(Box::new(l), Box::new(r))
    }

    pub fn sum2(x: impl Into<Label>, y: impl Into<Label>, l: GoodTree, r: GoodTree) -> Self {
        GoodTree::Sum2 { x: x.into(), y: y.into(), left: Box::new(l), right: Box::new(r) }
    }

    pub fn sum3(frame: Sum3Frame, l: GoodTree, r: GoodTree) -> Self {
        GoodTree::Sum3 { frame, left: Box::new(l), right: Box::new(r) }
    }

    /// Number of leaves.
    pub fn leaves(&self) -> usize {
        match self {
            GoodTree::Leaf(_) => 1,
            GoodTree::Sum1(l, r) | GoodTree::Sum2 { left: l, right: r, .. } | GoodTree::Sum3 { left: l, right: r, .. } => {
                l.leaves() + r.leaves()
            }
        }
    }
}

fn cert_err(path: &str, e: impl ToString) -> Error {
    Error::CertInvalid { path: path.to_string(), reason: e.to_string() }
}

fn sum_err(path: &str, e: impl ToString) -> Error {
    Error::SumPreconditionFailed { path: path.to_string(), reason: e.to_string() }
}

fn child(path: &str, side: &str) -> String {
    format!("{path}/{side}")
}

fn eval_leaf(leaf: &Leaf, path: &str) -> Result<RegularRepr> {
    match leaf {
        Leaf::Graphic(g) => graphic_standard_repr(g).map_err(|e| cert_err(path, e)),
        Leaf::Cographic(g) => cographic_standard_repr(g).map_err(|e| cert_err(path, e)),
        Leaf::R10(c) => {
            let repr = c.realize().map_err(|e| cert_err(path, e))?;
            let s = find_tu_signing(repr.matrix())
                .map_err(|e| cert_err(path, e))?
                .ok_or_else(|| cert_err(path, "R10 has no TU signing"))?;
            Ok(RegularRepr { repr, signing: s })
        }
    }
}

/// GF(2) representation of the tree, checking every certificate and every
/// sum precondition on the way up.
pub fn validate_good_tree(t: &GoodTree) -> Result<BinRepr> {
    validate_at(t, "root")
}

fn validate_at(t: &GoodTree, path: &str) -> Result<BinRepr> {
    match t {
        GoodTree::Leaf(leaf) => match leaf {
            Leaf::R10(c) => c.realize().map_err(|e| cert_err(path, e)),
            _ => Ok(eval_leaf(leaf, path)?.repr),
        },
        GoodTree::Sum1(l, r) => {
            let (a, b) = (validate_at(l, &child(path, "left"))?, validate_at(r, &child(path, "right"))?);
            sum1(&a, &b).map_err(|e| sum_err(path, e))
        }
        GoodTree::Sum2 { x, y, left, right } => {
            let a = validate_at(left, &child(path, "left"))?;
            let b = validate_at(right, &child(path, "right"))?;
            sum2(&a, &b, x, y).map_err(|e| sum_err(path, e))
        }
        GoodTree::Sum3 { frame, left, right } => {
            let a = validate_at(left, &child(path, "left"))?;
            let b = validate_at(right, &child(path, "right"))?;
            sum3_of(&a, &b, frame).map_err(|e| sum_err(path, e))
        }
    }
}

/// Representation and TU signing of a good matroid.
///
/// The whole tree is validated before any signing of a sum is computed.
/// Total unimodularity of the result is not re-checked here.
pub fn eval_good_tree(t: &GoodTree) -> Result<RegularRepr> {
    validate_good_tree(t)?;
    eval_at(t, "root")
}

fn eval_at(t: &GoodTree, path: &str) -> Result<RegularRepr> {
    let pair = |l: &GoodTree, r: &GoodTree| -> Result<(RegularRepr, RegularRepr)> {
        Ok((eval_at(l, &child(path, "left"))?, eval_at(r, &child(path, "right"))?))
    };
    let signed_repr = |r: &RegularRepr| StandardRepr::new(r.signing.signed.clone());
    let (repr, signed) = match t {
        GoodTree::Leaf(leaf) => return eval_leaf(leaf, path),
        GoodTree::Sum1(l, r) => {
            let (a, b) = pair(l, r)?;
            let repr = sum1(&a.repr, &b.repr).map_err(|e| sum_err(path, e))?;
            let q = sum1(&signed_repr(&a)?, &signed_repr(&b)?).map_err(|e| sum_err(path, e))?;
            (repr, q.into_matrix())
        }
        GoodTree::Sum2 { x, y, left, right } => {
            let (a, b) = pair(left, right)?;
            let repr = sum2(&a.repr, &b.repr, x, y).map_err(|e| sum_err(path, e))?;
            let q = sum2(&signed_repr(&a)?, &signed_repr(&b)?, x, y).map_err(|e| sum_err(path, e))?;
            (repr, q.into_matrix())
        }
        GoodTree::Sum3 { frame, left, right } => {
            let (a, b) = pair(left, right)?;
            let repr = sum3_of(&a.repr, &b.repr, frame).map_err(|e| sum_err(path, e))?;
            let q = canonical_signing_sum3(&a.signing.signed, &b.signing.signed, frame).map_err(|e| sum_err(path, e))?;
            (repr, q)
        }
    };
    let of = repr.matrix().clone();
    let signing = Signing::new(signed, of).map_err(|e| sum_err(path, e))?;
    Ok(RegularRepr { repr, signing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::r10::r10;
    use crate::tu::{is_signing_of, is_tu};

    fn edge(l: &str) -> GoodTree {
        GoodTree::graphic(Digraph::from_edges(&[(l, &format!("{l}_t")[..], &format!("{l}_h")[..])]).unwrap())
    }

    #[test]
    fn r10_leaf() {
        let out = eval_good_tree(&GoodTree::r10(R10Cert::identity())).unwrap();
        assert_eq!(out.repr, r10());
        assert!(is_tu(&out.signing.signed).unwrap().is_tu);
    }

    #[test]
    fn sum1_of_edges() {
        let out = eval_good_tree(&GoodTree::sum1(edge("a"), edge("b"))).unwrap();
        // two bridges: both in the base, nothing outside it
        assert_eq!(out.repr.x().len(), 2);
        assert!(is_signing_of(&out.signing.signed, out.repr.matrix()).unwrap());
    }

    #[test]
    fn error_paths() {
        let t = GoodTree::sum1(edge("a"), GoodTree::sum1(edge("b"), edge("a")));
        assert!(matches!(eval_good_tree(&t), Err(Error::SumPreconditionFailed { path, .. }) if path == "root"));
        let bad = R10Cert { rows: vec![("x1".into(), "x2".into())], ..Default::default() };
        let t = GoodTree::sum1(edge("a"), GoodTree::r10(bad));
        assert!(matches!(eval_good_tree(&t), Err(Error::CertInvalid { path, .. }) if path == "root/right"));
    }
}
