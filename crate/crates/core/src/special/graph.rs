use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{Matrix, RatMatrix};
use crate::matroid::{dual_repr, standardize_any, vector_matroid, BinRepr, StandardRepr};
use crate::scalar::{rat, Rational};
use crate::tu::Signing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: Label,
    pub tail: Label,
    pub head: Label,
}

/// Directed multigraph; self-loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    nodes: Vec<Label>,
    edges: Vec<Edge>,
}

impl Digraph {
    pub fn new(nodes: Vec<Label>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &nodes {
            if !seen.insert(n) {
                return Err(Error::DuplicateLabel(n.clone()));
            }
        }
        let mut seen_e = HashSet::new();
        for e in &edges {
            if !seen_e.insert(&e.label) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
            for end in [&e.tail, &e.head] {
                if !seen.contains(end) {
                    return Err(Error::UnknownLabel(end.clone()));
                }
            }
        }
        Ok(Digraph { nodes, edges })
    }

    /// Graph from `(label, tail, head)` triples; nodes in order of first
    /// appearance.
    pub fn from_edges<L: Into<Label> + Clone>(edges: &[(L, L, L)]) -> Result<Self> {
        let mut nodes: Vec<Label> = Vec::new();
        let mut es = Vec::with_capacity(edges.len());
        for (l, t, h) in edges {
            let (t, h): (Label, Label) = (t.clone().into(), h.clone().into());
            for n in [&t, &h] {
                if !nodes.contains(n) {
                    nodes.push(n.clone());
                }
            }
            es.push(Edge { label: l.clone().into(), tail: t, head: h });
        }
        Digraph::new(nodes, es)
    }

    pub fn nodes(&self) -> &[Label] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<Label> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }
}

/// Every column is zero, or has exactly one `+1`, one `-1` and zeros
/// elsewhere.
pub fn is_node_incidence(a: &RatMatrix) -> bool {
    (0..a.ncols()).all(|j| {
        let col = a.column(j);
        let (mut plus, mut minus) = (0, 0);
        for v in &col {
            if v.is_one() {
                plus += 1;
            } else if *v == -Rational::one() {
                minus += 1;
            } else if !v.is_zero() {
                return false;
            }
        }
        (plus, minus) == (0, 0) || (plus, minus) == (1, 1)
    })
}

/// Rows are nodes and columns edges: `+1` at the tail, `-1` at the head.
pub fn incidence_matrix(g: &Digraph) -> RatMatrix {
    let n = g.edges.len();
    let mut data = vec![rat(0); g.nodes.len() * n];
    for (j, e) in g.edges.iter().enumerate() {
        if e.tail == e.head {
            continue;
        }
        let t = g.nodes.iter().position(|x| *x == e.tail).expect("validated");
        let h = g.nodes.iter().position(|x| *x == e.head).expect("validated");
        data[t * n + j] = rat(1);
        data[h * n + j] = rat(-1);
    }
    Matrix::new(g.nodes.clone(), g.edge_labels(), data).expect("validated labels")
}

/// A GF(2) standard representation with a TU signing of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularRepr {
    pub repr: BinRepr,
    pub signing: Signing,
}

impl RegularRepr {
    pub fn new(signed: RatMatrix) -> Result<Self> {
        let signing = Signing::of_support(signed)?;
        Ok(RegularRepr { repr: StandardRepr::new(signing.of.clone())?, signing })
    }

    /// Same matroid on `X* = Y`, `Y* = X`; the signing becomes `-Qᵀ`.
    pub fn dual(&self) -> Result<Self> {
        let q = dual_repr(&StandardRepr::new(self.signing.signed.clone())?);
        RegularRepr::new(q.into_matrix())
    }
}

/// Standardizes the incidence matrix at the greedy spanning forest (edges
/// taken in the graph's order).
pub fn graphic_standard_repr(g: &Digraph) -> Result<RegularRepr> {
    let a = incidence_matrix(g);
    let base = vector_matroid(&a).find_base();
    let s = standardize_any(&a, &base)?;
    RegularRepr::new(s.into_matrix())
}

pub fn cographic_standard_repr(g: &Digraph) -> Result<RegularRepr> {
    graphic_standard_repr(g)?.dual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::scalar::Gf2;
    use crate::tu::is_tu;

    #[test]
    fn incidence_examples() {
        let a = Matrix::from_ints(labels(["a", "b", "c"]), labels(["e", "f"]), &[&[1, 0], &[-1, 1], &[0, -1]]).unwrap();
        assert!(is_node_incidence(&a));
        let z = Matrix::from_ints(labels(["a", "b"]), labels(["e"]), &[&[0], &[0]]).unwrap();
        assert!(is_node_incidence(&z));
        let bad = Matrix::from_ints(labels(["a", "b"]), labels(["e", "f"]), &[&[1, 1], &[1, -1]]).unwrap();
        assert!(!is_node_incidence(&bad));

        let g = Digraph::from_edges(&[("e", "u", "v")]).unwrap();
        assert_eq!(incidence_matrix(&g).data(), &[rat(1), rat(-1)]);
        let lp = Digraph::from_edges(&[("e", "u", "u")]).unwrap();
        assert!(incidence_matrix(&lp).is_zero());

        let tri = Digraph::from_edges(&[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")]).unwrap();
        let a = incidence_matrix(&tri);
        assert!(is_node_incidence(&a));
        assert!(is_tu(&a).unwrap().is_tu);
    }

    #[test]
    fn graphic_examples() {
        let one = graphic_standard_repr(&Digraph::from_edges(&[("e", "u", "v")]).unwrap()).unwrap();
        assert_eq!(one.repr.x(), &labels(["e"])[..]);
        assert!(one.repr.y().is_empty());

        let path = Digraph::from_edges(&[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d")]).unwrap();
        assert!(graphic_standard_repr(&path).unwrap().repr.y().is_empty());

        let tri = Digraph::from_edges(&[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")]).unwrap();
        let g = graphic_standard_repr(&tri).unwrap();
        assert_eq!(g.repr.x(), &labels(["e1", "e2"])[..]);
        assert_eq!(g.repr.matrix().data(), &[Gf2::ONE, Gf2::ONE]);
        let c = cographic_standard_repr(&tri).unwrap();
        assert_eq!(c.repr.x(), &labels(["e3"])[..]);
        assert_eq!(c.repr.matrix().data(), &[Gf2::ONE, Gf2::ONE]);
        assert!(is_tu(&c.signing.signed).unwrap().is_tu);

        let tree_dual = cographic_standard_repr(&path).unwrap();
        assert!(tree_dual.repr.x().is_empty());

        let empty = graphic_standard_repr(&Digraph::new(vec![], vec![]).unwrap()).unwrap();
        assert!(empty.repr.ground().is_empty());
    }
}
