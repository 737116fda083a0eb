//! Seeded random instances.
//!
//! TU matrices are network matrices: the incidence matrix of a random
//! digraph standardized at a spanning tree, possibly transposed and negated,
//! then rescaled by random `{0, ±1}` factors. Every generated matrix is
//! checked with `is_tu` before it is returned.

use std::collections::VecDeque;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::label::{numbered, Label};
use crate::matrix::{BinMatrix, Matrix, RatMatrix};
use crate::matroid::{standardize_any, RatRepr, StandardRepr};
use crate::scalar::{frac, rat, Gf2};
use crate::special::{cographic_standard_repr, graphic_standard_repr, incidence_matrix, Digraph, Edge, GoodTree};
use crate::sums::{D0Form, Sum3Frame};
use crate::tu::{is_tu, scale_cols, scale_rows};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `k` of `seed`.
pub fn stream(seed: u64, k: u64) -> Rng64 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k);
    r
}

fn l(s: impl AsRef<str>) -> Label {
    Label::new(s)
}

/// Entries in `{0} ∪ {p/q : 1 ≤ |p| ≤ 4, 1 ≤ q ≤ 3}`, zero with probability 0.3.
pub fn random_rational(rng: &mut Rng64, rows: usize, cols: usize) -> RatMatrix {
    let data = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(0.3) {
                rat(0)
            } else {
                let p = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                frac(p, rng.gen_range(1..=3))
            }
        })
        .collect();
    Matrix::new(numbered("r", rows), numbered("c", cols), data).expect("fresh labels")
}

pub fn random_binary(rng: &mut Rng64, rows: usize, cols: usize, density: f64) -> BinMatrix {
    let data = (0..rows * cols).map(|_| Gf2(rng.gen_bool(density))).collect();
    Matrix::new(numbered("r", rows), numbered("c", cols), data).expect("fresh labels")
}

fn edge(label: Label, a: &Label, b: &Label, rng: &mut Rng64) -> Edge {
    if rng.gen_bool(0.5) {
        Edge { label, tail: a.clone(), head: b.clone() }
    } else {
        Edge { label, tail: b.clone(), head: a.clone() }
    }
}

/// `m x n` network matrix: tree edges `t*` on `m + 1` nodes are the rows,
/// `n` random extra edges `n*` (self-loops allowed) the columns.
pub fn network_matrix(rng: &mut Rng64, m: usize, n: usize) -> RatMatrix {
    let nodes = numbered("v", m + 1);
    let mut edges = Vec::new();
    for i in 1..=m {
        let p = rng.gen_range(0..i);
        edges.push(edge(l(format!("t{}", i - 1)), &nodes[i], &nodes[p], rng));
    }
    for j in 0..n {
        let (a, b) = (rng.gen_range(0..=m), rng.gen_range(0..=m));
        edges.push(edge(l(format!("n{j}")), &nodes[a], &nodes[b], rng));
    }
    let g = Digraph::new(nodes, edges).expect("fresh labels");
    let base = numbered("t", m);
    standardize_any(&incidence_matrix(&g), &base).expect("tree is a base").into_matrix()
}

/// A TU matrix with `1..=max_rows` rows and `1..=max_cols` columns, labeled
/// `r*` and `c*`.
pub fn random_tu(rng: &mut Rng64, max_rows: usize, max_cols: usize) -> RatMatrix {
    let m = rng.gen_range(1..=max_rows.max(1));
    let n = rng.gen_range(1..=max_cols.max(1));
    random_tu_sized(rng, m, n)
}

pub fn random_tu_sized(rng: &mut Rng64, m: usize, n: usize) -> RatMatrix {
    let base = if rng.gen_bool(0.5) { network_matrix(rng, m, n) } else { network_matrix(rng, n, m).transpose().neg() };
    let a = base.with_row_labels(numbered("r", m)).and_then(|a| a.with_col_labels(numbered("c", n))).expect("shape");
    let factor = |rng: &mut Rng64| match rng.gen_range(0..20) {
        0 => rat(0),
        1..=9 => rat(-1),
        _ => rat(1),
    };
    let rf: Vec<_> = (0..m).map(|_| factor(rng)).collect();
    let cf: Vec<_> = (0..n).map(|_| factor(rng)).collect();
    let a = scale_rows(&a, |x| rf[a.row_index(x).unwrap()].clone()).expect("unit factors");
    let a = scale_cols(&a, |x| cf[a.col_index(x).unwrap()].clone()).expect("unit factors");
    assert!(is_tu(&a).expect("desk size").is_tu, "generator produced a non-TU matrix:\n{a}");
    a
}

/// Prefixes every label.
pub fn prefixed<F: crate::scalar::Field>(m: &Matrix<F>, prefix: &str) -> Matrix<F> {
    m.relabel(|x| l(format!("{prefix}{x}"))).expect("prefix keeps labels distinct")
}

/// Random nonzero entry position.
pub fn random_nonzero(rng: &mut Rng64, a: &RatMatrix) -> Option<(usize, usize)> {
    a.nonzeros().choose(rng).copied()
}

pub struct Sum2Instance {
    pub left: RatRepr,
    pub right: RatRepr,
    pub x: Label,
    pub y: Label,
}

/// TU summands (each at most `max x max`) with a nonzero row `x` on the left
/// and a nonzero column `y` on the right.
pub fn random_sum2_instance(rng: &mut Rng64, max: usize) -> Sum2Instance {
    let (x, y) = (l("x"), l("y"));
    let pick = |rng: &mut Rng64, prefix: &str, nonzero_row: bool| loop {
        let a = prefixed(&random_tu(rng, max, max), prefix);
        let rows: Vec<usize> = (0..a.nrows()).filter(|&i| !nonzero_row || a.row(i).iter().any(|v| !v.is_zero())).collect();
        let cols: Vec<usize> = (0..a.ncols()).filter(|&j| nonzero_row || a.column(j).iter().any(|v| !v.is_zero())).collect();
        if let (Some(&i), Some(&j)) = (rows.choose(rng), cols.choose(rng)) {
            let (ri, cj) = (a.row_labels()[i].clone(), a.col_labels()[j].clone());
            let b = a
                .relabel(|z| if *z == ri { l("x") } else if *z == cj { l("y") } else { z.clone() })
                .expect("fresh labels");
            return StandardRepr::new(b).expect("disjoint");
        }
    };
    let left = pick(rng, "l", true);
    let right = pick(rng, "r", false);
    Sum2Instance { left, right, x, y }
}

/// Side of a tree edge's cut that `node` lies on, as a predicate builder.
fn cut_side(nodes: &[Label], tree: &[Edge], cut: &Label) -> Vec<bool> {
    let idx = |x: &Label| nodes.iter().position(|n| n == x).expect("node");
    let mut adj = vec![Vec::new(); nodes.len()];
    let mut start = 0;
    for e in tree {
        if e.label == *cut {
            start = idx(&e.tail);
            continue;
        }
        let (a, b) = (idx(&e.tail), idx(&e.head));
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut side = vec![false; nodes.len()];
    side[start] = true;
    let mut q = VecDeque::from([start]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if !side[w] {
                side[w] = true;
                q.push_back(w);
            }
        }
    }
    side
}

/// Graph with a fixed core (tree `core_tree`, non-tree `core_non_tree`),
/// `tree_extra` pendant tree edges and `non_tree_extra` random edges; edges
/// listed tree first so the greedy base is the tree. Extra non-tree edges
/// never cross the cut of `avoid` when given.
#[allow(clippy::too_many_arguments)]
fn grown_graph(
    rng: &mut Rng64,
    core_nodes: &[&str],
    core_tree: &[(&Label, &str, &str)],
    core_non_tree: &[(&Label, &str, &str)],
    tree_extra: &[Label],
    non_tree_extra: &[Label],
    avoid: Option<&Label>,
    node_prefix: &str,
) -> Digraph {
    let mut nodes: Vec<Label> = core_nodes.iter().map(|n| l(format!("{node_prefix}{n}"))).collect();
    let node = |n: &str| l(format!("{node_prefix}{n}"));
    let mut tree: Vec<Edge> = core_tree.iter().map(|(e, a, b)| edge((*e).clone(), &node(a), &node(b), rng)).collect();
    for (k, lab) in tree_extra.iter().enumerate() {
        let anchor = nodes[rng.gen_range(0..nodes.len())].clone();
        let fresh = l(format!("{node_prefix}w{k}"));
        nodes.push(fresh.clone());
        tree.push(edge(lab.clone(), &fresh, &anchor, rng));
    }
    let side = avoid.map(|c| cut_side(&nodes, &tree, c));
    let mut edges = tree;
    for (e, a, b) in core_non_tree {
        edges.push(edge((*e).clone(), &node(a), &node(b), rng));
    }
    for lab in non_tree_extra {
        let (mut a, mut b) = (0, 0);
        for _ in 0..100 {
            a = rng.gen_range(0..nodes.len());
            b = rng.gen_range(0..nodes.len());
            if side.as_ref().is_none_or(|s| s[a] == s[b]) {
                break;
            }
            (a, b) = (0, 0);
        }
        edges.push(edge(lab.clone(), &nodes[a].clone(), &nodes[b].clone(), rng));
    }
    Digraph::new(nodes, edges).expect("fresh labels")
}

/// A 3-sum instance: TU signings of both summands, the frame, and the
/// summands as decomposition-tree leaves.
pub struct Sum3Instance {
    pub left: RatMatrix,
    pub right: RatMatrix,
    pub frame: Sum3Frame,
    pub form: D0Form,
    pub left_leaf: GoodTree,
    pub right_leaf: GoodTree,
}

/// Summands are graphic or cographic (chosen at random) around a core whose
/// `S` corner has the requested `D0` form; primed sets have at most
/// `max_primed` labels each. The frame may list `x0, x1` and `y0, y1` in
/// either order.
pub fn random_sum3_instance(rng: &mut Rng64, form: D0Form, max_primed: usize, prefix: &str) -> Sum3Instance {
    let p = |s: &str| l(format!("{prefix}{s}"));
    let (x0, x1, x2, y0, y1, y2) = (p("x0"), p("x1"), p("x2"), p("y0"), p("y1"), p("y2"));
    let mut counts = || (0..4).map(|_| rng.gen_range(0..=max_primed)).collect::<Vec<_>>();
    let c = counts();
    let xl: Vec<Label> = (0..c[0]).map(|k| p(&format!("lx{k}"))).collect();
    let yl: Vec<Label> = (0..c[1]).map(|k| p(&format!("ly{k}"))).collect();
    let xr: Vec<Label> = (0..c[2]).map(|k| p(&format!("rx{k}"))).collect();
    let yr: Vec<Label> = (0..c[3]).map(|k| p(&format!("ry{k}"))).collect();

    let (core_nodes, tree_ends, non_tree_ends): (&[&str], [(&str, &str); 3], [(&str, &str); 3]) = match form {
        D0Form::Identity => (&["c", "a", "b", "d"], [("c", "a"), ("c", "b"), ("c", "d")], [("a", "b"), ("a", "d"), ("b", "d")]),
        D0Form::Triangular => (&["p", "q", "r", "s"], [("p", "q"), ("q", "r"), ("r", "s")], [("p", "r"), ("p", "s"), ("q", "s")]),
    };

    let side = |rng: &mut Rng64, is_left: bool, rows: &[Label], cols: &[Label]| -> (RatMatrix, GoodTree) {
        let cographic = rng.gen_bool(0.5);
        // graphic: tree = (x2, x0, x1), non-tree = (y0, y1, y2); cographic swaps
        let (tl, nl) =
            if cographic { ([&y0, &y1, &y2], [&x2, &x0, &x1]) } else { ([&x2, &x0, &x1], [&y0, &y1, &y2]) };
        let core_tree: Vec<_> = (0..3).map(|i| (tl[i], tree_ends[i].0, tree_ends[i].1)).collect();
        let core_non: Vec<_> = (0..3).map(|i| (nl[i], non_tree_ends[i].0, non_tree_ends[i].1)).collect();
        let (tree_extra, non_extra) = if cographic { (cols, rows) } else { (rows, cols) };
        let avoid = match (is_left, cographic) {
            (true, true) => Some(&y2),
            (false, false) => Some(&x2),
            _ => None,
        };
        let np = format!("{prefix}{}", if is_left { "L" } else { "R" });
        let g = grown_graph(rng, core_nodes, &core_tree, &core_non, tree_extra, non_extra, avoid, &np);
        let rep = if cographic { cographic_standard_repr(&g) } else { graphic_standard_repr(&g) }.expect("graph repr");
        let leaf = if cographic { GoodTree::cographic(g) } else { GoodTree::graphic(g) };
        (rep.signing.signed, leaf)
    };
    let (left, left_leaf) = side(rng, true, &xl, &yl);
    let (right, right_leaf) = side(rng, false, &xr, &yr);
    let mut frame = Sum3Frame { x0, x1, x2, y0, y1, y2, xl, yl, xr, yr };
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut frame.x0, &mut frame.x1);
    }
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut frame.y0, &mut frame.y1);
    }
    Sum3Instance { left, right, frame, form, left_leaf, right_leaf }
}

/// Graph leaf around a triangle whose row `x` and column `y` are nonzero,
/// graphic or cographic at random, with up to `extra` further edges.
pub fn random_sum2_leaf(rng: &mut Rng64, x: &Label, y: &Label, extra: usize, prefix: &str) -> GoodTree {
    let cographic = rng.gen_bool(0.5);
    let e = l(format!("{prefix}e"));
    let (a, b) = if cographic { (y, x) } else { (x, y) };
    let n_tree = rng.gen_range(0..=extra);
    let n_non = rng.gen_range(0..=extra);
    let tree_extra: Vec<Label> = (0..n_tree).map(|k| l(format!("{prefix}t{k}"))).collect();
    let non_extra: Vec<Label> = (0..n_non).map(|k| l(format!("{prefix}n{k}"))).collect();
    let g = grown_graph(
        rng,
        &["u", "v", "w"],
        &[(a, "u", "v"), (&e, "v", "w")],
        &[(b, "u", "w")],
        &tree_extra,
        &non_extra,
        None,
        prefix,
    );
    if cographic {
        GoodTree::cographic(g)
    } else {
        GoodTree::graphic(g)
    }
}

/// Random decomposition tree from a few shapes mixing all leaf and sum
/// kinds; all labels carry `prefix`.
pub fn random_good_tree(rng: &mut Rng64, depth: usize, prefix: &str) -> GoodTree {
    use crate::special::R10Cert;
    let r10_leaf = |p: &str, x: Option<&Label>, y: Option<&Label>| {
        let mut c = R10Cert {
            rows: (1..=5).map(|i| (l(format!("x{i}")), l(format!("{p}x{i}")))).collect(),
            cols: (1..=5).map(|i| (l(format!("y{i}")), l(format!("{p}y{i}")))).collect(),
            expect: None,
        };
        if let Some(x) = x {
            c.rows[0].1 = x.clone();
        }
        if let Some(y) = y {
            c.cols[0].1 = y.clone();
        }
        GoodTree::r10(c)
    };
    let shape = rng.gen_range(0..if depth > 0 { 5 } else { 4 });
    let (x, y) = (l(format!("{prefix}X")), l(format!("{prefix}Y")));
    match shape {
        0 => {
            let form = if rng.gen_bool(0.5) { D0Form::Identity } else { D0Form::Triangular };
            let s = random_sum3_instance(rng, form, 2, prefix);
            GoodTree::sum3(s.frame, s.left_leaf, s.right_leaf)
        }
        1 => {
            let a = random_sum2_leaf(rng, &x, &y, 2, &format!("{prefix}a"));
            let b = random_sum2_leaf(rng, &x, &y, 2, &format!("{prefix}b"));
            GoodTree::sum2(x, y, a, b)
        }
        2 => {
            let a = r10_leaf(&format!("{prefix}a"), Some(&x), Some(&y));
            let b = random_sum2_leaf(rng, &x, &y, 1, &format!("{prefix}b"));
            if rng.gen_bool(0.5) {
                GoodTree::sum2(x, y, a, b)
            } else {
                GoodTree::sum2(x, y, b, a)
            }
        }
        3 => {
            let a = r10_leaf(&format!("{prefix}a"), None, None);
            let b = random_sum2_leaf(rng, &x, &y, 1, &format!("{prefix}b"));
            GoodTree::sum1(a, b)
        }
        _ => {
            let a = random_good_tree(rng, depth - 1, &format!("{prefix}L"));
            let b = random_good_tree(rng, depth - 1, &format!("{prefix}R"));
            GoodTree::sum1(a, b)
        }
    }
}
