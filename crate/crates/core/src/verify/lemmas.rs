//! One randomized property per lemma. A trial returns `Ok(None)` when the
//! property held and `Ok(Some(witness))` with a printable counterexample
//! when it did not.

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::gen::{self, Rng64};
use super::{show_labels, VerifyConfig};
use crate::error::Result;
use crate::format::{matrix_to_text, parse_matrix, AnyMatrix};
use crate::label::{numbered, Label};
use crate::matrix::{BinMatrix, Matrix, RatMatrix};
use crate::matroid::{
    check_axioms, dual_matroid, dual_repr, first_disagreement, same_support_check, standard_repr_matroid, standardize,
    support_matroid, vector_matroid, BinRepr, StandardRepr,
};
use crate::pivot::{long_tableau_pivot, short_tableau_pivot_constructive, PivotSpec};
use crate::rowspace::check_row_space_lemmas;
use crate::scalar::{rat, Field, Rational};
use crate::signing::find_tu_signing;
use crate::special::{eval_good_tree, incidence_matrix, is_node_incidence, r10, Digraph, Edge, RegularRepr};
use crate::sums::{
    canonical_signing_bordered, canonical_signing_sum3_detailed, check_c_lemma, check_d_lemma, check_product_lemma,
    in_mls3_class, sum1, sum2, sum3, validate_sum3, D0Form, Mls3Class, Mls3Report, ProductLemmaReport,
    VectorLemmaReport,
};
use crate::tu::{apply_signs, is_k_pu, is_signing_of, is_tu, scale_cols, scale_rows};

type Trial = fn(&mut Rng64, &VerifyConfig) -> Result<Option<String>>;

pub struct Lemma {
    pub name: &'static str,
    pub trial: Trial,
}

const fn lemma(name: &'static str, trial: Trial) -> Lemma {
    Lemma { name, trial }
}

/// The suite, in run order.
pub fn lemmas() -> Vec<Lemma> {
    vec![
        lemma("det_permutation_sum", det_permutation_sum),
        lemma("det_block_triangular", det_block_triangular),
        lemma("support_embedding", support_embedding),
        lemma("support_transpose_submatrix", support_transpose_submatrix),
        lemma("det_iff_rank", det_iff_rank),
        lemma("short_pivot_equivalence", short_pivot_equivalence),
        lemma("pivot_tu_preservation", pivot_tu_preservation),
        lemma("pivot_block_zero", pivot_block_zero),
        lemma("pivot_det_ratio", pivot_det_ratio),
        lemma("pivot_involution", pivot_involution),
        lemma("tu_iff_k_pu", tu_iff_k_pu),
        lemma("scaling_preserves_tu", scaling_preserves_tu),
        lemma("transpose_preserves_tu", transpose_preserves_tu),
        lemma("signing_soundness", signing_soundness),
        lemma("signing_none_confirmed", signing_none_confirmed),
        lemma("signing_exists_for_tu", signing_exists_for_tu),
        lemma("matroid_axioms", matroid_axioms),
        lemma("support_independence_transfer", support_independence_transfer),
        lemma("support_matroid_equality", support_matroid_equality),
        lemma("standard_repr_duality", standard_repr_duality),
        lemma("row_space_lemmas", row_space_lemmas),
        lemma("regularity_criterion", regularity_criterion),
        lemma("same_base_same_support", same_base_same_support),
        lemma("sum_signing_recipes", sum_signing_recipes),
        lemma("sum_tu_closure", sum_tu_closure),
        lemma("sum2_pivot_commutation", sum2_pivot_commutation),
        lemma("sum3_canonical_signing", sum3_canonical_signing),
        lemma("sum3_mls3_membership", sum3_mls3_membership),
        lemma("sum3_c_d_lemmas", sum3_c_d_lemmas),
        lemma("sum3_product_lemma", sum3_product_lemma),
        lemma("mls3_pivot_preservation", mls3_pivot_preservation),
        lemma("canonical_resign_corner", canonical_resign_corner),
        lemma("incidence_tu", incidence_tu),
        lemma("dual_regular", dual_regular),
        lemma("good_tree_regular", good_tree_regular),
        lemma("r10_double_dual", r10_double_dual),
        lemma("matrix_round_trip", matrix_round_trip),
    ]
}

fn text<F: Field>(m: &Matrix<F>) -> String {
    matrix_to_text(m)
}

fn fail(msg: impl Into<String>) -> Result<Option<String>> {
    Ok(Some(msg.into()))
}

fn size(rng: &mut Rng64, cfg: &VerifyConfig) -> usize {
    rng.gen_range(1..=cfg.max_size.max(1))
}

fn dims(rng: &mut Rng64, cfg: &VerifyConfig) -> (usize, usize) {
    (size(rng, cfg), size(rng, cfg))
}

/// Random nonempty subset of `0..n`, sorted.
fn subset(rng: &mut Rng64, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() || n == 0 {
            return s;
        }
    }
}

fn unit(rng: &mut Rng64) -> Rational {
    rat([-1, 0, 1][rng.gen_range(0..3)])
}

/// Leibniz formula.
fn permutation_sum(m: &RatMatrix) -> Rational {
    let n = m.nrows();
    let mut total = Rational::zero();
    for p in (0..n).permutations(n) {
        let inversions = (0..n).tuple_combinations().filter(|&(i, j)| p[i] > p[j]).count();
        let mut term: Rational = (0..n).map(|i| m.get(i, p[i])).product();
        if inversions % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total
}

fn det_permutation_sum(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let n = rng.gen_range(0..=cfg.max_size.min(4));
    let m = gen::random_rational(rng, n, n);
    let (d, oracle) = (m.det()?, permutation_sum(&m));
    if d != oracle {
        return fail(format!("det {d} but permutation sum {oracle} for\n{}", text(&m)));
    }
    Ok(None)
}

fn det_block_triangular(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (p, q) = (size(rng, cfg), size(rng, cfg));
    let a11 = gen::random_rational(rng, p, p);
    let a12 = gen::random_rational(rng, p, q);
    let a22 = gen::random_rational(rng, q, q);
    let n = p + q;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(match (i < p, j < p) {
                (true, true) => a11.get(i, j),
                (true, false) => a12.get(i, j - p),
                (false, true) => Rational::zero(),
                (false, false) => a22.get(i - p, j - p),
            });
        }
    }
    let m = Matrix::new(numbered("r", n), numbered("c", n), data)?;
    let want = a11.det()? * a22.det()?;
    if m.det()? != want {
        return fail(format!("det {} but det A11 * det A22 = {want} for\n{}", m.det()?, text(&m)));
    }
    Ok(None)
}

fn support_embedding(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m, n) = dims(rng, cfg);
    let b = gen::random_binary(rng, m, n, 0.5);
    if b.to_rational().support() != b {
        return fail(text(&b));
    }
    Ok(None)
}

fn support_transpose_submatrix(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m, n) = dims(rng, cfg);
    let m = gen::random_rational(rng, m, n);
    if m.transpose().support() != m.support().transpose() {
        return fail(format!("transpose:\n{}", text(&m)));
    }
    let rows: Vec<Label> = subset(rng, m.nrows()).into_iter().map(|i| m.row_labels()[i].clone()).collect();
    let cols: Vec<Label> = subset(rng, m.ncols()).into_iter().map(|j| m.col_labels()[j].clone()).collect();
    if m.submatrix(&rows, &cols)?.support() != m.support().submatrix(&rows, &cols)? {
        return fail(format!("rows {} cols {} of\n{}", show_labels(&rows), show_labels(&cols), text(&m)));
    }
    Ok(None)
}

fn det_iff_rank(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let n = size(rng, cfg);
    // small integer entries make singular matrices common
    let data = (0..n * n).map(|_| unit(rng)).collect();
    let m = Matrix::new(numbered("r", n), numbered("c", n), data)?;
    if m.det()?.is_zero() == (m.rank() == n) {
        return fail(format!("det {} rank {} for\n{}", m.det()?, m.rank(), text(&m)));
    }
    Ok(None)
}

fn random_pivot(rng: &mut Rng64, a: &RatMatrix) -> Option<PivotSpec> {
    gen::random_nonzero(rng, a).map(|(i, j)| PivotSpec::new(a.row_labels()[i].clone(), a.col_labels()[j].clone()))
}

fn short_pivot_equivalence(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m, n) = dims(rng, cfg);
    let a = gen::random_rational(rng, m, n + 1);
    let Some(p) = random_pivot(rng, &a) else { return Ok(None) };
    let (fast, slow) = ((cfg.short_pivot)(&a, &p)?, short_tableau_pivot_constructive(&a, &p)?);
    if fast != slow {
        return fail(format!(
            "pivot ({}, {}) of\n{}closed form\n{}constructive\n{}",
            p.row,
            p.col,
            text(&a),
            text(&fast),
            text(&slow)
        ));
    }
    Ok(None)
}

fn pivot_tu_preservation(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size);
    let Some(p) = random_pivot(rng, &a) else { return Ok(None) };
    for (kind, b) in [("long", long_tableau_pivot(&a, &p)?), ("short", (cfg.short_pivot)(&a, &p)?)] {
        let rep = is_tu(&b)?;
        if let Some(w) = rep.witness {
            return fail(format!(
                "{kind} pivot ({}, {}) of\n{}gives minor rows {} cols {} det {}",
                p.row,
                p.col,
                text(&a),
                show_labels(&w.rows),
                show_labels(&w.cols),
                w.det
            ));
        }
    }
    Ok(None)
}

fn pivot_block_zero(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m1, m2, n1, n2) = (size(rng, cfg), size(rng, cfg), size(rng, cfg), size(rng, cfg));
    let b11 = gen::random_rational(rng, m1, n1);
    let b21 = gen::random_rational(rng, m2, n1);
    let b22 = gen::random_rational(rng, m2, n2);
    let Some((i, j)) = gen::random_nonzero(rng, &b11) else { return Ok(None) };
    let (r1, r2, c1, c2) = (numbered("a", m1), numbered("b", m2), numbered("p", n1), numbered("q", n2));
    let b11 = b11.with_row_labels(r1.clone())?.with_col_labels(c1.clone())?;
    let b21 = b21.with_row_labels(r2.clone())?.with_col_labels(c1.clone())?;
    let b22 = b22.with_row_labels(r2.clone())?.with_col_labels(c2.clone())?;
    let top = b11.hstack(&Matrix::zeros(r1.clone(), c2.clone())?)?;
    let b = top.vstack(&b21.hstack(&b22)?)?;
    let p = PivotSpec::new(r1[i].clone(), c1[j].clone());
    let out = (cfg.short_pivot)(&b, &p)?;
    let left = (cfg.short_pivot)(&b11.vstack(&b21)?, &p)?;
    let rows_out = out.row_labels()[..m1].to_vec();
    let zero_kept = out.submatrix(&rows_out, &c2)?.is_zero();
    let b22_kept = out.submatrix(&r2, &c2)? == b22;
    let left_ok = out.select(&(0..m1 + m2).collect::<Vec<_>>(), &(0..n1).collect::<Vec<_>>())? == left;
    if !(zero_kept && b22_kept && left_ok) {
        return fail(format!(
            "pivot ({}, {}) of\n{}gives\n{}(zero block kept {zero_kept}, B22 kept {b22_kept}, left block {left_ok})",
            p.row,
            p.col,
            text(&b),
            text(&out)
        ));
    }
    Ok(None)
}

fn pivot_det_ratio(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let k = rng.gen_range(2..=cfg.max_size.max(2));
    let a = gen::random_rational(rng, k, k);
    let Some(p) = random_pivot(rng, &a) else { return Ok(None) };
    let out = (cfg.short_pivot)(&a, &p)?;
    let rows: Vec<Label> = out.row_labels().iter().filter(|l| **l != p.col).cloned().collect();
    let cols: Vec<Label> = out.col_labels().iter().filter(|l| **l != p.row).cloned().collect();
    let lhs = out.submatrix(&rows, &cols)?.det()?.abs();
    let piv = a.at(&p.row, &p.col)?.clone();
    let rhs = a.det()?.abs() / piv.abs();
    if lhs != rhs {
        return fail(format!(
            "pivot ({}, {}) of\n{}gives\n{}|det A''| = {lhs} but |det A| / |A(x, y)| = {rhs}",
            p.row,
            p.col,
            text(&a),
            text(&out)
        ));
    }
    Ok(None)
}

fn pivot_involution(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m, n) = dims(rng, cfg);
    let a = gen::random_rational(rng, m, n);
    let Some(p) = random_pivot(rng, &a) else { return Ok(None) };
    let once = (cfg.short_pivot)(&a, &p)?;
    let twice = (cfg.short_pivot)(&once, &PivotSpec::new(p.col.clone(), p.row.clone()))?;
    if twice != a {
        return fail(format!("pivot ({}, {}) twice of\n{}gives\n{}", p.row, p.col, text(&a), text(&twice)));
    }
    Ok(None)
}

/// A TU matrix or a random `{0, ±1}` one, about half of each.
fn maybe_tu(rng: &mut Rng64, cfg: &VerifyConfig) -> RatMatrix {
    if rng.gen_bool(0.5) {
        gen::random_tu(rng, cfg.max_size, cfg.max_size)
    } else {
        let (m, n) = (size(rng, cfg), size(rng, cfg));
        let data = (0..m * n).map(|_| unit(rng)).collect();
        Matrix::new(numbered("r", m), numbered("c", n), data).expect("fresh labels")
    }
}

fn tu_iff_k_pu(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = maybe_tu(rng, cfg);
    let tu = is_tu(&a)?.is_tu;
    let all_pu = (1..=a.nrows().min(a.ncols())).all(|k| is_k_pu(&a, k).is_tu);
    if tu != all_pu {
        return fail(format!("is_tu {tu} but every k-PU {all_pu} for\n{}", text(&a)));
    }
    Ok(None)
}

fn scaling_preserves_tu(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size);
    let rf: Vec<Rational> = (0..a.nrows()).map(|_| unit(rng)).collect();
    let cf: Vec<Rational> = (0..a.ncols()).map(|_| unit(rng)).collect();
    let r = scale_rows(&a, |l| rf[a.row_index(l).unwrap()].clone())?;
    let c = scale_cols(&a, |l| cf[a.col_index(l).unwrap()].clone())?;
    for (kind, b) in [("rows", r), ("columns", c)] {
        if !is_tu(&b)?.is_tu {
            return fail(format!("scaling {kind} of\n{}gives non-TU\n{}", text(&a), text(&b)));
        }
    }
    Ok(None)
}

fn transpose_preserves_tu(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size);
    if !is_tu(&a.transpose())?.is_tu {
        return fail(text(&a));
    }
    Ok(None)
}

fn signing_soundness(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m, n) = dims(rng, cfg);
    let b = gen::random_binary(rng, m, n, 0.5);
    if let Some(s) = find_tu_signing(&b)? {
        if !is_signing_of(&s.signed, &b)? || !is_tu(&s.signed)?.is_tu {
            return fail(format!("returned\n{}for\n{}", text(&s.signed), text(&b)));
        }
    }
    Ok(None)
}

/// Some assignment of signs to the nonzeros of `b` is TU.
fn brute_force_signable(b: &BinMatrix) -> Result<bool> {
    let nnz: Vec<usize> = (0..b.data().len()).filter(|&k| b.data()[k].bit()).collect();
    for mask in 0u64..1 << nnz.len() {
        let mut signs = vec![1i8; b.data().len()];
        for (t, &k) in nnz.iter().enumerate() {
            if mask >> t & 1 == 1 {
                signs[k] = -1;
            }
        }
        if is_tu(&apply_signs(b, &signs))?.is_tu {
            return Ok(true);
        }
    }
    Ok(false)
}

fn signing_none_confirmed(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let n = cfg.max_size.clamp(1, 4);
    let b = loop {
        let (r, c) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let b = gen::random_binary(rng, r, c, 0.6);
        if b.nonzeros().len() <= 12 {
            break b;
        }
    };
    let found = find_tu_signing(&b)?.is_some();
    if found != brute_force_signable(&b)? {
        return fail(format!("search says signable = {found}, brute force disagrees, for\n{}", text(&b)));
    }
    Ok(None)
}

fn signing_exists_for_tu(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size);
    if find_tu_signing(&a.support())?.is_none() {
        return fail(format!("no signing found for the support of\n{}", text(&a)));
    }
    Ok(None)
}

fn matroid_axioms(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m, n) = (size(rng, cfg), rng.gen_range(1..=8));
    let a = gen::random_rational(rng, m, n);
    let (m, n) = dims(rng, cfg);
    let b = gen::random_binary(rng, m, n, 0.5);
    let s = StandardRepr::new(b.relabel(|l| Label::new(format!("y{l}")))?.with_row_labels(numbered("x", b.nrows()))?)?;
    let sm = standard_repr_matroid(&s);
    for (kind, m) in [("vector", vector_matroid(&a)), ("dual", dual_matroid(&sm)?), ("standard", sm)] {
        let rep = check_axioms(&m)?;
        if !rep.holds() {
            return fail(format!("{kind} matroid fails axioms at {:?}", rep.counterexample));
        }
    }
    Ok(None)
}

fn support_independence_transfer(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size + 1);
    let rows: Vec<usize> = (0..a.nrows()).collect();
    let cols = subset(rng, a.ncols());
    let (q, z) = (a.select(&rows, &cols)?.rank(), a.support().select(&rows, &cols)?.rank());
    if q != z {
        return fail(format!("columns {cols:?}: rank {q} over Q, {z} over GF(2), for\n{}", text(&a)));
    }
    Ok(None)
}

fn support_matroid_equality(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size + 1);
    if let Some(s) = first_disagreement(&vector_matroid(&a), &support_matroid(&a))? {
        return fail(format!("subset {} differs for\n{}", show_labels(&s), text(&a)));
    }
    Ok(None)
}

fn random_bin_repr(rng: &mut Rng64, max_ground: usize) -> BinRepr {
    let m = rng.gen_range(0..=max_ground / 2);
    let n = rng.gen_range(0..=max_ground - m);
    let b = gen::random_binary(rng, m, n, 0.5);
    let b = b.with_row_labels(numbered("x", m)).and_then(|b| b.with_col_labels(numbered("y", n))).expect("shape");
    StandardRepr::new(b).expect("disjoint")
}

fn standard_repr_duality(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let s = random_bin_repr(rng, (2 * cfg.max_size).min(10));
    let lhs = dual_matroid(&standard_repr_matroid(&s))?;
    let rhs = standard_repr_matroid(&dual_repr(&s));
    if let Some(d) = first_disagreement(&lhs, &rhs)? {
        return fail(format!("subset {} differs for\n{}", show_labels(&d), text(s.matrix())));
    }
    Ok(None)
}

fn row_space_lemmas(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let s = random_bin_repr(rng, (2 * cfg.max_size).min(10));
    let rep = check_row_space_lemmas(&s)?;
    if !rep.holds() {
        return fail(format!("{rep:?} for\n{}", text(s.matrix())));
    }
    Ok(None)
}

/// Forward: a found signing is a TU representation of the same matroid.
/// Backward: standardizing a TU matrix gives a standard representation
/// whose support has a TU signing and the same matroid.
fn regularity_criterion(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let s = random_bin_repr(rng, (2 * cfg.max_size).min(10));
    if let Some(sig) = find_tu_signing(s.matrix())? {
        let q = StandardRepr::new(sig.signed.clone())?;
        if first_disagreement(&standard_repr_matroid(&q), &standard_repr_matroid(&s))?.is_some() {
            return fail(format!("signing\n{}changes the matroid of\n{}", text(&sig.signed), text(s.matrix())));
        }
    }
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size + 1);
    let base = vector_matroid(&a).find_base();
    let st = standardize(&a, &base)?;
    let sup = st.support();
    if find_tu_signing(sup.matrix())?.is_none() {
        return fail(format!("standardization of\n{}has unsignable support", text(&a)));
    }
    if let Some(d) = first_disagreement(&standard_repr_matroid(&sup), &vector_matroid(&a))? {
        return fail(format!("subset {} differs between\n{}and its standard form", show_labels(&d), text(&a)));
    }
    Ok(None)
}

/// Standardizing at one base after shuffling rows, flipping row signs and
/// reordering the base yields the same support.
fn same_base_same_support(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = gen::random_tu(rng, cfg.max_size, cfg.max_size + 1);
    let base = vector_matroid(&a).find_base();
    if base.is_empty() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..a.nrows()).collect();
    order.shuffle(rng);
    let cols: Vec<usize> = (0..a.ncols()).collect();
    let b = a.select(&order, &cols)?;
    let signs: Vec<Rational> = (0..b.nrows()).map(|_| if rng.gen_bool(0.5) { rat(1) } else { rat(-1) }).collect();
    let b = scale_rows(&b, |l| signs[b.row_index(l).unwrap()].clone())?;
    let mut base2 = base.clone();
    base2.shuffle(rng);
    let (s1, s2) = (standardize(&a, &base)?.support(), standardize(&b, &base2)?.support());
    if !same_support_check(&s1, &s2)? {
        return fail(format!("supports\n{}and\n{}differ", text(s1.matrix()), text(s2.matrix())));
    }
    Ok(None)
}

/// `sum1` needs disjoint label sets; drop the shared names from the right.
fn disjoint_right(inst: &gen::Sum2Instance) -> Result<crate::matroid::RatRepr> {
    StandardRepr::new(inst.right.matrix().relabel(|l| Label::new(format!("q{l}")))?)
}

fn sum_signing_recipes(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = gen::random_sum2_instance(rng, cfg.max_size);
    let r1 = disjoint_right(&inst)?;
    let q1 = sum1(&inst.left, &r1)?;
    let b1 = sum1(&inst.left.support(), &r1.support())?;
    if !is_signing_of(q1.matrix(), b1.matrix())? {
        return fail(format!("1-sum signing\n{}does not sign\n{}", text(q1.matrix()), text(b1.matrix())));
    }
    let q2 = sum2(&inst.left, &inst.right, &inst.x, &inst.y)?;
    let b2 = sum2(&inst.left.support(), &inst.right.support(), &inst.x, &inst.y)?;
    if !is_signing_of(q2.matrix(), b2.matrix())? {
        return fail(format!("2-sum signing\n{}does not sign\n{}", text(q2.matrix()), text(b2.matrix())));
    }
    Ok(None)
}

fn sum_tu_closure(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = gen::random_sum2_instance(rng, cfg.max_size);
    let q1 = sum1(&inst.left, &disjoint_right(&inst)?)?;
    let q2 = sum2(&inst.left, &inst.right, &inst.x, &inst.y)?;
    for (kind, q) in [("1-sum", q1), ("2-sum", q2)] {
        if let Some(w) = is_tu(q.matrix())?.witness {
            return fail(format!(
                "{kind}\n{}has minor rows {} cols {} det {}",
                text(q.matrix()),
                show_labels(&w.rows),
                show_labels(&w.cols),
                w.det
            ));
        }
    }
    Ok(None)
}

/// Pivoting the 2-sum at `(xl, yl)` with `xl` a left row other than `x`
/// equals the 2-sum of the pivoted left summand. When `yl = y` the pivot
/// renames the shared column to `xl`, so the right summand's `y` column is
/// renamed to match.
fn sum2_pivot_commutation(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = gen::random_sum2_instance(rng, cfg.max_size);
    let left = inst.left.matrix();
    let cands: Vec<(usize, usize)> =
        left.nonzeros().into_iter().filter(|&(i, _)| left.row_labels()[i] != inst.x).collect();
    let Some(&(i, j)) = cands.choose(rng) else { return Ok(None) };
    let p = PivotSpec::new(left.row_labels()[i].clone(), left.col_labels()[j].clone());
    let whole = sum2(&inst.left, &inst.right, &inst.x, &inst.y)?;
    let lhs = (cfg.short_pivot)(whole.matrix(), &p)?;
    let pl = StandardRepr::new((cfg.short_pivot)(left, &p)?)?;
    let (right, y) = if p.col == inst.y {
        let r = inst.right.matrix().relabel(|l| if *l == inst.y { p.row.clone() } else { l.clone() })?;
        (StandardRepr::new(r)?, p.row.clone())
    } else {
        (inst.right.clone(), inst.y.clone())
    };
    let rhs = sum2(&pl, &right, &inst.x, &y)?;
    if lhs != *rhs.matrix() {
        return fail(format!(
            "pivot ({}, {}) of the 2-sum\n{}gives\n{}but the 2-sum of the pivoted left summand is\n{}",
            p.row,
            p.col,
            text(whole.matrix()),
            text(&lhs),
            text(rhs.matrix())
        ));
    }
    Ok(None)
}

/// Everything the 3-sum lemmas assert about one instance.
#[derive(Debug, Clone)]
pub struct Sum3Check {
    pub form_matches: bool,
    /// The canonical signing signs the GF(2) 3-sum.
    pub signs_sum: bool,
    pub tu: bool,
    pub mls3: Mls3Report,
    pub c_lemma: VectorLemmaReport,
    pub d_lemma: VectorLemmaReport,
    pub product: ProductLemmaReport,
    pub signed: RatMatrix,
}

impl Sum3Check {
    pub fn holds(&self) -> bool {
        self.form_matches
            && self.signs_sum
            && self.tu
            && self.mls3.holds()
            && self.c_lemma.holds()
            && self.d_lemma.holds()
            && self.product.holds()
    }
}

/// Validates, sums and signs a 3-sum instance and evaluates every lemma on
/// the result.
pub fn check_sum3_instance(inst: &gen::Sum3Instance) -> Result<Sum3Check> {
    let bl = StandardRepr::new(inst.left.support())?;
    let br = StandardRepr::new(inst.right.support())?;
    let blocks = validate_sum3(&bl, &br, &inst.frame)?;
    let bin = sum3(&blocks)?;
    let sig = canonical_signing_sum3_detailed(&inst.left, &inst.right, &inst.frame)?;
    let nf = &sig.blocks.frame;
    let cls = Mls3Class::of_canonical(&sig.signed, nf)?;
    Ok(Sum3Check {
        form_matches: sig.blocks.form == inst.form,
        signs_sum: is_signing_of(&sig.signed, bin.matrix())?,
        tu: is_tu(&sig.signed)?.is_tu,
        mls3: in_mls3_class(&sig.signed, &cls)?,
        c_lemma: check_c_lemma(&sig.right, nf)?,
        d_lemma: check_d_lemma(&sig.left, nf)?,
        product: check_product_lemma(&sig.signed, nf, sig.blocks.form)?,
        signed: sig.signed,
    })
}

fn sum3_instance(rng: &mut Rng64, cfg: &VerifyConfig) -> gen::Sum3Instance {
    let form = if rng.gen_bool(0.5) { D0Form::Identity } else { D0Form::Triangular };
    gen::random_sum3_instance(rng, form, cfg.max_size.min(3), "")
}

fn describe(inst: &gen::Sum3Instance, what: String) -> String {
    format!(
        "{what}\nleft\n{}right\n{}frame\n{}",
        text(&inst.left),
        text(&inst.right),
        crate::special::frame_to_text(&inst.frame)
    )
}

fn sum3_canonical_signing(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = sum3_instance(rng, cfg);
    let c = check_sum3_instance(&inst)?;
    if !(c.form_matches && c.signs_sum && c.tu) {
        let what = format!("form {} signs {} TU {}", c.form_matches, c.signs_sum, c.tu);
        return fail(describe(&inst, what));
    }
    Ok(None)
}

fn sum3_mls3_membership(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = sum3_instance(rng, cfg);
    let c = check_sum3_instance(&inst)?;
    if !c.mls3.holds() {
        return fail(describe(&inst, c.mls3.failures.join("; ")));
    }
    Ok(None)
}

fn sum3_c_d_lemmas(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = sum3_instance(rng, cfg);
    let c = check_sum3_instance(&inst)?;
    if !(c.c_lemma.holds() && c.d_lemma.holds()) {
        return fail(describe(&inst, format!("c: {:?}; d: {:?}", c.c_lemma, c.d_lemma)));
    }
    Ok(None)
}

fn sum3_product_lemma(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = sum3_instance(rng, cfg);
    let c = check_sum3_instance(&inst)?;
    if !c.product.holds() {
        return fail(describe(&inst, format!("{:?}", c.product)));
    }
    Ok(None)
}

fn mls3_pivot_preservation(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = sum3_instance(rng, cfg);
    let sig = canonical_signing_sum3_detailed(&inst.left, &inst.right, &inst.frame)?;
    let nf = &sig.blocks.frame;
    let cls = Mls3Class::of_canonical(&sig.signed, nf)?;
    let b = &sig.signed;
    let cands: Vec<(Label, Label)> = nf
        .xl
        .iter()
        .cartesian_product(&nf.yl)
        .filter(|(x, y)| b.at(x, y).is_ok_and(|v| !v.is_zero()))
        .map(|(x, y)| (x.clone(), y.clone()))
        .collect();
    let Some((x, y)) = cands.choose(rng).cloned() else { return Ok(None) };
    let out = (cfg.short_pivot)(b, &PivotSpec::new(x.clone(), y.clone()))?;
    let rep = in_mls3_class(&out, &cls.after_pivot(&x, &y))?;
    if !rep.holds() {
        return fail(format!("pivot ({x}, {y}) of\n{}gives\n{}{}", text(b), text(&out), rep.failures.join("; ")));
    }
    Ok(None)
}

fn canonical_resign_corner(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let inst = sum3_instance(rng, cfg);
    let sig = canonical_signing_sum3_detailed(&inst.left, &inst.right, &inst.frame)?;
    let f = &sig.blocks.frame;
    let (rows, cols) = (vec![f.x2.clone(), f.x0.clone(), f.x1.clone()], vec![f.y0.clone(), f.y1.clone(), f.y2.clone()]);
    for (side, m) in [("left", &sig.left), ("right", &sig.right)] {
        let corner = m.submatrix(&rows, &cols)?;
        let want = canonical_signing_bordered(&corner.support())?;
        if corner != want {
            return fail(describe(&inst, format!("{side} corner\n{}expected\n{}", text(&corner), text(&want))));
        }
    }
    Ok(None)
}

fn random_digraph(rng: &mut Rng64, cfg: &VerifyConfig) -> Digraph {
    let nodes = numbered("v", rng.gen_range(1..=cfg.max_size + 1));
    let m = rng.gen_range(1..=cfg.max_size + 2);
    let edges = (0..m)
        .map(|k| Edge {
            label: Label::new(format!("e{k}")),
            tail: nodes.choose(rng).unwrap().clone(),
            head: nodes.choose(rng).unwrap().clone(),
        })
        .collect();
    Digraph::new(nodes, edges).expect("fresh labels")
}

fn incidence_tu(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let a = incidence_matrix(&random_digraph(rng, cfg));
    if !is_node_incidence(&a) || !is_tu(&a)?.is_tu {
        return fail(text(&a));
    }
    Ok(None)
}

fn dual_regular(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let q = gen::random_tu(rng, cfg.max_size, cfg.max_size);
    let reg = RegularRepr::new(q.clone())?;
    let d = reg.dual()?;
    let ok = is_tu(&d.signing.signed)?.is_tu
        && is_signing_of(&d.signing.signed, dual_repr(&reg.repr).matrix())?
        && d.signing.signed == q.transpose().neg();
    if !ok {
        return fail(format!("dual signing\n{}of\n{}", text(&d.signing.signed), text(&q)));
    }
    Ok(None)
}

fn good_tree_regular(rng: &mut Rng64, _cfg: &VerifyConfig) -> Result<Option<String>> {
    let t = gen::random_good_tree(rng, 0, "");
    let out = eval_good_tree(&t)?;
    let s = &out.signing.signed;
    if !is_signing_of(s, out.repr.matrix())? || !is_tu(s)?.is_tu {
        return fail(format!("tree {t:?} gives signing\n{}", text(s)));
    }
    Ok(None)
}

fn r10_double_dual(_rng: &mut Rng64, _cfg: &VerifyConfig) -> Result<Option<String>> {
    let m = standard_repr_matroid(&r10());
    let dd = dual_matroid(&dual_matroid(&m)?)?;
    if let Some(d) = first_disagreement(&m, &dd)? {
        return fail(format!("subset {} differs", show_labels(&d)));
    }
    if dual_repr(&dual_repr(&r10())) != r10() {
        return fail("dual of the dual representation differs");
    }
    Ok(None)
}

fn matrix_round_trip(rng: &mut Rng64, cfg: &VerifyConfig) -> Result<Option<String>> {
    let (m, n) = (rng.gen_range(0..=cfg.max_size), rng.gen_range(0..=cfg.max_size));
    let q = gen::random_rational(rng, m, n);
    let b = gen::random_binary(rng, m, n, 0.5);
    let qt = matrix_to_text(&q);
    let bt = matrix_to_text(&b);
    let ok_q = matches!(parse_matrix(&qt)?, AnyMatrix::Rational(ref p) if *p == q);
    let ok_b = matches!(parse_matrix(&bt)?, AnyMatrix::Gf2(ref p) if *p == b);
    if !(ok_q && ok_b) {
        return fail(format!("round trip changed\n{qt}or\n{bt}"));
    }
    Ok(None)
}
