//! Finite matroids given by independence oracles.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{Matrix, RatMatrix};
use crate::pivot::{long_tableau_pivot, PivotSpec};
use crate::scalar::{Field, FieldTag};
use crate::tu::is_tu;

/// Largest ground set for operations that enumerate every subset.
pub const MAX_ENUM_GROUND: usize = 20;

/// Independence test over positions in the ground list.
pub trait IndepOracle: Send + Sync {
    fn is_indep(&self, subset: &[usize]) -> bool;
}

impl<T: Fn(&[usize]) -> bool + Send + Sync> IndepOracle for T {
    fn is_indep(&self, subset: &[usize]) -> bool {
        self(subset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Vector(FieldTag),
    Standard(FieldTag),
    Dual(Box<Provenance>),
    Free,
    Custom(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Vector(t) => write!(f, "vector({t})"),
            Provenance::Standard(t) => write!(f, "standard({t})"),
            Provenance::Dual(p) => write!(f, "dual({p})"),
            Provenance::Free => f.write_str("free"),
            Provenance::Custom(s) => f.write_str(s),
        }
    }
}

#[derive(Clone)]
pub struct Matroid {
    ground: Vec<Label>,
    oracle: Arc<dyn IndepOracle>,
    provenance: Provenance,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid").field("ground", &self.ground).field("provenance", &self.provenance).finish()
    }
}

fn mask_to_positions(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

impl Matroid {
    pub fn new(ground: Vec<Label>, oracle: Arc<dyn IndepOracle>, provenance: Provenance) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &ground {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Matroid { ground, oracle, provenance })
    }

    /// Every subset independent.
    pub fn free(ground: Vec<Label>) -> Result<Self> {
        Matroid::new(ground, Arc::new(|_: &[usize]| true), Provenance::Free)
    }

    pub fn ground(&self) -> &[Label] {
        &self.ground
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_indep_positions(&self, subset: &[usize]) -> bool {
        self.oracle.is_indep(subset)
    }

    pub fn is_indep_mask(&self, mask: u64) -> bool {
        self.oracle.is_indep(&mask_to_positions(mask, self.ground.len()))
    }

    pub fn positions(&self, subset: &[Label]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(subset.len());
        for l in subset {
            let p = self.ground.iter().position(|g| g == l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            if out.contains(&p) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
            out.push(p);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn is_indep(&self, subset: &[Label]) -> Result<bool> {
        Ok(self.oracle.is_indep(&self.positions(subset)?))
    }

    fn check_enum_size(&self) -> Result<()> {
        if self.ground.len() > MAX_ENUM_GROUND {
            return Err(Error::SizeLimitExceeded { what: "matroid ground set", limit: MAX_ENUM_GROUND as u64 });
        }
        Ok(())
    }

    /// Greedy base in ground order.
    pub fn find_base(&self) -> Vec<Label> {
        let mut cur: Vec<usize> = Vec::new();
        for i in 0..self.ground.len() {
            cur.push(i);
            if !self.oracle.is_indep(&cur) {
                cur.pop();
            }
        }
        cur.into_iter().map(|i| self.ground[i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.find_base().len()
    }

    /// Independent and not extendable by any other ground element.
    pub fn is_base(&self, subset: &[Label]) -> Result<bool> {
        let pos = self.positions(subset)?;
        if !self.oracle.is_indep(&pos) {
            return Ok(false);
        }
        for e in 0..self.ground.len() {
            if pos.contains(&e) {
                continue;
            }
            let mut ext = pos.clone();
            ext.push(e);
            ext.sort_unstable();
            if self.oracle.is_indep(&ext) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All bases as position masks, by checking the subsets of rank size.
    pub fn bases(&self) -> Result<Vec<u64>> {
        self.check_enum_size()?;
        let n = self.ground.len();
        let r = self.rank();
        Ok((0u64..1 << n)
            .filter(|m| m.count_ones() as usize == r && self.is_indep_mask(*m))
            .collect())
    }
}

struct VectorOracle<F> {
    a: Matrix<F>,
}

impl<F: Field> IndepOracle for VectorOracle<F> {
    fn is_indep(&self, subset: &[usize]) -> bool {
        if subset.len() > self.a.nrows() {
            return false;
        }
        let rows: Vec<usize> = (0..self.a.nrows()).collect();
        let m = self.a.select(&rows, subset).expect("positions are distinct");
        m.rank() == subset.len()
    }
}

/// Column matroid of `a` on its column labels.
pub fn vector_matroid<F: Field>(a: &Matrix<F>) -> Matroid {
    Matroid {
        ground: a.col_labels().to_vec(),
        oracle: Arc::new(VectorOracle { a: a.clone() }),
        provenance: Provenance::Vector(F::TAG),
    }
}

/// Matrix `B` with disjoint row set `X` and column set `Y`, standing for the
/// matroid of `[1 | B]` on `X ∪ Y`.
#[derive(Clone, PartialEq, Eq)]
pub struct StandardRepr<F> {
    b: Matrix<F>,
}

impl<F: Field> fmt::Debug for StandardRepr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StandardRepr {:?}", self.b)
    }
}

pub type RatRepr = StandardRepr<crate::scalar::Rational>;
pub type BinRepr = StandardRepr<crate::scalar::Gf2>;

impl<F: Field> StandardRepr<F> {
    pub fn new(b: Matrix<F>) -> Result<Self> {
        let xs: HashSet<&Label> = b.row_labels().iter().collect();
        if let Some(l) = b.col_labels().iter().find(|l| xs.contains(l)) {
            return Err(Error::LabelOverlap(l.clone()));
        }
        Ok(StandardRepr { b })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.b
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.b
    }

    pub fn x(&self) -> &[Label] {
        self.b.row_labels()
    }

    pub fn y(&self) -> &[Label] {
        self.b.col_labels()
    }

    /// `X` followed by `Y`.
    pub fn ground(&self) -> Vec<Label> {
        self.x().iter().chain(self.y()).cloned().collect()
    }

    /// `[1 | B]` with columns `X` then `Y`.
    pub fn full_matrix(&self) -> Matrix<F> {
        let eye = Matrix::identity(self.x().to_vec()).expect("distinct labels");
        eye.hstack(&self.b).expect("disjoint labels")
    }

    pub fn field(&self) -> FieldTag {
        F::TAG
    }

    pub fn support(&self) -> BinRepr {
        StandardRepr { b: self.b.support() }
    }
}

impl BinRepr {
    pub fn to_rational(&self) -> RatRepr {
        StandardRepr { b: self.b.to_rational() }
    }
}

pub fn standard_repr_matroid<F: Field>(s: &StandardRepr<F>) -> Matroid {
    let mut m = vector_matroid(&s.full_matrix());
    m.provenance = Provenance::Standard(F::TAG);
    m
}

/// `-Bᵀ` with the roles of `X` and `Y` exchanged.
pub fn dual_repr<F: Field>(s: &StandardRepr<F>) -> StandardRepr<F> {
    StandardRepr { b: s.b.transpose().neg() }
}

/// Dual by base complements: a set is independent iff it avoids some base.
pub fn dual_matroid(m: &Matroid) -> Result<Matroid> {
    let n = m.ground.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cobases: Vec<u64> = m.bases()?.into_iter().map(|b| !b & full).collect();
    let oracle = move |s: &[usize]| {
        let mask = s.iter().fold(0u64, |acc, &i| acc | 1 << i);
        cobases.iter().any(|c| mask & !c == 0)
    };
    Ok(Matroid {
        ground: m.ground.clone(),
        oracle: Arc::new(oracle),
        provenance: Provenance::Dual(Box::new(m.provenance.clone())),
    })
}

/// Oracles agree on every subset. Ground sets must hold the same labels;
/// their order may differ.
pub fn matroids_equal(m1: &Matroid, m2: &Matroid) -> Result<bool> {
    Ok(first_disagreement(m1, m2)?.is_none())
}

/// First subset (in `m1`'s ground order, by increasing mask) on which the
/// two oracles disagree.
pub fn first_disagreement(m1: &Matroid, m2: &Matroid) -> Result<Option<Vec<Label>>> {
    let mut a: Vec<&Label> = m1.ground.iter().collect();
    let mut b: Vec<&Label> = m2.ground.iter().collect();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::GroundMismatch);
    }
    m1.check_enum_size()?;
    let n = m1.ground.len();
    let map: Vec<usize> = m1.ground.iter().map(|l| m2.ground.iter().position(|g| g == l).unwrap()).collect();
    for mask in 0u64..1 << n {
        let p1 = mask_to_positions(mask, n);
        let mut p2: Vec<usize> = p1.iter().map(|&i| map[i]).collect();
        p2.sort_unstable();
        if m1.oracle.is_indep(&p1) != m2.oracle.is_indep(&p2) {
            return Ok(Some(p1.iter().map(|&i| m1.ground[i].clone()).collect()));
        }
    }
    Ok(None)
}

/// Identical matrices on the same `X` and `Y` (compared by label).
pub fn same_support_check(s1: &BinRepr, s2: &BinRepr) -> Result<bool> {
    let set = |ls: &[Label]| ls.iter().cloned().collect::<HashSet<_>>();
    if set(s1.x()) != set(s2.x()) || set(s1.y()) != set(s2.y()) {
        return Err(Error::LabelMismatch("standard representations over different X or Y".into()));
    }
    let other = s2.b.submatrix(s1.x(), s1.y())?;
    Ok(other == s1.b)
}

/// Turns the columns `base` of `a` into an identity by long pivots and
/// drops the zero rows left over. No TU check; see [`standardize`].
///
/// Base columns are processed in the given order, each pivoting on the
/// first not yet used row with a nonzero entry. Rows of the result are
/// labeled by the base elements, columns are the remaining column labels in
/// their original order.
pub fn standardize_any(a: &RatMatrix, base: &[Label]) -> Result<StandardRepr<crate::scalar::Rational>> {
    if !vector_matroid(a).is_base(base)? {
        return Err(Error::NotABase(
            base.iter().map(Label::as_str).collect::<Vec<_>>().join(","),
        ));
    }
    let mut cur = a.clone();
    let mut used: Vec<Option<usize>> = vec![None; a.nrows()];
    for (k, l) in base.iter().enumerate() {
        let j = cur.col_index(l).expect("base labels are columns");
        let i = (0..cur.nrows())
            .find(|&i| used[i].is_none() && !cur.entry(i, j).is_zero())
            .expect("base columns are independent");
        used[i] = Some(k);
        let p = PivotSpec { row: cur.row_labels()[i].clone(), col: l.clone() };
        cur = long_tableau_pivot(&cur, &p)?;
    }
    let mut order: Vec<(usize, usize)> = used.iter().enumerate().filter_map(|(i, k)| k.map(|k| (k, i))).collect();
    order.sort_unstable();
    let rows: Vec<usize> = order.iter().map(|&(_, i)| i).collect();
    let cols: Vec<usize> = (0..a.ncols()).filter(|&j| !base.contains(&a.col_labels()[j])).collect();
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for &i in &rows {
        for &j in &cols {
            data.push(cur.get(i, j));
        }
    }
    let b = Matrix::new(base.to_vec(), cols.iter().map(|&j| a.col_labels()[j].clone()).collect(), data)?;
    StandardRepr::new(b)
}

/// Standard representation of the vector matroid of the TU matrix `a` with
/// respect to `base`; the result is TU.
pub fn standardize(a: &RatMatrix, base: &[Label]) -> Result<StandardRepr<crate::scalar::Rational>> {
    if !is_tu(a)?.is_tu {
        return Err(Error::NotTu);
    }
    standardize_any(a, base)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub empty_independent: bool,
    pub downward_closed: bool,
    pub augmentation: bool,
    /// Sets (as labels) violating the first failed axiom.
    pub counterexample: Option<Vec<Vec<Label>>>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.empty_independent && self.downward_closed && self.augmentation
    }
}

/// Exhaustive check of the finite matroid axioms: the empty set is
/// independent; subsets of independent sets are independent; a non-maximal
/// independent `I` and a maximal `B` admit `x ∈ B \ I` with `I + x`
/// independent.
pub fn check_axioms(m: &Matroid) -> Result<AxiomReport> {
    m.check_enum_size()?;
    let n = m.ground.len();
    let names = |mask: u64| -> Vec<Label> { mask_to_positions(mask, n).iter().map(|&i| m.ground[i].clone()).collect() };
    let indep: Vec<bool> = (0u64..1 << n).map(|s| m.is_indep_mask(s)).collect();
    let mut rep = AxiomReport { empty_independent: indep[0], downward_closed: true, augmentation: true, counterexample: None };
    if !rep.empty_independent {
        rep.counterexample = Some(vec![vec![]]);
        return Ok(rep);
    }
    for s in 0u64..1 << n {
        if !indep[s as usize] {
            continue;
        }
        for i in 0..n {
            let t = s & !(1 << i);
            if t != s && !indep[t as usize] {
                rep.downward_closed = false;
                rep.counterexample = Some(vec![names(s), names(t)]);
                return Ok(rep);
            }
        }
    }
    let maximal: Vec<u64> = (0u64..1 << n)
        .filter(|&s| indep[s as usize] && (0..n).all(|i| s >> i & 1 == 1 || !indep[(s | 1 << i) as usize]))
        .collect();
    for s in 0u64..1 << n {
        if !indep[s as usize] || maximal.binary_search(&s).is_ok() {
            continue;
        }
        for &b in &maximal {
            let ok = (0..n).any(|x| b >> x & 1 == 1 && s >> x & 1 == 0 && indep[(s | 1 << x) as usize]);
            if !ok {
                rep.augmentation = false;
                rep.counterexample = Some(vec![names(s), names(b)]);
                return Ok(rep);
            }
        }
    }
    Ok(rep)
}

impl Matroid {
    /// Uniform matroid of rank one: the independent sets are `∅` and the
    /// singletons.
    pub fn uniform_rank_one(ground: Vec<Label>) -> Result<Self> {
        Matroid::new(ground, Arc::new(|s: &[usize]| s.len() <= 1), Provenance::Custom("U1,n".into()))
    }
}

/// Vector matroid over GF(2) of a rational matrix's support.
pub fn support_matroid(a: &RatMatrix) -> Matroid {
    vector_matroid::<crate::scalar::Gf2>(&a.support())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::scalar::rat;

    fn q(rows: &[&str], cols: &[&str], grid: &[&[i64]]) -> RatMatrix {
        Matrix::from_ints(labels(rows), labels(cols), grid).unwrap()
    }

    fn u12() -> BinRepr {
        StandardRepr::new(Matrix::from_ints(labels(["x"]), labels(["y"]), &[&[1]]).unwrap()).unwrap()
    }

    #[test]
    fn vector_examples() {
        let i2 = vector_matroid(&RatMatrix::identity(labels(["a", "b"])).unwrap());
        assert!(i2.is_indep(&labels(["a", "b"])).unwrap());
        let par = vector_matroid(&q(&["r"], &["a", "b"], &[&[1, 1]]));
        assert!(par.is_indep(&labels(["a"])).unwrap());
        assert!(!par.is_indep(&labels(["a", "b"])).unwrap());
        let tri = Matrix::<crate::scalar::Gf2>::from_ints(
            labels(["r0", "r1", "r2"]),
            labels(["a", "b", "c"]),
            &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]],
        )
        .unwrap();
        let m = vector_matroid(&tri);
        for pair in [["a", "b"], ["a", "c"], ["b", "c"]] {
            assert!(m.is_indep(&labels(pair)).unwrap());
        }
        assert!(!m.is_indep(&labels(["a", "b", "c"])).unwrap());
    }

    #[test]
    fn standard_examples() {
        let empty = StandardRepr::new(RatMatrix::zeros(labels(["x1", "x2"]), vec![]).unwrap()).unwrap();
        let m = standard_repr_matroid(&empty);
        assert!(matroids_equal(&m, &Matroid::free(labels(["x1", "x2"])).unwrap()).unwrap());
        let m = standard_repr_matroid(&u12());
        assert!(m.is_indep(&labels(["x"])).unwrap());
        assert!(m.is_indep(&labels(["y"])).unwrap());
        assert!(!m.is_indep(&labels(["x", "y"])).unwrap());
        assert!(m.is_base(&labels(["x"])).unwrap());
        assert!(m.is_base(&labels(["y"])).unwrap());
        assert!(matroids_equal(&m, &Matroid::uniform_rank_one(labels(["x", "y"])).unwrap()).unwrap());
        assert!(!matroids_equal(&m, &Matroid::free(labels(["x", "y"])).unwrap()).unwrap());
        assert!(StandardRepr::new(RatMatrix::zeros(labels(["a"]), labels(["a"])).unwrap()).is_err());
    }

    #[test]
    fn dual_examples() {
        let free = Matroid::free(labels(["a", "b", "c"])).unwrap();
        let d = dual_matroid(&free).unwrap();
        assert!(d.is_indep(&[]).unwrap());
        assert!(!d.is_indep(&labels(["a"])).unwrap());
        let u = standard_repr_matroid(&u12());
        assert!(matroids_equal(&dual_matroid(&u).unwrap(), &u).unwrap());
        let r = StandardRepr::new(q(&["x"], &["y"], &[&[1]])).unwrap();
        assert_eq!(dual_repr(&r).matrix().data(), &[rat(-1)]);
        assert_eq!(dual_repr(&u12()).matrix(), &u12().matrix().transpose());
    }

    #[test]
    fn standardize_examples() {
        let a = q(&["r"], &["a", "b"], &[&[1, 1]]);
        let s = standardize(&a, &labels(["a"])).unwrap();
        assert_eq!(s.x(), &labels(["a"])[..]);
        assert_eq!(s.y(), &labels(["b"])[..]);
        assert_eq!(s.matrix().data(), &[rat(1)]);
        assert!(matches!(standardize(&a, &labels(["a", "b"])), Err(Error::NotABase(_))));
        assert_eq!(standardize(&q(&["r"], &["a"], &[&[2]]), &labels(["a"])), Err(Error::NotTu));
        // already standard
        let a = q(&["p", "q"], &["p", "q", "u"], &[&[1, 0, 1], &[0, 1, -1]]);
        let s = standardize(&a, &labels(["p", "q"])).unwrap();
        assert_eq!(s.matrix(), &q(&["p", "q"], &["u"], &[&[1], &[-1]]));
        // zero row is dropped
        let a = q(&["r0", "r1"], &["a", "b"], &[&[1, 1], &[0, 0]]);
        let s = standardize(&a, &labels(["b"])).unwrap();
        assert_eq!((s.x().len(), s.y().len()), (1, 1));
        assert!(matroids_equal(&standard_repr_matroid(&s), &vector_matroid(&a)).unwrap());
    }

    #[test]
    fn same_support_examples() {
        assert!(same_support_check(&u12(), &u12()).unwrap());
        let z = StandardRepr::new(Matrix::from_ints(labels(["x"]), labels(["y"]), &[&[0]]).unwrap()).unwrap();
        assert!(!same_support_check(&u12(), &z).unwrap());
    }

    #[test]
    fn axioms_hold_and_fail() {
        let m = standard_repr_matroid(&u12());
        assert!(check_axioms(&m).unwrap().holds());
        // {a} and {b, c} maximal: violates augmentation
        let bad = Matroid::new(
            labels(["a", "b", "c"]),
            Arc::new(|s: &[usize]| s.is_empty() || s == [0] || s == [1] || s == [2] || s == [1, 2]),
            Provenance::Custom("bad".into()),
        )
        .unwrap();
        let r = check_axioms(&bad).unwrap();
        assert!(r.downward_closed && !r.augmentation);
    }
}
