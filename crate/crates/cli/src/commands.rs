use std::path::Path;

use regmat::format::{matrix_to_text, parse_matrix, AnyMatrix};
use regmat::matroid::{
    check_axioms, dual_matroid, dual_repr, first_disagreement, standard_repr_matroid, vector_matroid, Matroid,
    StandardRepr,
};
use regmat::special::{eval_good_tree, parse_frame, parse_good_tree_file};
use regmat::sums::{canonical_signing_sum3, sum1, sum2, sum3_of};
use regmat::tu::{is_k_pu, is_signing_of, is_tu_with_limit, Minor, TuReport};
use regmat::verify::{mutant_short_pivot, run_blueprint, CheckRecord, Transcript, VerifyConfig};
use regmat::{find_tu_signing, long_tableau_pivot, short_tableau_pivot, Error, Field, Label, Matrix, PivotSpec, Result};

use crate::{Cli, Command, MatroidQuery, PivotMode};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<AnyMatrix> {
    parse_matrix(&read(path)?)
}

fn show(ls: &[Label]) -> String {
    ls.iter().map(Label::as_str).collect::<Vec<_>>().join(" ")
}

fn minor_text(m: &Minor) -> String {
    format!("rows {} cols {} det {}", show(&m.rows), show(&m.cols), m.det)
}

fn tu_record(name: &str, rep: &TuReport) -> CheckRecord {
    match &rep.witness {
        None => CheckRecord::pass(name, 1),
        Some(w) => CheckRecord::fail(name, 1, minor_text(w)),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Command line as typed, without the program name.
fn echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> Result<Transcript> {
    let mut t = Transcript::new(format!("regmat {}", echo()));
    match &cli.command {
        Command::CheckTu { file, k } => {
            let a = read_matrix(file)?.to_rational();
            let (label, rep) = match k {
                Some(k) => (format!("{k}-PU"), is_k_pu(&a, *k)),
                None => ("TU".to_string(), is_tu_with_limit(&a, cli.limit)?),
            };
            t.output("result", format!("{label}: {}", yes_no(rep.is_tu)));
            t.output("minors checked", rep.minors_checked.to_string());
            t.check(tu_record(&label, &rep));
        }
        Command::Sign { file } => {
            let b = read_matrix(file)?.to_gf2();
            match find_tu_signing(&b)? {
                Some(s) => {
                    t.output("signing", matrix_to_text(&s.signed));
                    t.check(tu_record("TU", &is_tu_with_limit(&s.signed, cli.limit)?));
                }
                None => t.check(CheckRecord::fail("signing", 1, "no TU signing exists")),
            }
        }
        Command::Pivot { file, mode, row, col } => {
            let a = read_matrix(file)?.to_rational();
            let p = PivotSpec::new(row.as_str(), col.as_str());
            let out = match mode {
                PivotMode::Long => long_tableau_pivot(&a, &p)?,
                PivotMode::Short => short_tableau_pivot(&a, &p)?,
            };
            t.output("pivot", matrix_to_text(&out));
        }
        Command::Sum1 { left, right } => {
            let out = same_field(&read_matrix(left)?, &read_matrix(right)?, |l, r| Ok(sum1(l, r)?.into_matrix()), |l, r| {
                Ok(sum1(l, r)?.into_matrix())
            });
            precondition(&mut t, "sum1 preconditions", out);
        }
        Command::Sum2 { left, right, x, y } => {
            let (x, y) = (Label::new(x), Label::new(y));
            let out = same_field(
                &read_matrix(left)?,
                &read_matrix(right)?,
                |l, r| Ok(sum2(l, r, &x, &y)?.into_matrix()),
                |l, r| Ok(sum2(l, r, &x, &y)?.into_matrix()),
            );
            precondition(&mut t, "sum2 preconditions", out);
        }
        Command::Sum3 { left, right, frame } => {
            let (l, r) = (read_matrix(left)?.to_gf2(), read_matrix(right)?.to_gf2());
            let f = parse_frame(&read(frame)?)?;
            let (l, r) = (StandardRepr::new(l)?, StandardRepr::new(r)?);
            let out = sum3_of(&l, &r, &f).map(|s| matrix_to_text(s.matrix()));
            precondition(&mut t, "sum3 preconditions", out);
        }
        Command::SignSum3 { left, right, frame } => {
            let f = parse_frame(&read(frame)?)?;
            let signed = |m: AnyMatrix| -> Result<Option<regmat::RatMatrix>> {
                match m {
                    AnyMatrix::Rational(q) => Ok(Some(q)),
                    AnyMatrix::Gf2(b) => Ok(find_tu_signing(&b)?.map(|s| s.signed)),
                }
            };
            let (Some(l), Some(r)) = (signed(read_matrix(left)?)?, signed(read_matrix(right)?)?) else {
                t.check(CheckRecord::fail("summand signings", 1, "a summand has no TU signing"));
                return Ok(t.finish());
            };
            let (bl, br) = (StandardRepr::new(l.support())?, StandardRepr::new(r.support())?);
            match sum3_of(&bl, &br, &f).and_then(|b| Ok((canonical_signing_sum3(&l, &r, &f)?, b))) {
                Ok((q, b)) => {
                    t.output("signing", matrix_to_text(&q));
                    t.check(CheckRecord::pass("sum3 preconditions", 1));
                    let ok = is_signing_of(&q, b.matrix())?;
                    t.check(if ok { CheckRecord::pass("signing_of", 1) } else { CheckRecord::fail("signing_of", 1, "") });
                    t.check(tu_record("TU", &is_tu_with_limit(&q, cli.limit)?));
                }
                Err(e) => t.check(CheckRecord::fail("sum3 preconditions", 1, e.to_string())),
            }
        }
        Command::Dual { file } => {
            let text = match read_matrix(file)? {
                AnyMatrix::Rational(m) => matrix_to_text(dual_repr(&StandardRepr::new(m)?).matrix()),
                AnyMatrix::Gf2(m) => matrix_to_text(dual_repr(&StandardRepr::new(m)?).matrix()),
            };
            t.output("dual", text);
        }
        Command::Matroid { query } => matroid(&mut t, query)?,
        Command::Good { tree } => {
            let tree = parse_good_tree_file(tree)?;
            match eval_good_tree(&tree) {
                Ok(out) => {
                    t.check(CheckRecord::pass("certificates", 1));
                    t.output("representation", matrix_to_text(out.repr.matrix()));
                    t.output("signing", matrix_to_text(&out.signing.signed));
                    let ok = is_signing_of(&out.signing.signed, out.repr.matrix())?;
                    t.check(if ok { CheckRecord::pass("signing_of", 1) } else { CheckRecord::fail("signing_of", 1, "") });
                    let rep = is_tu_with_limit(&out.signing.signed, cli.limit)?;
                    if rep.is_tu {
                        t.output("result", "TU verified");
                    }
                    t.check(tu_record("TU", &rep));
                }
                Err(e) => t.check(CheckRecord::fail("certificates", 1, e.to_string())),
            }
        }
        Command::VerifyBlueprint { seed, trials, max_size, mutant } => {
            let mut cfg = VerifyConfig { seed: *seed, trials: *trials, max_size: *max_size, ..Default::default() };
            if *mutant {
                cfg.short_pivot = mutant_short_pivot;
            }
            t.seed = Some(*seed);
            for rec in run_blueprint(&cfg) {
                t.check(rec);
            }
        }
    }
    Ok(t.finish())
}

/// Runs `q` or `b` when both files are over the same field.
fn same_field(
    l: &AnyMatrix,
    r: &AnyMatrix,
    q: impl Fn(&StandardRepr<regmat::Rational>, &StandardRepr<regmat::Rational>) -> Result<regmat::RatMatrix>,
    b: impl Fn(&StandardRepr<regmat::Gf2>, &StandardRepr<regmat::Gf2>) -> Result<regmat::BinMatrix>,
) -> Result<String> {
    match (l, r) {
        (AnyMatrix::Rational(l), AnyMatrix::Rational(r)) => {
            Ok(matrix_to_text(&q(&StandardRepr::new(l.clone())?, &StandardRepr::new(r.clone())?)?))
        }
        (AnyMatrix::Gf2(l), AnyMatrix::Gf2(r)) => {
            Ok(matrix_to_text(&b(&StandardRepr::new(l.clone())?, &StandardRepr::new(r.clone())?)?))
        }
        _ => Err(Error::LabelMismatch("summands are over different fields".into())),
    }
}

/// A failed sum precondition is a check failure, not an input error.
fn precondition(t: &mut Transcript, name: &str, out: Result<String>) {
    match out {
        Ok(m) => {
            t.output("sum", m);
            t.check(CheckRecord::pass(name, 1));
        }
        Err(e) => t.check(CheckRecord::fail(name, 1, e.to_string())),
    }
}

fn matroid_of(path: &Path, vector: bool) -> Result<Matroid> {
    fn build<F: Field>(m: Matrix<F>, vector: bool) -> Result<Matroid> {
        Ok(if vector { vector_matroid(&m) } else { standard_repr_matroid(&StandardRepr::new(m)?) })
    }
    match read_matrix(path)? {
        AnyMatrix::Rational(m) => build(m, vector),
        AnyMatrix::Gf2(m) => build(m, vector),
    }
}

fn matroid(t: &mut Transcript, q: &MatroidQuery) -> Result<()> {
    match q {
        MatroidQuery::Indep { file, set, vector } => {
            let m = matroid_of(file, *vector)?;
            let set: Vec<Label> = set.iter().map(Label::new).collect();
            t.output("independent", yes_no(m.is_indep(&set)?));
        }
        MatroidQuery::Base { file, vector } => {
            let m = matroid_of(file, *vector)?;
            t.output("base", show(&m.find_base()));
        }
        MatroidQuery::Dual { file } => {
            let m = read_matrix(file)?;
            let (lhs, rhs) = match &m {
                AnyMatrix::Rational(b) => {
                    let s = StandardRepr::new(b.clone())?;
                    (dual_matroid(&standard_repr_matroid(&s))?, standard_repr_matroid(&dual_repr(&s)))
                }
                AnyMatrix::Gf2(b) => {
                    let s = StandardRepr::new(b.clone())?;
                    (dual_matroid(&standard_repr_matroid(&s))?, standard_repr_matroid(&dual_repr(&s)))
                }
            };
            t.output("dual base", show(&lhs.find_base()));
            t.check(match first_disagreement(&lhs, &rhs)? {
                None => CheckRecord::pass("duality", 1),
                Some(s) => CheckRecord::fail("duality", 1, format!("subset {{{}}}", show(&s))),
            });
        }
        MatroidQuery::Equal { first, second, vector } => {
            let (a, b) = (matroid_of(first, *vector)?, matroid_of(second, *vector)?);
            t.check(match first_disagreement(&a, &b)? {
                None => CheckRecord::pass("equal", 1),
                Some(s) => CheckRecord::fail("equal", 1, format!("subset {{{}}}", show(&s))),
            });
        }
        MatroidQuery::Axioms { file, vector } => {
            let rep = check_axioms(&matroid_of(file, *vector)?)?;
            t.check(if rep.holds() {
                CheckRecord::pass("axioms", 1)
            } else {
                CheckRecord::fail("axioms", 1, format!("{:?}", rep.counterexample))
            });
        }
    }
    Ok(())
}
