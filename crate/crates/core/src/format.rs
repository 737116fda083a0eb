//! Plain-text matrix files.
//!
//! ```text
//! Q
//! r0 r1
//! c0 c1
//! 1 -1/2
//! 0 3
//! ```
//!
//! Line 1 is the field tag (`Q` or `GF2`), lines 2 and 3 hold the row and
//! column labels (either may be blank for an empty axis), then one line of
//! space-separated entries per row. Trailing blank lines are ignored.

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{BinMatrix, Matrix, RatMatrix};
use crate::scalar::{Field, FieldTag, Gf2, Rational};

/// A parsed matrix over whichever field its header named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Rational(RatMatrix),
    Gf2(BinMatrix),
}

impl AnyMatrix {
    pub fn field(&self) -> FieldTag {
        match self {
            AnyMatrix::Rational(_) => FieldTag::Rational,
            AnyMatrix::Gf2(_) => FieldTag::Gf2,
        }
    }

    /// The rational view; GF(2) matrices are embedded (`1 -> 1`).
    pub fn to_rational(&self) -> RatMatrix {
        match self {
            AnyMatrix::Rational(m) => m.clone(),
            AnyMatrix::Gf2(m) => m.to_rational(),
        }
    }

    /// The GF(2) view; rational matrices are replaced by their support.
    pub fn to_gf2(&self) -> BinMatrix {
        match self {
            AnyMatrix::Rational(m) => m.support(),
            AnyMatrix::Gf2(m) => m.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMatrix::Rational(m) => matrix_to_text(m),
            AnyMatrix::Gf2(m) => matrix_to_text(m),
        }
    }
}

pub fn matrix_to_text<F: Field>(m: &Matrix<F>) -> String {
    let join = |ls: &[Label]| ls.iter().map(Label::as_str).collect::<Vec<_>>().join(" ");
    let mut out = format!("{}\n{}\n{}\n", F::TAG, join(m.row_labels()), join(m.col_labels()));
    for i in 0..m.nrows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_labels(line: &str) -> Vec<Label> {
    line.split_whitespace().map(Label::from).collect()
}

fn parse_grid<F: Field>(rows: Vec<Label>, cols: Vec<Label>, body: &[(usize, &str)]) -> Result<Matrix<F>> {
    if cols.is_empty() && body.len() <= rows.len() {
        // zero-width rows are blank lines, which may have been trimmed
        if let Some((n, _)) = body.iter().find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(*n, "expected an empty row"));
        }
        return Matrix::new(rows, cols, Vec::new()).map_err(|e| Error::parse(2, e.to_string()));
    }
    if body.len() != rows.len() {
        let line = body.last().map_or(3, |(n, _)| *n);
        return Err(Error::parse(line, format!("expected {} entry rows, found {}", rows.len(), body.len())));
    }
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for &(n, line) in body {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != cols.len() {
            return Err(Error::parse(n, format!("expected {} entries, found {}", cols.len(), toks.len())));
        }
        for t in toks {
            let v = F::parse_entry(t).ok_or_else(|| Error::parse(n, format!("bad {} entry `{t}`", F::TAG)))?;
            data.push(v);
        }
    }
    Matrix::new(rows, cols, data).map_err(|e| Error::parse(2, e.to_string()))
}

pub fn parse_matrix(text: &str) -> Result<AnyMatrix> {
    let mut lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r'))).collect();
    while lines.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        lines.pop();
    }
    if lines.len() < 3 {
        // a header with two empty label lines may have been trimmed away
        if lines.len() == 1 {
            lines.push((2, ""));
            lines.push((3, ""));
        } else if lines.len() == 2 {
            lines.push((3, ""));
        } else {
            return Err(Error::parse(1, "missing field tag"));
        }
    }
    let rows = parse_labels(lines[1].1);
    let cols = parse_labels(lines[2].1);
    let body = &lines[3..];
    match lines[0].1.trim() {
        "Q" => Ok(AnyMatrix::Rational(parse_grid::<Rational>(rows, cols, body)?)),
        "GF2" => Ok(AnyMatrix::Gf2(parse_grid::<Gf2>(rows, cols, body)?)),
        other => Err(Error::parse(1, format!("unknown field tag `{other}`"))),
    }
}

pub fn parse_rational(text: &str) -> Result<RatMatrix> {
    match parse_matrix(text)? {
        AnyMatrix::Rational(m) => Ok(m),
        AnyMatrix::Gf2(_) => Err(Error::parse(1, "expected a Q matrix")),
    }
}

pub fn parse_gf2(text: &str) -> Result<BinMatrix> {
    match parse_matrix(text)? {
        AnyMatrix::Gf2(m) => Ok(m),
        AnyMatrix::Rational(_) => Err(Error::parse(1, "expected a GF2 matrix")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn round_trip() {
        let text = "Q\nr0 r1\nc0 c1\n1 -1/2\n0 3\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.to_text(), text);
        let AnyMatrix::Rational(q) = &m else { panic!() };
        assert_eq!(q.get(0, 1), frac(-1, 2));
    }

    #[test]
    fn canonicalizes_fractions() {
        let m = parse_matrix("Q\na\nb\n4/-6\n").unwrap();
        assert_eq!(m.to_text(), "Q\na\nb\n-2/3\n");
    }

    #[test]
    fn empty_axes() {
        let m = parse_matrix("GF2\nx y\n\n\n\n").unwrap();
        let AnyMatrix::Gf2(b) = &m else { panic!() };
        assert_eq!((b.nrows(), b.ncols()), (2, 0));
        assert_eq!(parse_matrix(&m.to_text()).unwrap(), m);
        let e = parse_matrix("Q\n\n\n").unwrap();
        assert_eq!(e.to_text(), "Q\n\n\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_matrix("Z\na\nb\n1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("GF2\na\nb\n2\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_matrix("Q\na\nb c\n1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_matrix("Q\na b\nc\n1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("Q\na a\nc\n1\n1\n"), Err(Error::Parse { .. })));
        assert!(parse_matrix("").is_err());
    }
}
