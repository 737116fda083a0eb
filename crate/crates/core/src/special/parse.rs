//! Text formats for graphs, 3-sum frames and decomposition trees.
//!
//! Graph file, one item per line (`#` starts a comment):
//!
//! ```text
//! nodes a b c
//! edge e1 a b
//! edge b c
//! ```
//!
//! `edge tail head` gets the label `e<k>` with `k` its 1-based position.
//! Nodes not listed are added on first use.
//!
//! Frame file: `x0 L`, `x1 L`, `x2 L`, `y0 L`, `y1 L`, `y2 L` and the lists
//! `xl ...`, `yl ...`, `xr ...`, `yr ...` (possibly empty).
//!
//! Tree file, an s-expression:
//!
//! ```text
//! (sum3 left.frame
//!   (graphic left.graph)
//!   (sum1 (cographic (graph (edge p u v))) (r10 (x1:a x2:b) (y1:c))))
//! ```
//!
//! Leaves are `(graphic G)`, `(cographic G)` and `(r10 [ROWS [COLS [MATRIX]]])`
//! where `G` is a file path or an inline `(graph (nodes ...) (edge ...) ...)`,
//! the maps are lists of `from:to` pairs and `MATRIX` is a matrix file the
//! relabeled R10 must equal. Internal nodes are `(sum1 T T)`, `(sum2 X Y T T)`
//! and `(sum3 F T T)` with `F` a frame file or an inline
//! `(frame (x0 L) ... (xl ...) ...)`. Paths are relative to `base`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::format::parse_gf2;
use crate::label::Label;
use crate::sums::Sum3Frame;

use super::graph::{Digraph, Edge};
use super::r10::R10Cert;
use super::tree::GoodTree;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn add_node(nodes: &mut Vec<Label>, l: &Label) {
    if !nodes.contains(l) {
        nodes.push(l.clone());
    }
}

/// Builds a graph from `(line, words)` items shared by both syntaxes.
fn graph_from_items(items: Vec<(usize, Vec<String>)>) -> Result<Digraph> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (line, words) in items {
        match words.first().map(String::as_str) {
            Some("nodes") => words[1..].iter().for_each(|w| add_node(&mut nodes, &w.into())),
            Some("edge") => {
                let (label, tail, head) = match &words[1..] {
                    [t, h] => (Label::new(format!("e{}", edges.len() + 1)), Label::from(t), Label::from(h)),
                    [l, t, h] => (Label::from(l), Label::from(t), Label::from(h)),
                    _ => return Err(Error::parse(line, "expected `edge [label] tail head`")),
                };
                add_node(&mut nodes, &tail);
                add_node(&mut nodes, &head);
                edges.push(Edge { label, tail, head });
            }
            Some(other) => return Err(Error::parse(line, format!("unknown graph item `{other}`"))),
            None => {}
        }
    }
    Digraph::new(nodes, edges)
}

pub fn parse_graph(text: &str) -> Result<Digraph> {
    let items = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).split_whitespace().map(String::from).collect::<Vec<_>>()))
        .filter(|(_, w)| !w.is_empty())
        .collect();
    graph_from_items(items)
}

fn frame_from_items(items: Vec<(usize, Vec<String>)>, end_line: usize) -> Result<Sum3Frame> {
    let mut single: [Option<Label>; 6] = Default::default();
    let mut lists: [Option<Vec<Label>>; 4] = Default::default();
    const SINGLE: [&str; 6] = ["x0", "x1", "x2", "y0", "y1", "y2"];
    const LISTS: [&str; 4] = ["xl", "yl", "xr", "yr"];
    for (line, words) in items {
        let key = words[0].as_str();
        if let Some(k) = SINGLE.iter().position(|s| *s == key) {
            if words.len() != 2 {
                return Err(Error::parse(line, format!("`{key}` takes exactly one label")));
            }
            if single[k].replace(words[1].as_str().into()).is_some() {
                return Err(Error::parse(line, format!("`{key}` given twice")));
            }
        } else if let Some(k) = LISTS.iter().position(|s| *s == key) {
            if lists[k].replace(words[1..].iter().map(Label::from).collect()).is_some() {
                return Err(Error::parse(line, format!("`{key}` given twice")));
            }
        } else {
            return Err(Error::parse(line, format!("unknown frame item `{key}`")));
        }
    }
    let mut s = single.into_iter().zip(SINGLE);
    let mut take = || {
        let (v, name) = s.next().expect("six entries");
        v.ok_or_else(|| Error::parse(end_line, format!("frame is missing `{name}`")))
    };
    let (x0, x1, x2, y0, y1, y2) = (take()?, take()?, take()?, take()?, take()?, take()?);
    let [xl, yl, xr, yr] = lists.map(Option::unwrap_or_default);
    Ok(Sum3Frame { x0, x1, x2, y0, y1, y2, xl, yl, xr, yr })
}

pub fn parse_frame(text: &str) -> Result<Sum3Frame> {
    let items: Vec<_> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).split_whitespace().map(String::from).collect::<Vec<_>>()))
        .filter(|(_, w)| !w.is_empty())
        .collect();
    frame_from_items(items, text.lines().count().max(1))
}

/// Frame in the file format above.
pub fn frame_to_text(f: &Sum3Frame) -> String {
    let mut out = String::new();
    for (k, v) in [("x0", &f.x0), ("x1", &f.x1), ("x2", &f.x2), ("y0", &f.y0), ("y1", &f.y1), ("y2", &f.y2)] {
        out.push_str(&format!("{k} {v}\n"));
    }
    for (k, v) in [("xl", &f.xl), ("yl", &f.yl), ("xr", &f.xr), ("yr", &f.yr)] {
        let words: Vec<&str> = v.iter().map(Label::as_str).collect();
        out.push_str(&format!("{k} {}\n", words.join(" ")).replace(" \n", "\n"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn line(&self) -> usize {
        match self {
            Sexp::Atom(_, l) | Sexp::List(_, l) => *l,
        }
    }
}

fn read_sexp(text: &str) -> Result<Sexp> {
    let mut tokens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = strip_comment(line).replace('(', " ( ").replace(')', " ) ");
        tokens.extend(body.split_whitespace().map(|t| (t.to_string(), line_no)));
    }
    let mut pos = 0;
    let e = read_one(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::parse(tokens[pos].1, "trailing input after the tree"));
    }
    Ok(e)
}

fn read_one(tokens: &[(String, usize)], pos: &mut usize) -> Result<Sexp> {
    let last = tokens.last().map_or(1, |t| t.1);
    let Some((tok, line)) = tokens.get(*pos) else {
        return Err(Error::parse(last, "unexpected end of input"));
    };
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::parse(*line, "unclosed `(`")),
                    Some((t, _)) if t == ")" => {
                        *pos += 1;
                        return Ok(Sexp::List(items, *line));
                    }
                    Some(_) => items.push(read_one(tokens, pos)?),
                }
            }
        }
        ")" => Err(Error::parse(*line, "unexpected `)`")),
        _ => Ok(Sexp::Atom(tok.clone(), *line)),
    }
}

fn atom(e: &Sexp, what: &str) -> Result<String> {
    match e {
        Sexp::Atom(s, _) => Ok(s.clone()),
        Sexp::List(_, l) => Err(Error::parse(*l, format!("expected {what}, found a list"))),
    }
}

/// Items of an inline `(graph ...)` or `(frame ...)`: each is a list of atoms.
fn inline_items(items: &[Sexp]) -> Result<Vec<(usize, Vec<String>)>> {
    items
        .iter()
        .map(|it| match it {
            Sexp::List(ws, l) if !ws.is_empty() => {
                Ok((*l, ws.iter().map(|w| atom(w, "a word")).collect::<Result<Vec<_>>>()?))
            }
            other => Err(Error::parse(other.line(), "expected a non-empty list")),
        })
        .collect()
}

fn read_file(base: &Path, name: &str) -> Result<String> {
    let p = base.join(name);
    std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn graph_arg(e: &Sexp, base: &Path) -> Result<Digraph> {
    match e {
        Sexp::Atom(path, _) => parse_graph(&read_file(base, path)?),
        Sexp::List(items, l) => match items.split_first() {
            Some((Sexp::Atom(h, _), rest)) if h == "graph" => graph_from_items(inline_items(rest)?),
            _ => Err(Error::parse(*l, "expected a graph file or `(graph ...)`")),
        },
    }
}

fn frame_arg(e: &Sexp, base: &Path) -> Result<Sum3Frame> {
    match e {
        Sexp::Atom(path, _) => parse_frame(&read_file(base, path)?),
        Sexp::List(items, l) => match items.split_first() {
            Some((Sexp::Atom(h, _), rest)) if h == "frame" => frame_from_items(inline_items(rest)?, *l),
            _ => Err(Error::parse(*l, "expected a frame file or `(frame ...)`")),
        },
    }
}

fn map_arg(e: &Sexp) -> Result<Vec<(Label, Label)>> {
    let Sexp::List(items, _) = e else {
        return Err(Error::parse(e.line(), "expected a list of `from:to` pairs"));
    };
    items
        .iter()
        .map(|it| {
            let s = atom(it, "a `from:to` pair")?;
            match s.split_once(':') {
                Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.into(), b.into())),
                _ => Err(Error::parse(it.line(), format!("`{s}` is not a `from:to` pair"))),
            }
        })
        .collect()
}

fn tree_of(e: &Sexp, base: &Path) -> Result<GoodTree> {
    let Sexp::List(items, line) = e else {
        return Err(Error::parse(e.line(), "expected a tree node `( ... )`"));
    };
    let line = *line;
    let Some((head, args)) = items.split_first() else {
        return Err(Error::parse(line, "empty tree node"));
    };
    let head = atom(head, "a node kind")?;
    let arity = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::parse(line, format!("`{head}` takes {n} arguments, got {}", args.len())))
        }
    };
    match head.as_str() {
        "graphic" => {
            arity(1)?;
            Ok(GoodTree::graphic(graph_arg(&args[0], base)?))
        }
        "cographic" => {
            arity(1)?;
            Ok(GoodTree::cographic(graph_arg(&args[0], base)?))
        }
        "r10" => {
            if args.len() > 3 {
                return Err(Error::parse(line, "`r10` takes at most 3 arguments"));
            }
            let mut c = R10Cert::identity();
            if let Some(r) = args.first() {
                c.rows = map_arg(r)?;
            }
            if let Some(r) = args.get(1) {
                c.cols = map_arg(r)?;
            }
            if let Some(p) = args.get(2) {
                c.expect = Some(parse_gf2(&read_file(base, &atom(p, "a matrix file")?)?)?);
            }
            Ok(GoodTree::r10(c))
        }
        "sum1" => {
            arity(2)?;
            Ok(GoodTree::sum1(tree_of(&args[0], base)?, tree_of(&args[1], base)?))
        }
        "sum2" => {
            arity(4)?;
            let (x, y) = (atom(&args[0], "a row label")?, atom(&args[1], "a column label")?);
            Ok(GoodTree::sum2(x, y, tree_of(&args[2], base)?, tree_of(&args[3], base)?))
        }
        "sum3" => {
            arity(3)?;
            let f = frame_arg(&args[0], base)?;
            Ok(GoodTree::sum3(f, tree_of(&args[1], base)?, tree_of(&args[2], base)?))
        }
        other => Err(Error::parse(line, format!("unknown node kind `{other}`"))),
    }
}

pub fn parse_good_tree(text: &str, base: &Path) -> Result<GoodTree> {
    tree_of(&read_sexp(text)?, base)
}

pub fn parse_good_tree_file(path: &Path) -> Result<GoodTree> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_good_tree(&text, path.parent().unwrap_or(Path::new(".")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_file() {
        let g = parse_graph("# triangle\nnodes a b c\nedge e1 a b\nedge b c\nedge x c a\n").unwrap();
        assert_eq!(g.nodes().len(), 3);
        assert_eq!(g.edge_labels(), vec![Label::from("e1"), "e2".into(), "x".into()]);
        assert_eq!(parse_graph("edge a\n"), Err(Error::parse(1, "expected `edge [label] tail head`")));
        assert!(matches!(parse_graph("edge e a b\nedge e b c\n"), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn frame_file_round_trip() {
        let text = "x0 a\nx1 b\nx2 c\ny0 d\ny1 e\ny2 f\nxl p q\nyl\nxr r\nyr\n";
        let f = parse_frame(text).unwrap();
        assert_eq!(f.xl, vec![Label::from("p"), "q".into()]);
        assert!(f.yl.is_empty());
        assert_eq!(frame_to_text(&f), text);
        assert!(matches!(parse_frame("x0 a\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn tree_inline() {
        let t = parse_good_tree("(sum1 (graphic (graph (edge a u v)))\n (r10 (x1:p) ()))", Path::new(".")).unwrap();
        assert_eq!(t.leaves(), 2);
        assert!(matches!(parse_good_tree("(sum1 (r10)", Path::new(".")), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_good_tree("(sum4 (r10) (r10))", Path::new(".")), Err(Error::Parse { .. })));
    }
}
