//! Searching for a TU signing of a GF(2) matrix.
//!
//! The candidate is forced: edges of a BFS spanning forest of the bipartite
//! nonzero graph get `+1`, and every other nonzero gets the sign that makes
//! the cycle it closes (through a shortest path of already signed entries)
//! sum to `0 mod 4`. One TU check decides the candidate. If it fails, a
//! backtracking search over all sign patterns settles existence.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::BinMatrix;
use crate::tu::{apply_signs, is_tu, Signing};

/// Largest nonzero count the exhaustive fallback accepts.
pub const FALLBACK_MAX_NONZEROS: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigningMethod {
    Forced,
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigningTrace {
    /// Method that produced the answer.
    pub method: SigningMethod,
    pub nonzeros: usize,
    /// Complete sign patterns handed to the TU check.
    pub candidates_checked: u64,
    /// Partial patterns discarded by a 2x2 minor.
    pub pruned: u64,
}

pub fn find_tu_signing(b: &BinMatrix) -> Result<Option<Signing>> {
    find_tu_signing_traced(b).map(|(s, _)| s)
}

pub fn find_tu_signing_traced(b: &BinMatrix) -> Result<(Option<Signing>, SigningTrace)> {
    let nz = b.nonzeros();
    let mut trace = SigningTrace { method: SigningMethod::Forced, nonzeros: nz.len(), candidates_checked: 1, pruned: 0 };
    let forced = forced_signs(b);
    let cand = apply_signs(b, &forced);
    if is_tu(&cand)?.is_tu {
        return Ok((Some(Signing { signed: cand, of: b.clone() }), trace));
    }
    if nz.len() > FALLBACK_MAX_NONZEROS {
        return Err(Error::SizeLimitExceeded { what: "signing fallback (nonzeros)", limit: FALLBACK_MAX_NONZEROS as u64 });
    }
    trace.method = SigningMethod::Fallback;
    trace.candidates_checked = 0;
    let found = backtrack(b, &nz, &mut trace)?;
    Ok((found.map(|s| Signing { signed: apply_signs(b, &s), of: b.clone() }), trace))
}

/// Row-major sign grid (entries at zeros are unused).
fn forced_signs(b: &BinMatrix) -> Vec<i8> {
    let (m, n) = (b.nrows(), b.ncols());
    let v = m + n;
    // adjacency over signed edges; vertex i < m is a row, m + j a column
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); v];
    let mut signs = vec![1i8; m * n];
    let mut in_tree = vec![false; m * n];
    let full: Vec<Vec<usize>> = (0..v)
        .map(|x| {
            if x < m {
                (0..n).filter(|&j| b.get(x, j).bit()).map(|j| m + j).collect()
            } else {
                (0..m).filter(|&i| b.get(i, x - m).bit()).collect()
            }
        })
        .collect();
    let edge = |x: usize, y: usize| if x < m { x * n + (y - m) } else { y * n + (x - m) };

    let mut seen = vec![false; v];
    for root in 0..v {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &full[x] {
                if !seen[y] {
                    seen[y] = true;
                    in_tree[edge(x, y)] = true;
                    adj[x].push(y);
                    adj[y].push(x);
                    queue.push_back(y);
                }
            }
        }
    }

    for i in 0..m {
        for j in 0..n {
            let e = i * n + j;
            if !b.get(i, j).bit() || in_tree[e] {
                continue;
            }
            let path = shortest_path(&adj, i, m + j).expect("endpoints share a tree component");
            let sum: i32 = path.windows(2).map(|w| signs[edge(w[0], w[1])] as i32).sum();
            // cycle sum = sum + s must be 0 mod 4
            signs[e] = if (sum + 1).rem_euclid(4) == 0 { 1 } else { -1 };
            adj[i].push(m + j);
            adj[m + j].push(i);
        }
    }
    signs
}

fn shortest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut c = to;
            while c != from {
                c = prev[c];
                path.push(c);
            }
            path.reverse();
            return Some(path);
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Depth-first over signs of the nonzeros in row-major order, `+1` first.
fn backtrack(b: &BinMatrix, nz: &[(usize, usize)], trace: &mut SigningTrace) -> Result<Option<Vec<i8>>> {
    let n = b.ncols();
    let mut signs = vec![0i8; b.nrows() * n];
    fn rec(
        b: &BinMatrix,
        nz: &[(usize, usize)],
        k: usize,
        signs: &mut Vec<i8>,
        trace: &mut SigningTrace,
    ) -> Result<bool> {
        let n = b.ncols();
        if k == nz.len() {
            trace.candidates_checked += 1;
            return Ok(is_tu(&apply_signs(b, signs))?.is_tu);
        }
        let (i, j) = nz[k];
        for s in [1i8, -1] {
            signs[i * n + j] = s;
            if two_by_two_ok(signs, n, nz, k) {
                if rec(b, nz, k + 1, signs, trace)? {
                    return Ok(true);
                }
            } else {
                trace.pruned += 1;
            }
        }
        signs[i * n + j] = 0;
        Ok(false)
    }
    Ok(rec(b, nz, 0, &mut signs, trace)?.then_some(signs))
}

/// 2x2 minors completed by the `k`-th nonzero, which is the last one in
/// row-major order among the four corners.
fn two_by_two_ok(signs: &[i8], n: usize, nz: &[(usize, usize)], k: usize) -> bool {
    let (i, j) = nz[k];
    for &(i2, j2) in &nz[..k] {
        if i2 >= i || j2 == j {
            continue;
        }
        let (a, c) = (signs[i2 * n + j2], signs[i2 * n + j]);
        let d = signs[i * n + j2];
        if a == 0 || c == 0 || d == 0 {
            continue;
        }
        let det = a as i32 * signs[i * n + j] as i32 - c as i32 * d as i32;
        if det.abs() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::numbered;
    use crate::matrix::Matrix;
    use crate::tu::is_signing_of;

    fn bin(grid: &[&[i64]]) -> BinMatrix {
        Matrix::from_ints(numbered("r", grid.len()), numbered("c", grid[0].len()), grid).unwrap()
    }

    #[test]
    fn identity_signs_to_identity() {
        let b = bin(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let s = find_tu_signing(&b).unwrap().unwrap();
        assert_eq!(s.signed, b.to_rational());
    }

    #[test]
    fn four_cycle_gets_a_minus() {
        let b = bin(&[&[1, 1], &[1, 1]]);
        let (s, t) = find_tu_signing_traced(&b).unwrap();
        let s = s.unwrap();
        assert_eq!(t.method, SigningMethod::Forced);
        assert!(is_signing_of(&s.signed, &b).unwrap());
        assert!(is_tu(&s.signed).unwrap().is_tu);
    }

    #[test]
    fn fano_has_none() {
        let b = bin(&[&[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 1]]);
        let (s, t) = find_tu_signing_traced(&b).unwrap();
        assert!(s.is_none());
        assert_eq!(t.method, SigningMethod::Fallback);
    }

    #[test]
    fn fallback_limit() {
        // Fano block next to an identity: 9 + 17 nonzeros
        let (m, n) = (20, 21);
        let mut grid = vec![vec![0i64; n]; m];
        for (i, row) in [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]].iter().enumerate() {
            grid[i][..4].copy_from_slice(row);
        }
        for k in 0..17 {
            grid[3 + k][4 + k] = 1;
        }
        let rows: Vec<&[i64]> = grid.iter().map(|r| r.as_slice()).collect();
        let r = find_tu_signing(&bin(&rows));
        assert!(matches!(r, Err(Error::SizeLimitExceeded { .. })), "{r:?}");
    }
}
