//! Canonical text formats.
//!
//! Tournament (bit-exact):
//! ```text
//! tournament v1
//! n=<N>
//! <N lines of N characters from {0,1}; char j of line i is 1 iff i -> j>
//! ```
//! UNIX newlines, no trailing whitespace, diagonal zero.
//!
//! Paths serialize as one line of comma-separated vertex indices; trees as
//! `n` lines `vertex,left,right` with `-` for a missing child.

use std::str;

use crate::error::ParseError;
use crate::paths::VertexPath;
use crate::trees::ShortcutTree;
use crate::tournament::Tournament;

pub const TOURNAMENT_MAGIC: &str = "tournament v1";

/// Serializes in the canonical format, byte-exact.
pub fn serialize_tournament(t: &Tournament) -> Vec<u8> {
    let n = t.n();
    let mut out = Vec::with_capacity(n * (n + 1) + 32);
    out.extend_from_slice(TOURNAMENT_MAGIC.as_bytes());
    out.push(b'\n');
    out.extend_from_slice(format!("n={n}\n").as_bytes());
    for i in 0..n {
        for j in 0..n {
            out.push(if t.edge(i, j) { b'1' } else { b'0' });
        }
        out.push(b'\n');
    }
    out
}

/// Parses the canonical format, rejecting each malformation distinctly.
pub fn parse_tournament(text: &[u8]) -> Result<Tournament, ParseError> {
    let mut lines = text.split(|&b| b == b'\n');
    let magic = lines.next().ok_or(ParseError::BadMagic)?;
    if magic != TOURNAMENT_MAGIC.as_bytes() {
        return Err(ParseError::BadMagic);
    }
    let size_line = lines.next().ok_or(ParseError::BadSizeLine)?;
    let n: usize = size_line
        .strip_prefix(b"n=")
        .and_then(|s| str::from_utf8(s).ok())
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::BadSizeLine)?;
    if n == 0 {
        return Err(ParseError::ZeroSize);
    }
    let mut cells: Vec<Vec<bool>> = Vec::with_capacity(n);
    for (row, line) in lines.by_ref().take(n).enumerate() {
        if line.len() != n {
            // a short read at the end means missing rows, not a bad row
            if line.is_empty() {
                return Err(ParseError::RowCountMismatch { got: row, expect: n });
            }
            return Err(ParseError::RowLengthMismatch { row, got: line.len(), expect: n });
        }
        let mut r = Vec::with_capacity(n);
        for (col, &c) in line.iter().enumerate() {
            match c {
                b'0' => r.push(false),
                b'1' => r.push(true),
                _ => return Err(ParseError::BadCell { row, col }),
            }
        }
        cells.push(r);
    }
    if cells.len() != n {
        return Err(ParseError::RowCountMismatch { got: cells.len(), expect: n });
    }
    // the final newline leaves one empty trailing split; anything else is junk
    for (extra, line) in lines.enumerate() {
        if !line.is_empty() || extra > 0 {
            return Err(ParseError::TrailingContent { line: n + 3 + extra });
        }
    }
    for (i, row) in cells.iter().enumerate() {
        if row[i] {
            return Err(ParseError::DiagonalNotZero { i });
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if cells[u][v] == cells[v][u] {
                return Err(ParseError::Antisymmetry { u, v });
            }
        }
    }
    Ok(Tournament::from_bool_matrix(n, |i, j| cells[i][j]))
}

/// One line of comma-separated vertex indices.
pub fn serialize_path(p: &VertexPath) -> String {
    let mut s = p
        .vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    s.push('\n');
    s
}

pub fn parse_path(text: &str) -> Result<VertexPath, ParseError> {
    let line = text.trim_end_matches('\n');
    if line.is_empty() {
        return Ok(VertexPath::new(Vec::new()));
    }
    let mut order = Vec::new();
    for part in line.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| ParseError::BadLine { line: 1, what: format!("bad index {part:?}") })?;
        order.push(v);
    }
    Ok(VertexPath::new(order))
}

/// `n` lines `vertex,left,right` in vertex order, `-` for absent children.
/// The root is the unique vertex that is nobody's child.
pub fn serialize_tree(b: &ShortcutTree) -> String {
    let mut out = String::new();
    for v in 0..b.n() {
        let cell = |c: Option<usize>| c.map_or("-".to_string(), |x| x.to_string());
        out.push_str(&format!("{},{},{}\n", v, cell(b.left(v)), cell(b.right(v))));
    }
    out
}

pub fn parse_tree(text: &str) -> Result<ShortcutTree, ParseError> {
    let rows: Vec<&str> = text.lines().collect();
    let n = rows.len();
    if n == 0 {
        return Err(ParseError::BadLine { line: 1, what: "empty tree file".into() });
    }
    let mut left = vec![None; n];
    let mut right = vec![None; n];
    let mut is_child = vec![false; n];
    for (i, row) in rows.iter().enumerate() {
        let parts: Vec<&str> = row.split(',').collect();
        if parts.len() != 3 {
            return Err(ParseError::BadLine { line: i + 1, what: "expected vertex,left,right".into() });
        }
        let bad = |what: &str| ParseError::BadLine { line: i + 1, what: what.into() };
        let v: usize = parts[0].parse().map_err(|_| bad("bad vertex"))?;
        if v != i {
            return Err(bad("rows must be in vertex order"));
        }
        let parse_child = |s: &str, what: &str| -> Result<Option<usize>, ParseError> {
            if s == "-" {
                Ok(None)
            } else {
                let c: usize = s.parse().map_err(|_| bad(what))?;
                if c >= n {
                    return Err(bad(what));
                }
                Ok(Some(c))
            }
        };
        left[i] = parse_child(parts[1], "bad left child")?;
        right[i] = parse_child(parts[2], "bad right child")?;
        for c in [left[i], right[i]].into_iter().flatten() {
            is_child[c] = true;
        }
    }
    let root = is_child
        .iter()
        .position(|&c| !c)
        .ok_or(ParseError::BadLine { line: 1, what: "no root (every vertex is a child)".into() })?;
    Ok(ShortcutTree::from_parts(root, left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Seed;

    #[test]
    fn c3_serializes_exactly() {
        let c3 = Tournament::rn(3).unwrap();
        assert_eq!(serialize_tournament(&c3), b"tournament v1\nn=3\n010\n001\n100\n");
    }

    #[test]
    fn round_trip_random() {
        let t = Tournament::random(50, Seed(3)).unwrap();
        let bytes = serialize_tournament(&t);
        let back = parse_tournament(&bytes).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(parse_tournament(b"nope\n"), Err(ParseError::BadMagic));
        assert_eq!(parse_tournament(b"tournament v1\nn=x\n"), Err(ParseError::BadSizeLine));
        assert_eq!(parse_tournament(b"tournament v1\nn=0\n"), Err(ParseError::ZeroSize));
        assert_eq!(
            parse_tournament(b"tournament v1\nn=2\n01\n"),
            Err(ParseError::RowCountMismatch { got: 1, expect: 2 })
        );
        assert_eq!(
            parse_tournament(b"tournament v1\nn=2\n011\n00\n"),
            Err(ParseError::RowLengthMismatch { row: 0, got: 3, expect: 2 })
        );
        assert_eq!(
            parse_tournament(b"tournament v1\nn=2\n0x\n10\n"),
            Err(ParseError::BadCell { row: 0, col: 1 })
        );
        assert_eq!(
            parse_tournament(b"tournament v1\nn=2\n11\n00\n"),
            Err(ParseError::DiagonalNotZero { i: 0 })
        );
        assert_eq!(
            parse_tournament(b"tournament v1\nn=2\n01\n10\n"),
            Err(ParseError::Antisymmetry { u: 0, v: 1 })
        );
        assert_eq!(
            parse_tournament(b"tournament v1\nn=2\n01\n00\njunk\n"),
            Err(ParseError::TrailingContent { line: 5 })
        );
    }

    #[test]
    fn path_and_tree_round_trip() {
        let p = VertexPath::new(vec![4, 0, 2]);
        assert_eq!(serialize_path(&p), "4,0,2\n");
        assert_eq!(parse_path("4,0,2\n").unwrap(), p);

        let b = ShortcutTree::from_parts(1, vec![None, Some(0), None], vec![None, Some(2), None]);
        let s = serialize_tree(&b);
        assert_eq!(s, "0,-,-\n1,0,2\n2,-,-\n");
        assert_eq!(parse_tree(&s).unwrap(), b);
    }
}
