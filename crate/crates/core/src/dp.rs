//! Exact dynamic programs over vertex subsets.
//!
//! Hop counts are a function of the last two path vertices only: appending
//! `w` to a path ending `..., a, b` adds a hop iff `a -> w` is an edge. So
//! the maximum hop count over Hamiltonian paths, and the longest
//! hop-complete path, both admit a `(visited set, last two vertices)` DP.
//! Shortcut counts depend on the whole prefix and get a branch-and-bound
//! search in the oracle module instead.

use crate::bits;
use crate::tournament::Tournament;

/// Local view of a small sub-tournament: vertices and a dense bool matrix.
pub(crate) struct SmallSub {
    pub verts: Vec<usize>,
    adj: Vec<bool>,
}

impl SmallSub {
    pub(crate) fn from_mask(t: &Tournament, mask: &[u64]) -> SmallSub {
        let verts: Vec<usize> = bits::ones(mask).collect();
        let m = verts.len();
        let mut adj = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    adj[a * m + b] = t.edge(verts[a], verts[b]);
                }
            }
        }
        SmallSub { verts, adj }
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.verts.len()
    }

    #[inline]
    pub(crate) fn edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.len() + b]
    }
}

/// Maximum number of hops over all Hamiltonian paths of the sub-tournament
/// selected by `mask`, together with one optimal path (in host labels).
///
/// State space is `2^m * m^2`; callers keep `m` small (at most ~20).
pub(crate) fn max_hops_masked(t: &Tournament, mask: &[u64]) -> (u64, Vec<usize>) {
    let sub = SmallSub::from_mask(t, mask);
    let (h, local) = max_hops_small(&sub);
    (h, local.into_iter().map(|a| sub.verts[a]).collect())
}

pub(crate) fn max_hops_small(sub: &SmallSub) -> (u64, Vec<usize>) {
    let m = sub.len();
    assert!(m <= 20, "hop DP limited to 20 vertices, got {m}");
    if m == 1 {
        return (0, vec![0]);
    }
    const NEG: i16 = -1;
    let full: usize = (1 << m) - 1;
    // dp[(mask * m + prev) * m + last]
    let mut dp = vec![NEG; (full + 1) * m * m];
    for u in 0..m {
        for v in 0..m {
            if u != v && sub.edge(u, v) {
                dp[(((1 << u) | (1 << v)) * m + u) * m + v] = 0;
            }
        }
    }
    for mask in 3..=full {
        for prev in 0..m {
            if mask >> prev & 1 == 0 {
                continue;
            }
            for last in 0..m {
                let cur = dp[(mask * m + prev) * m + last];
                if cur < 0 {
                    continue;
                }
                let mut rest = !mask & full;
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if !sub.edge(last, w) {
                        continue;
                    }
                    let gain = sub.edge(prev, w) as i16;
                    let slot = &mut dp[(((mask | (1 << w)) * m + last) * m) + w];
                    if cur + gain > *slot {
                        *slot = cur + gain;
                    }
                }
            }
        }
    }
    let mut best = NEG;
    let (mut ba, mut bb) = (0, 0);
    for prev in 0..m {
        for last in 0..m {
            let v = dp[(full * m + prev) * m + last];
            if v > best {
                best = v;
                ba = prev;
                bb = last;
            }
        }
    }
    debug_assert!(best >= 0, "every tournament has a Hamiltonian path");
    // walk the DP backwards to recover one optimal path
    let mut path = vec![bb, ba];
    let mut mask = full;
    let (mut a, mut b) = (ba, bb);
    let mut val = best;
    while mask.count_ones() > 2 {
        let shrunk = mask & !(1 << b);
        let gain_needed = val;
        let mut found = false;
        for w in 0..m {
            if w == a || w == b || mask >> w & 1 == 0 {
                continue;
            }
            let gain = sub.edge(w, b) as i16;
            if dp[(shrunk * m + w) * m + a] == gain_needed - gain {
                path.push(w);
                mask = shrunk;
                val -= gain;
                b = a;
                a = w;
                found = true;
                break;
            }
        }
        debug_assert!(found, "DP backtrack lost the trail");
        if !found {
            break;
        }
    }
    path.reverse();
    (best as u64, path)
}

/// Longest hop-complete (square) path in the sub-tournament selected by
/// `mask`, with one witness in host labels. Same state space as the hop DP,
/// storing reachability instead of a score.
pub(crate) fn longest_square_masked(t: &Tournament, mask: &[u64]) -> (u64, Vec<usize>) {
    let sub = SmallSub::from_mask(t, mask);
    let m = sub.len();
    assert!(m <= 20, "square DP limited to 20 vertices, got {m}");
    if m == 0 {
        return (0, Vec::new());
    }
    if m == 1 {
        return (1, vec![sub.verts[0]]);
    }
    let full: usize = (1 << m) - 1;
    let mut reach = vec![false; (full + 1) * m * m];
    for u in 0..m {
        for v in 0..m {
            if u != v && sub.edge(u, v) {
                reach[(((1 << u) | (1 << v)) * m + u) * m + v] = true;
            }
        }
    }
    let mut best_len = 1u32;
    let (mut bm, mut ba, mut bb) = (1usize, 0usize, 0usize); // single vertex fallback
    for mask in 3..=full {
        for prev in 0..m {
            if mask >> prev & 1 == 0 {
                continue;
            }
            for last in 0..m {
                if !reach[(mask * m + prev) * m + last] {
                    continue;
                }
                let sz = mask.count_ones();
                if sz > best_len {
                    best_len = sz;
                    bm = mask;
                    ba = prev;
                    bb = last;
                }
                let mut rest = !mask & full;
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    // appending w needs the path edge and the new hop
                    if sub.edge(last, w) && sub.edge(prev, w) {
                        reach[((mask | (1 << w)) * m + last) * m + w] = true;
                    }
                }
            }
        }
    }
    if best_len == 1 {
        return (1, vec![sub.verts[0]]);
    }
    // backtrack
    let mut path = vec![bb, ba];
    let (mut mask, mut a, mut b) = (bm, ba, bb);
    while mask.count_ones() > 2 {
        let shrunk = mask & !(1 << b);
        let mut found = false;
        for w in 0..m {
            if w == a || w == b || mask >> w & 1 == 0 {
                continue;
            }
            if sub.edge(a, b) && sub.edge(w, b) && reach[(shrunk * m + w) * m + a] {
                path.push(w);
                mask = shrunk;
                b = a;
                a = w;
                found = true;
                break;
            }
        }
        debug_assert!(found);
        if !found {
            break;
        }
    }
    path.reverse();
    (best_len as u64, path.into_iter().map(|v| sub.verts[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::{Seed, VertexSet};

    fn full_mask(n: usize) -> Vec<u64> {
        VertexSet::full(n).words().to_vec()
    }

    #[test]
    fn hops_on_transitive_take_everything() {
        let t = Tournament::transitive(6).unwrap();
        let (h, p) = max_hops_masked(&t, &full_mask(6));
        assert_eq!(h, 4); // n - 2 hops on the sorted path
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn hops_on_triangle_are_zero() {
        let t = Tournament::rn(3).unwrap();
        let (h, p) = max_hops_masked(&t, &full_mask(3));
        assert_eq!(h, 0);
        assert_eq!(p.len(), 3);
        for i in 0..2 {
            assert!(t.edge(p[i], p[i + 1]));
        }
    }

    #[test]
    fn square_dp_finds_whole_transitive() {
        let t = Tournament::transitive(7).unwrap();
        let (len, p) = longest_square_masked(&t, &full_mask(7));
        assert_eq!(len, 7);
        assert_eq!(p, vec![0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn witness_paths_are_consistent() {
        for s in 0..10u64 {
            let t = Tournament::random(9, Seed(s)).unwrap();
            let (h, p) = max_hops_masked(&t, &full_mask(9));
            assert_eq!(p.len(), 9);
            let mut seen = vec![false; 9];
            for w in &p {
                assert!(!seen[*w]);
                seen[*w] = true;
            }
            let mut hops = 0;
            for i in 0..p.len() - 1 {
                assert!(t.edge(p[i], p[i + 1]));
            }
            for i in 0..p.len() - 2 {
                if t.edge(p[i], p[i + 2]) {
                    hops += 1;
                }
            }
            assert_eq!(hops, h);

            let (len, q) = longest_square_masked(&t, &full_mask(9));
            assert_eq!(q.len() as u64, len);
            for i in 0..q.len() - 1 {
                assert!(t.edge(q[i], q[i + 1]));
            }
            for i in 0..q.len().saturating_sub(2) {
                assert!(t.edge(q[i], q[i + 2]));
            }
        }
    }
}
