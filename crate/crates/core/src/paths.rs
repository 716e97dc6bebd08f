//! Directed paths and hop/shortcut analysis, plus the guaranteed hop-rich
//! Hamiltonian path construction.
//!
//! Along a directed path `v_1 v_2 ... v_m` of a tournament, a *shortcut* is
//! an edge `v_i -> v_j` with `j > i + 1`, and a *hop* is the special case
//! `j = i + 2`. [`hop_rich_path`] returns a Hamiltonian path carrying at
//! least `ceil((4n - 10) / 7)` hops for every tournament with `n >= 4`.

use std::collections::VecDeque;

use crate::bits;
use crate::dp;
use crate::error::PathError;
use crate::tournament::{Tournament, VertexSet};

/// An ordered sequence of distinct vertices of some host tournament.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPath {
    order: Vec<usize>,
}

impl VertexPath {
    pub fn new(order: Vec<usize>) -> VertexPath {
        VertexPath { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.order
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }

    /// Checks that this is a directed path of `t`: entries distinct and in
    /// range, every consecutive pair an edge.
    pub fn check_directed(&self, t: &Tournament) -> Result<(), PathError> {
        let mut seen = VertexSet::empty(t.n());
        for &v in &self.order {
            if v >= t.n() {
                return Err(PathError::OutOfRange { vertex: v, n: t.n() });
            }
            if seen.contains(v) {
                return Err(PathError::Duplicate { vertex: v });
            }
            seen.insert(v);
        }
        for (pos, w) in self.order.windows(2).enumerate() {
            if !t.edge(w[0], w[1]) {
                return Err(PathError::NotAnEdge { pos });
            }
        }
        Ok(())
    }
}

impl From<Vec<usize>> for VertexPath {
    fn from(order: Vec<usize>) -> Self {
        VertexPath::new(order)
    }
}

/// Number of hops of `p` in `t`: positions `i` with an edge
/// `p[i] -> p[i+2]`. Fails unless `p` is a directed path of `t`.
pub fn count_hops(t: &Tournament, p: &VertexPath) -> Result<u64, PathError> {
    p.check_directed(t)?;
    Ok(count_hops_unchecked(t, p.vertices()))
}

pub(crate) fn count_hops_unchecked(t: &Tournament, order: &[usize]) -> u64 {
    let mut hops = 0;
    for w in order.windows(3) {
        hops += t.edge(w[0], w[2]) as u64;
    }
    hops
}

/// Number of shortcuts of `p` in `t`: pairs `(i, j)` with `j > i + 1` and an
/// edge `p[i] -> p[j]`. Fails unless `p` is a directed path of `t`.
pub fn count_shortcuts(t: &Tournament, p: &VertexPath) -> Result<u64, PathError> {
    p.check_directed(t)?;
    Ok(count_shortcuts_unchecked(t, p.vertices()))
}

/// Bitset sweep: scanning positions right to left, `later` holds the
/// vertices at distance >= 2 ahead, so each position costs O(n / 64).
pub(crate) fn count_shortcuts_unchecked(t: &Tournament, order: &[usize]) -> u64 {
    if order.len() < 3 {
        return 0;
    }
    let mut later = vec![0u64; t.stride()];
    let mut total = 0u64;
    for s in (0..order.len() - 2).rev() {
        bits::set(&mut later, order[s + 2]);
        total += bits::and_count(t.out_row(order[s]), &later);
    }
    total
}

/// True iff every hop of the path is present, i.e. the path together with
/// its hops forms the square of a path. Paths on at most two vertices are
/// vacuously hop complete.
pub fn is_hop_complete(t: &Tournament, p: &VertexPath) -> Result<bool, PathError> {
    p.check_directed(t)?;
    Ok(is_hop_complete_unchecked(t, p.vertices()))
}

pub(crate) fn is_hop_complete_unchecked(t: &Tournament, order: &[usize]) -> bool {
    order.windows(3).all(|w| t.edge(w[0], w[2]))
}

/// Hamiltonian path by greedy insertion, vertices added in index order.
///
/// Each new vertex lands at the first position where both adjacent edges
/// agree: the front if it beats the head, otherwise the first gap
/// `p[i] -> v -> p[i+1]`, otherwise the back.
pub fn greedy_ham_path(t: &Tournament) -> VertexPath {
    let n = t.n();
    let mut path: VecDeque<usize> = VecDeque::with_capacity(n);
    path.push_back(0);
    for v in 1..n {
        if t.edge(v, path[0]) {
            path.push_front(v);
            continue;
        }
        let mut placed = false;
        for i in 0..path.len() - 1 {
            if t.edge(path[i], v) && t.edge(v, path[i + 1]) {
                path.insert(i + 1, v);
                placed = true;
                break;
            }
        }
        if !placed {
            path.push_back(v);
        }
    }
    VertexPath::new(path.into_iter().collect())
}

/// The guaranteed hop floor `ceil((4n - 10) / 7)` for `n >= 4`, zero below.
pub fn hop_floor(n: usize) -> u64 {
    if n < 4 {
        0
    } else {
        ((4 * n - 10) as u64).div_ceil(7)
    }
}

/// Hamiltonian directed path with at least [`hop_floor`]`(n)` hops.
///
/// Strategy, applied to ever-smaller vertex subsets:
/// * at most 10 vertices: exact optimum by dynamic programming;
/// * a dominated or dominating vertex is peeled off (one extra hop over the
///   rest), and a vertex of in- or out-degree 1 is peeled together with its
///   unique neighbor (one extra hop per two vertices);
/// * otherwise some vertex `v` with `n/4 - 1/2 <= d+(v) <= 3n/4 - 1/2`
///   exists; recursing on its in- and out-neighborhoods and concatenating
///   `P(in), v, P(out)` gains two hops across `v`.
///
/// Peeling can undershoot the floor in rare residue classes of `n`, so each
/// peeled layer is checked against its floor and falls back to the split
/// recursion when short; the split alone already sustains the bound.
pub fn hop_rich_path(t: &Tournament) -> VertexPath {
    let full = VertexSet::full(t.n());
    let order = hop_rich_masked(t, full.words());
    debug_assert_eq!(order.len(), t.n());
    VertexPath::new(order)
}

enum Peel {
    /// source peeled to the front
    Front(usize),
    /// sink peeled to the back
    Back(usize),
    /// out-degree-1 vertex and its unique out-neighbor, appended in order
    BackPair(usize, usize),
    /// in-degree-1 vertex and its unique in-neighbor, prepended as (u, v)
    FrontPair(usize, usize),
}

pub(crate) fn hop_rich_masked(t: &Tournament, mask: &[u64]) -> Vec<usize> {
    let mut cur = mask.to_vec();
    let mut m = bits::count(&cur) as usize;
    let mut peels: Vec<(Peel, usize)> = Vec::new();

    // peel boosters until the base case or a degree-window split
    let (mut path, mut hops): (VecDeque<usize>, u64) = loop {
        if m <= 10 {
            let (h, p) = dp::max_hops_masked(t, &cur);
            break (p.into(), h);
        }
        match find_booster(t, &cur, m) {
            Some(peel) => {
                match &peel {
                    Peel::Front(v) | Peel::Back(v) => {
                        bits::unset(&mut cur, *v);
                        m -= 1;
                    }
                    Peel::BackPair(v, w) | Peel::FrontPair(w, v) => {
                        bits::unset(&mut cur, *v);
                        bits::unset(&mut cur, *w);
                        m -= 2;
                    }
                }
                peels.push((peel, m));
            }
            None => {
                let p = split_window(t, &cur, m);
                let h = count_hops_unchecked(t, &p);
                break (p.into(), h);
            }
        }
    };

    // unwind the peels, re-checking the floor at every layer
    while let Some((peel, _inner)) = peels.pop() {
        match peel {
            Peel::Front(v) => {
                if path.len() >= 2 && t.edge(v, path[1]) {
                    hops += 1;
                }
                path.push_front(v);
            }
            Peel::Back(v) => {
                if path.len() >= 2 && t.edge(path[path.len() - 2], v) {
                    hops += 1;
                }
                path.push_back(v);
            }
            Peel::BackPair(v, w) => {
                if path.len() >= 2 && t.edge(path[path.len() - 2], v) {
                    hops += 1;
                }
                path.push_back(v);
                if t.edge(path[path.len() - 2], w) {
                    hops += 1;
                }
                path.push_back(w);
            }
            Peel::FrontPair(u, v) => {
                if path.len() >= 2 && t.edge(v, path[1]) {
                    hops += 1;
                }
                path.push_front(v);
                if t.edge(u, path[1]) {
                    hops += 1;
                }
                path.push_front(u);
            }
        }
        if hops < hop_floor(path.len()) {
            // booster fell short of the guarantee at this layer; redo the
            // layer with the window split, which cannot undershoot
            let mut layer = vec![0u64; t.stride()];
            for &v in &path {
                bits::set(&mut layer, v);
            }
            let alt = split_window(t, &layer, path.len());
            let alt_hops = count_hops_unchecked(t, &alt);
            if alt_hops > hops {
                path = alt.into();
                hops = alt_hops;
            }
        }
    }
    path.into()
}

/// Scans degrees within `cur` for a peelable vertex. Sources and sinks take
/// priority over degree-1 vertices.
fn find_booster(t: &Tournament, cur: &[u64], m: usize) -> Option<Peel> {
    let mut deg1_out = None;
    let mut deg1_in = None;
    for v in bits::ones(cur) {
        let d = t.out_degree_within(v, cur);
        match d {
            0 => return Some(Peel::Back(v)),
            _ if d == m - 1 => return Some(Peel::Front(v)),
            1 if deg1_out.is_none() => deg1_out = Some(v),
            _ if d == m - 2 && deg1_in.is_none() => deg1_in = Some(v),
            _ => {}
        }
    }
    if let Some(v) = deg1_out {
        let mut inter = vec![0u64; t.stride()];
        for (i, (&a, &b)) in t.out_row(v).iter().zip(cur).enumerate() {
            inter[i] = a & b;
        }
        let w = bits::first_one(&inter).expect("out-degree 1 vertex has an out-neighbor");
        return Some(Peel::BackPair(v, w));
    }
    if let Some(v) = deg1_in {
        let mut inn = vec![0u64; t.stride()];
        t.in_row_into(v, &mut inn);
        for (i, &b) in cur.iter().enumerate() {
            inn[i] &= b;
        }
        let u = bits::first_one(&inn).expect("in-degree 1 vertex has an in-neighbor");
        return Some(Peel::FrontPair(u, v));
    }
    None
}

/// Splits at a vertex whose out-degree lies in `[m/4 - 1/2, 3m/4 - 1/2]`
/// (such a vertex always exists), preferring the most balanced one, and
/// concatenates `P(in-neighborhood), v, P(out-neighborhood)`.
fn split_window(t: &Tournament, cur: &[u64], m: usize) -> Vec<usize> {
    let mut pivot = usize::MAX;
    let mut pivot_deg = 0usize;
    let mut best_dist = usize::MAX;
    let mut fallback = usize::MAX;
    let mut fallback_deg = 0usize;
    let mut fallback_dist = usize::MAX;
    for v in bits::ones(cur) {
        let d = t.out_degree_within(v, cur);
        let dist = (2 * d).abs_diff(m);
        // window: 4d + 2 >= m and 4d <= 3m - 2
        if 4 * d + 2 >= m && 4 * d <= 3 * m - 2 && dist < best_dist {
            best_dist = dist;
            pivot = v;
            pivot_deg = d;
        }
        if dist < fallback_dist {
            fallback_dist = dist;
            fallback = v;
            fallback_deg = d;
        }
    }
    if pivot == usize::MAX {
        debug_assert!(false, "degree window is never empty");
        pivot = fallback;
        pivot_deg = fallback_deg;
    }
    let stride = t.stride();
    let mut out_side = vec![0u64; stride];
    for (o, (&r, &c)) in out_side.iter_mut().zip(t.out_row(pivot).iter().zip(cur)) {
        *o = r & c;
    }
    let mut in_side = vec![0u64; stride];
    t.in_row_into(pivot, &mut in_side);
    for (i, &c) in in_side.iter_mut().zip(cur) {
        *i &= c;
    }
    debug_assert_eq!(bits::count(&out_side) as usize, pivot_deg);
    let mut path = if pivot_deg + 1 == m {
        Vec::new()
    } else {
        hop_rich_masked(t, &in_side)
    };
    path.push(pivot);
    if pivot_deg > 0 {
        path.extend(hop_rich_masked(t, &out_side));
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Seed;

    #[test]
    fn hop_count_examples() {
        let t4 = Tournament::transitive(4).unwrap();
        let p = VertexPath::new(vec![0, 1, 2, 3]);
        assert_eq!(count_hops(&t4, &p).unwrap(), 2);

        let c3 = Tournament::rn(3).unwrap();
        let p = VertexPath::new(vec![0, 1, 2]);
        assert_eq!(count_hops(&c3, &p).unwrap(), 0);
        assert_eq!(count_shortcuts(&c3, &p).unwrap(), 0);
        assert!(!is_hop_complete(&c3, &p).unwrap());

        let t5 = Tournament::transitive(5).unwrap();
        let p = VertexPath::new(vec![0, 1, 2, 3, 4]);
        assert_eq!(count_shortcuts(&t5, &p).unwrap(), 6);
        assert!(is_hop_complete(&t5, &p).unwrap());

        // single vertex is vacuously hop complete
        let t1 = Tournament::transitive(1).unwrap();
        assert!(is_hop_complete(&t1, &VertexPath::new(vec![0])).unwrap());
    }

    #[test]
    fn directed_path_errors_are_distinct() {
        let t = Tournament::transitive(4).unwrap();
        let bad = VertexPath::new(vec![0, 9]);
        assert_eq!(bad.check_directed(&t), Err(PathError::OutOfRange { vertex: 9, n: 4 }));
        let dup = VertexPath::new(vec![0, 1, 0]);
        assert_eq!(dup.check_directed(&t), Err(PathError::Duplicate { vertex: 0 }));
        let rev = VertexPath::new(vec![2, 1]);
        assert_eq!(rev.check_directed(&t), Err(PathError::NotAnEdge { pos: 0 }));
    }

    #[test]
    fn shortcut_sweep_matches_pair_scan() {
        for s in 0..20u64 {
            let t = Tournament::random(40, Seed(s)).unwrap();
            let p = greedy_ham_path(&t);
            p.check_directed(&t).unwrap();
            let order = p.vertices();
            let mut slow = 0u64;
            for i in 0..order.len() {
                for j in i + 2..order.len() {
                    slow += t.edge(order[i], order[j]) as u64;
                }
            }
            assert_eq!(count_shortcuts(&t, &p).unwrap(), slow);
            assert!(count_shortcuts(&t, &p).unwrap() >= count_hops(&t, &p).unwrap());
        }
    }

    #[test]
    fn greedy_on_transitive_is_sorted() {
        let t = Tournament::transitive(9).unwrap();
        assert_eq!(greedy_ham_path(&t).vertices(), &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn greedy_on_triangle_is_a_rotation() {
        let c3 = Tournament::rn(3).unwrap();
        let p = greedy_ham_path(&c3);
        p.check_directed(&c3).unwrap();
        assert!(
            [vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]].contains(&p.vertices().to_vec()),
            "got {:?}",
            p
        );
    }

    #[test]
    fn hop_floor_values() {
        assert_eq!(hop_floor(3), 0);
        assert_eq!(hop_floor(4), 1);
        assert_eq!(hop_floor(8), 4);
        assert_eq!(hop_floor(14), 7);
        assert_eq!(hop_floor(2000), 1142);
    }

    #[test]
    fn hop_rich_meets_floor_on_random() {
        for n in [1usize, 2, 3, 4, 5, 7, 11, 13, 15, 22, 29, 36, 50] {
            for s in 0..8u64 {
                let t = Tournament::random(n, Seed(s)).unwrap();
                let p = hop_rich_path(&t);
                p.check_directed(&t).unwrap();
                assert_eq!(p.len(), n);
                let h = count_hops(&t, &p).unwrap();
                assert!(h >= hop_floor(n), "n={n} s={s}: {h} < {}", hop_floor(n));
            }
        }
    }

    #[test]
    fn hop_rich_on_rn_is_extremal() {
        // every Hamiltonian path of R_n has exactly ceil((2n-6)/3) hops
        for n in [6usize, 9, 12, 30, 60, 61, 62] {
            let t = Tournament::rn(n).unwrap();
            let p = hop_rich_path(&t);
            p.check_directed(&t).unwrap();
            let h = count_hops(&t, &p).unwrap();
            assert_eq!(h, ((2 * n - 6) as u64).div_ceil(3), "n={n}");
            assert!(h >= hop_floor(n));
        }
    }

    #[test]
    fn hop_rich_exact_on_small() {
        let r9 = Tournament::rn(9).unwrap();
        assert_eq!(count_hops(&r9, &hop_rich_path(&r9)).unwrap(), 4);
        let r6 = Tournament::rn(6).unwrap();
        assert_eq!(count_hops(&r6, &hop_rich_path(&r6)).unwrap(), 2);
        // paley 7 admits a fully hop-complete Hamiltonian path (0,1,...,6)
        let p7 = Tournament::paley(7).unwrap();
        let h = count_hops(&p7, &hop_rich_path(&p7)).unwrap();
        assert!(h >= 3);
        assert_eq!(h, 5);
    }

    #[test]
    fn hop_rich_random14_reaches_seven() {
        for s in 0..30u64 {
            let t = Tournament::random(14, Seed(s)).unwrap();
            let h = count_hops(&t, &hop_rich_path(&t)).unwrap();
            assert!(h >= 7, "seed {s}: {h}");
        }
    }
}
