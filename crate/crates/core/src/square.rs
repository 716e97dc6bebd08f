//! Pairwise common neighborhoods and the hop-complete path construction.
//!
//! For distinct vertices `u, v`, `N+(u,v)` is the set of common
//! out-neighbors and `N-(u,v)` the common in-neighbors. The statistic
//! `delta2 = max over pairs of min(|N+(u,v)|, |N-(u,v)|)` is at least
//! `n (3 - sqrt 5) / 8 - 4` in every tournament, which drives a recursion
//! producing hop-complete paths of length at least `n^0.295`.

use crate::bits;
use crate::error::PairError;
use crate::paths::VertexPath;
use crate::tournament::{Tournament, VertexSet};

/// Common-neighborhood statistics of one vertex pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStat {
    pub u: usize,
    pub v: usize,
    /// `|N+(u, v)|`
    pub common_out: u64,
    /// `|N-(u, v)|`
    pub common_in: u64,
    /// `min(common_out, common_in)`
    pub score: u64,
}

/// `(N-(u,v), N+(u,v))`: common in-neighbors and common out-neighbors.
/// The two sets are disjoint and exclude `u` and `v` themselves.
pub fn pair_neighborhoods(t: &Tournament, u: usize, v: usize) -> Result<(VertexSet, VertexSet), PairError> {
    if u == v {
        return Err(PairError::SameVertex);
    }
    for x in [u, v] {
        if x >= t.n() {
            return Err(PairError::OutOfRange { vertex: x, n: t.n() });
        }
    }
    let stride = t.stride();
    let mut out = vec![0u64; stride];
    for (o, (&a, &b)) in out.iter_mut().zip(t.out_row(u).iter().zip(t.out_row(v))) {
        *o = a & b;
    }
    let mut inn = vec![0u64; stride];
    let mut inn_v = vec![0u64; stride];
    t.in_row_into(u, &mut inn);
    t.in_row_into(v, &mut inn_v);
    for (a, &b) in inn.iter_mut().zip(&inn_v) {
        *a &= b;
    }
    Ok((VertexSet::from_words(t.n(), inn), VertexSet::from_words(t.n(), out)))
}

/// The score every tournament is guaranteed to reach:
/// `n (3 - sqrt 5) / 8 - 4`.
pub fn delta2_floor(n: usize) -> f64 {
    n as f64 * ((3.0 - 5.0f64.sqrt()) / 8.0) - 4.0
}

/// Exact `delta2` by full pair scan, O(n^3 / 64).
/// Returns the lexicographically least maximizing pair.
pub fn delta2(t: &Tournament) -> Result<PairStat, PairError> {
    if t.n() < 2 {
        return Err(PairError::TooSmall);
    }
    let full = VertexSet::full(t.n());
    Ok(delta2_masked_exact(t, full.words()))
}

/// First pair meeting the guaranteed floor, scanning balanced-degree
/// vertices first. Exact maximization is skipped, so large instances stay
/// cheap; output is still deterministic. Falls back to the full scan if no
/// pair meets the floor (which cannot happen, but keeps the contract total).
pub fn delta2_first_meeting(t: &Tournament) -> Result<PairStat, PairError> {
    if t.n() < 2 {
        return Err(PairError::TooSmall);
    }
    let full = VertexSet::full(t.n());
    Ok(delta2_masked_first(t, full.words()))
}

pub(crate) fn delta2_masked_exact(t: &Tournament, mask: &[u64]) -> PairStat {
    let verts: Vec<usize> = bits::ones(mask).collect();
    debug_assert!(verts.len() >= 2);
    let stride = t.stride();
    let mut in_u = vec![0u64; stride];
    let mut in_v = vec![0u64; stride];
    let mut best = PairStat { u: verts[0], v: verts[1], common_out: 0, common_in: 0, score: 0 };
    let mut have = false;
    for (a, &u) in verts.iter().enumerate() {
        t.in_row_into(u, &mut in_u);
        for &v in &verts[a + 1..] {
            let co = bits::and_count3(t.out_row(u), t.out_row(v), mask);
            t.in_row_into(v, &mut in_v);
            let mut ci = 0u64;
            for i in 0..stride {
                ci += (in_u[i] & in_v[i] & mask[i]).count_ones() as u64;
            }
            let score = co.min(ci);
            if !have || score > best.score {
                have = true;
                best = PairStat { u, v, common_out: co, common_in: ci, score };
            }
        }
    }
    best
}

/// Pairs are visited in order of combined degree balance, so well-split
/// pairs come first and the floor is typically met within a few probes.
pub(crate) fn delta2_masked_first(t: &Tournament, mask: &[u64]) -> PairStat {
    let m = bits::count(mask) as usize;
    let floor = crate::trees::ceil_eps(delta2_floor(m)).max(0) as u64;
    let mut verts: Vec<usize> = bits::ones(mask).collect();
    verts.sort_by_key(|&v| ((2 * t.out_degree_within(v, mask)).abs_diff(m), v));
    let stride = t.stride();
    let mut in_u = vec![0u64; stride];
    let mut in_v = vec![0u64; stride];
    for b in 1..verts.len() {
        for a in 0..b {
            let (u, v) = (verts[a], verts[b]);
            let co = bits::and_count3(t.out_row(u), t.out_row(v), mask);
            if co < floor {
                continue;
            }
            t.in_row_into(u, &mut in_u);
            t.in_row_into(v, &mut in_v);
            let mut ci = 0u64;
            for i in 0..stride {
                ci += (in_u[i] & in_v[i] & mask[i]).count_ones() as u64;
            }
            let score = co.min(ci);
            if score >= floor {
                let (u, v) = if u < v { (u, v) } else { (v, u) };
                return PairStat { u, v, common_out: co, common_in: ci, score };
            }
        }
    }
    delta2_masked_exact(t, mask)
}

/// Length floor for [`square_path`]: `ceil(n^0.295)`.
pub fn square_floor(n: usize) -> u64 {
    crate::trees::ceil_eps((n as f64).powf(0.295)).max(1) as u64
}

/// Above this size the pair search uses the first-meeting mode.
const EXACT_PAIR_LIMIT: usize = 2000;
/// Below this size a transitive sub-tournament already beats `n^0.295`.
const RECURSE_MIN: usize = 64;

/// A hop-complete directed path on at least `ceil(n^0.295)` vertices.
///
/// Recursion: pick a pair `(u, v)` with both common neighborhoods large
/// (exact `delta2` up to 2000 vertices, first-meeting mode above), orient it
/// as an edge `u -> v`, and return `P(N-(u,v)), u, v, P(N+(u,v))`. All hops
/// across the junction exist because every left vertex beats both `u` and
/// `v` and both beat every right vertex. Every level also computes the
/// greedy transitive order and keeps whichever certificate is longer;
/// below 64 vertices only the transitive order is used.
pub fn square_path(t: &Tournament) -> VertexPath {
    let full = VertexSet::full(t.n());
    VertexPath::new(square_masked(t, full.words()))
}

fn square_masked(t: &Tournament, mask: &[u64]) -> Vec<usize> {
    let m = bits::count(mask) as usize;
    if m == 0 {
        return Vec::new();
    }
    if m < RECURSE_MIN {
        return t.stearns_masked(mask);
    }
    let pair = if m <= EXACT_PAIR_LIMIT {
        delta2_masked_exact(t, mask)
    } else {
        delta2_masked_first(t, mask)
    };
    // orient the pair as an edge
    let (u, v) = if t.edge(pair.u, pair.v) { (pair.u, pair.v) } else { (pair.v, pair.u) };
    let stride = t.stride();
    let mut right = vec![0u64; stride];
    for (o, ((&a, &b), &c)) in right.iter_mut().zip(t.out_row(u).iter().zip(t.out_row(v)).zip(mask)) {
        *o = a & b & c;
    }
    let mut left = vec![0u64; stride];
    let mut in_v = vec![0u64; stride];
    t.in_row_into(u, &mut left);
    t.in_row_into(v, &mut in_v);
    for ((a, &b), &c) in left.iter_mut().zip(&in_v).zip(mask) {
        *a &= b & c;
    }
    let mut cand = square_masked(t, &left);
    cand.push(u);
    cand.push(v);
    cand.extend(square_masked(t, &right));
    let trans = t.stearns_masked(mask);
    if trans.len() > cand.len() {
        trans
    } else {
        cand
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::is_hop_complete;
    use crate::tournament::Seed;

    #[test]
    fn pair_neighborhoods_examples() {
        let t = Tournament::transitive(6).unwrap();
        let (inn, out) = pair_neighborhoods(&t, 1, 4).unwrap();
        assert_eq!(inn.iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(out.iter().collect::<Vec<_>>(), vec![5]);

        let c3 = Tournament::rn(3).unwrap();
        let (inn, out) = pair_neighborhoods(&c3, 0, 1).unwrap();
        assert!(inn.is_empty() && out.is_empty());

        assert_eq!(pair_neighborhoods(&t, 2, 2), Err(PairError::SameVertex));
    }

    #[test]
    fn four_classes_partition_the_rest() {
        let t = Tournament::random(40, Seed(11)).unwrap();
        for (u, v) in [(0usize, 1usize), (3, 17), (20, 39)] {
            let (inn, out) = pair_neighborhoods(&t, u, v).unwrap();
            let mut mixed = 0;
            for w in 0..40 {
                if w == u || w == v {
                    continue;
                }
                if t.edge(u, w) != t.edge(v, w) {
                    mixed += 1;
                }
            }
            assert_eq!(inn.len() + out.len() + mixed, 38);
        }
    }

    #[test]
    fn delta2_examples() {
        let c3 = Tournament::rn(3).unwrap();
        assert_eq!(delta2(&c3).unwrap().score, 0);

        let t5 = Tournament::transitive(5).unwrap();
        let s = delta2(&t5).unwrap();
        assert_eq!(s.score, 1);
        assert_eq!((s.u, s.v), (1, 2)); // lexicographically least maximizer

        for s in 0..5u64 {
            let t = Tournament::random(100, Seed(s)).unwrap();
            let d = delta2(&t).unwrap();
            assert!(d.score >= 6, "floor ceil(100*(3-sqrt5)/8 - 4) = 6, got {}", d.score);
        }
    }

    #[test]
    fn first_meeting_matches_floor_and_stays_fast() {
        for s in 0..5u64 {
            let t = Tournament::random(300, Seed(s)).unwrap();
            let fast = delta2_first_meeting(&t).unwrap();
            let floor = crate::trees::ceil_eps(delta2_floor(300)).max(0) as u64;
            assert!(fast.score >= floor);
            let exact = delta2(&t).unwrap();
            assert!(exact.score >= fast.score);
        }
    }

    #[test]
    fn square_path_on_families() {
        let t8 = Tournament::transitive(8).unwrap();
        let p = square_path(&t8);
        assert_eq!(p.len(), 8);

        for (n, seed) in [(1usize, 0u64), (2, 0), (63, 1), (64, 1), (100, 2), (1000, 3)] {
            let t = Tournament::random(n, Seed(seed)).unwrap();
            let p = square_path(&t);
            p.check_directed(&t).unwrap();
            assert!(is_hop_complete(&t, &p).unwrap());
            assert!(
                p.len() as u64 >= square_floor(n),
                "n={n}: len {} < floor {}",
                p.len(),
                square_floor(n)
            );
        }
    }

    #[test]
    fn square_path_on_rnk_respects_block_cap() {
        // in R(n,2) any hop-complete path takes at most 2 vertices per block
        let t = Tournament::rnk(12, 2, Seed(0)).unwrap();
        let p = square_path(&t);
        p.check_directed(&t).unwrap();
        assert!(is_hop_complete(&t, &p).unwrap());
        assert!(p.len() <= 8);
        assert!(p.len() as u64 >= square_floor(12));
    }

    #[test]
    fn square_floor_values() {
        assert_eq!(square_floor(3), 2);
        assert_eq!(square_floor(100), 4);
        assert_eq!(square_floor(1000), 8);
        assert_eq!(square_floor(10_000), 16);
        assert_eq!(square_floor(100_000), 30);
    }
}
