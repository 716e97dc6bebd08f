//! Exact oracles for small tournaments.
//!
//! Everything here is exponential-time ground truth used to pin down the
//! polynomial algorithms: maximum hops / shortcuts over Hamiltonian paths,
//! longest hop-complete path, best shortcut tree, maximum acyclic subgraph
//! (beta), largest transitive sub-tournament, and the exhaustive census
//! over all labeled tournaments at n <= 6.
//!
//! Each oracle carries a default size cap tuned to finish within about a
//! minute; passing an explicit cap overrides it, up to a hard limit where
//! the state space stops fitting in memory.

use std::collections::HashMap;

use crate::bits;
use crate::dp;
use crate::error::OracleError;
use crate::paths::VertexPath;
use crate::trees::ShortcutTree;
use crate::tournament::{Tournament, VertexSet};

/// Default size caps for the exact oracles.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub hops: usize,
    pub shortcuts: usize,
    pub square: usize,
    pub tree: usize,
    pub beta: usize,
    pub transitive: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { hops: 10, shortcuts: 9, square: 12, tree: 12, beta: 9, transitive: 24 }
    }
}

/// Hard ceiling for the subset-indexed oracles.
pub const HARD_LIMIT: usize = 24;

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > HARD_LIMIT {
        return Err(OracleError::HardLimit { n, limit: HARD_LIMIT });
    }
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    Ok(())
}

/// An exact value together with one witness path.
#[derive(Clone, Debug)]
pub struct PathWitness {
    pub value: u64,
    pub witness: VertexPath,
}

/// Maximum hop count over all Hamiltonian paths, with an optimal path.
pub fn max_hops_exact(t: &Tournament) -> Result<PathWitness, OracleError> {
    max_hops_exact_capped(t, Caps::default().hops)
}

pub fn max_hops_exact_capped(t: &Tournament, cap: usize) -> Result<PathWitness, OracleError> {
    check_cap(t.n(), cap.min(20))?;
    let full = VertexSet::full(t.n());
    let (value, order) = dp::max_hops_masked(t, full.words());
    Ok(PathWitness { value, witness: VertexPath::new(order) })
}

/// Maximum shortcut count over all Hamiltonian paths.
///
/// Unlike hops, the gain of appending a vertex depends on the whole prefix,
/// so this is a depth-first search over prefixes with an optimistic bound
/// (`every remaining pair could be a shortcut`) for pruning.
pub fn max_shortcuts_exact(t: &Tournament) -> Result<PathWitness, OracleError> {
    max_shortcuts_exact_capped(t, Caps::default().shortcuts)
}

pub fn max_shortcuts_exact_capped(t: &Tournament, cap: usize) -> Result<PathWitness, OracleError> {
    let n = t.n();
    check_cap(n, cap.min(16))?;
    if n == 1 {
        return Ok(PathWitness { value: 0, witness: VertexPath::new(vec![0]) });
    }
    struct Dfs<'a> {
        t: &'a Tournament,
        n: usize,
        best: u64,
        best_path: Vec<usize>,
        path: Vec<usize>,
        prefix: Vec<u64>,
        in_row: Vec<Vec<u64>>,
    }
    impl Dfs<'_> {
        fn optimistic(&self, len: usize, current: u64) -> u64 {
            // remaining k vertices: the j-th one appended at position len+j-1
            // can add at most len+j-2 shortcuts
            let k = (self.n - len) as u64;
            let l = len as u64;
            current + k * (l - 1) + k * (k - 1) / 2
        }
        fn go(&mut self, current: u64) {
            let len = self.path.len();
            if len == self.n {
                if current > self.best || self.best_path.is_empty() {
                    self.best = current;
                    self.best_path = self.path.clone();
                }
                return;
            }
            if !self.best_path.is_empty() && self.optimistic(len, current) <= self.best {
                return;
            }
            let last = self.path[len - 1];
            for w in 0..self.n {
                if bits::get(&self.prefix, w) || !self.t.edge(last, w) {
                    continue;
                }
                // prefix members pointing at w, minus the path edge from `last`
                let gain = bits::and_count(&self.prefix, &self.in_row[w]) - 1;
                bits::set(&mut self.prefix, w);
                self.path.push(w);
                self.go(current + gain);
                self.path.pop();
                bits::unset(&mut self.prefix, w);
            }
        }
    }
    let stride = t.stride();
    let mut in_row = Vec::with_capacity(n);
    for v in 0..n {
        let mut r = vec![0u64; stride];
        t.in_row_into(v, &mut r);
        in_row.push(r);
    }
    let mut dfs = Dfs {
        t,
        n,
        best: 0,
        best_path: Vec::new(),
        path: Vec::new(),
        prefix: vec![0u64; stride],
        in_row,
    };
    for start in 0..n {
        bits::set(&mut dfs.prefix, start);
        dfs.path.push(start);
        dfs.go(0);
        dfs.path.pop();
        bits::unset(&mut dfs.prefix, start);
    }
    debug_assert_eq!(dfs.best_path.len(), n);
    Ok(PathWitness { value: dfs.best, witness: VertexPath::new(dfs.best_path) })
}

/// Longest hop-complete path, exact.
pub fn longest_square_exact(t: &Tournament) -> Result<PathWitness, OracleError> {
    longest_square_exact_capped(t, Caps::default().square)
}

pub fn longest_square_exact_capped(t: &Tournament, cap: usize) -> Result<PathWitness, OracleError> {
    check_cap(t.n(), cap.min(20))?;
    let full = VertexSet::full(t.n());
    let (value, order) = dp::longest_square_masked(t, full.words());
    Ok(PathWitness { value, witness: VertexPath::new(order) })
}

/// An exact tree value together with one optimal tree.
#[derive(Clone, Debug)]
pub struct TreeWitness {
    pub value: u64,
    pub witness: ShortcutTree,
}

/// Maximum shortcut count over all spanning shortcut trees.
///
/// Given the root, the vertex sets of the two subtrees are forced (the in-
/// and out-neighborhood), and the cross contributions (`|L| - 1` edges into
/// the root, `|R| - 1` out of it, every L -> R edge) do not depend on the
/// subtree shapes. Optima therefore combine across subsets and a memoized
/// subset recursion is exact; the identity is re-checked against a literal
/// enumeration of all trees in the test suite.
pub fn best_tree_exact(t: &Tournament) -> Result<TreeWitness, OracleError> {
    best_tree_exact_capped(t, Caps::default().tree)
}

pub fn best_tree_exact_capped(t: &Tournament, cap: usize) -> Result<TreeWitness, OracleError> {
    let n = t.n();
    check_cap(n, cap.min(HARD_LIMIT))?;
    // dense local adjacency as u32 masks
    let rows: Vec<u32> = (0..n)
        .map(|v| {
            let mut r = 0u32;
            for w in 0..n {
                if t.edge(v, w) {
                    r |= 1 << w;
                }
            }
            r
        })
        .collect();
    let mut memo: HashMap<u32, i64> = HashMap::new();
    let best = best_tree_rec(&rows, ((1u64 << n) - 1) as u32, &mut memo);
    // rebuild one optimal tree from the memo table
    let mut left = vec![None; n];
    let mut right = vec![None; n];
    let root = rebuild_tree(&rows, ((1u64 << n) - 1) as u32, &memo, &mut left, &mut right);
    Ok(TreeWitness { value: best as u64, witness: ShortcutTree::from_parts(root, left, right) })
}

fn tree_cross(rows: &[u32], s: u32, v: usize) -> (u32, u32, i64) {
    let l = s & !rows[v] & !(1 << v);
    let r = s & rows[v];
    let mut cross = 0i64;
    let mut rest = l;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        cross += (rows[u] & r).count_ones() as i64;
    }
    let lc = l.count_ones() as i64;
    let rc = r.count_ones() as i64;
    (l, r, cross + (lc - 1).max(0) + (rc - 1).max(0))
}

fn best_tree_rec(rows: &[u32], s: u32, memo: &mut HashMap<u32, i64>) -> i64 {
    if s.count_ones() <= 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&s) {
        return v;
    }
    let mut best = i64::MIN;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (l, r, cross) = tree_cross(rows, s, v);
        let val = cross + best_tree_rec(rows, l, memo) + best_tree_rec(rows, r, memo);
        if val > best {
            best = val;
        }
    }
    memo.insert(s, best);
    best
}

fn rebuild_tree(
    rows: &[u32],
    s: u32,
    memo: &HashMap<u32, i64>,
    left: &mut [Option<usize>],
    right: &mut [Option<usize>],
) -> usize {
    let target = if s.count_ones() <= 1 { 0 } else { memo[&s] };
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if s.count_ones() == 1 {
            return v;
        }
        let (l, r, cross) = tree_cross(rows, s, v);
        let lv = if l.count_ones() <= 1 { 0 } else { memo[&l] };
        let rv = if r.count_ones() <= 1 { 0 } else { memo[&r] };
        if cross + lv + rv == target {
            if l != 0 {
                left[v] = Some(rebuild_tree(rows, l, memo, left, right));
            }
            if r != 0 {
                right[v] = Some(rebuild_tree(rows, r, memo, left, right));
            }
            return v;
        }
    }
    unreachable!("memo table inconsistent");
}

/// An exact ordering value together with the maximizing order.
#[derive(Clone, Debug)]
pub struct OrderWitness {
    pub value: u64,
    pub order: Vec<usize>,
}

/// Maximum number of forward edges over all vertex orderings; equivalently
/// the maximum acyclic subgraph size (beta). Subset DP: the first vertex of
/// an ordering of `S` contributes its out-degree within `S`.
pub fn beta_exact(t: &Tournament) -> Result<OrderWitness, OracleError> {
    beta_exact_capped(t, Caps::default().beta)
}

pub fn beta_exact_capped(t: &Tournament, cap: usize) -> Result<OrderWitness, OracleError> {
    let n = t.n();
    check_cap(n, cap.min(22))?;
    let rows: Vec<u32> = (0..n)
        .map(|v| {
            let mut r = 0u32;
            for w in 0..n {
                if t.edge(v, w) {
                    r |= 1 << w;
                }
            }
            r
        })
        .collect();
    let full = ((1u64 << n) - 1) as u32;
    let mut dp = vec![0i32; full as usize + 1];
    for s in 1..=full {
        let mut best = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let val = dp[(s & !(1u32 << v)) as usize] + (rows[v] & s).count_ones() as i32;
            if val > best {
                best = val;
            }
        }
        dp[s as usize] = best;
    }
    // reconstruct the order front to back
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if dp[(s & !(1u32 << v)) as usize] + (rows[v] & s).count_ones() as i32 == dp[s as usize] {
                order.push(v);
                s &= !(1u32 << v);
                break;
            }
        }
    }
    Ok(OrderWitness { value: dp[full as usize] as u64, order })
}

/// Middle count by direct triple enumeration, the independent check for the
/// degree formula. O(n^2) for one vertex.
pub fn middle_count_brute(t: &Tournament, v: usize) -> u64 {
    let n = t.n();
    let mut count = 0;
    for u in 0..n {
        if u == v || !t.edge(u, v) {
            continue;
        }
        for w in 0..n {
            if w != u && w != v && t.edge(v, w) && t.edge(u, w) {
                count += 1;
            }
        }
    }
    count
}

/// All middle counts by brute force; guarded because it is O(n^3).
pub fn middle_counts_brute(t: &Tournament) -> Vec<u64> {
    assert!(t.n() <= 200, "O(n^3) brute force guarded at n <= 200");
    (0..t.n()).map(|v| middle_count_brute(t, v)).collect()
}

/// A maximum-size transitive witness: the chain from source to sink.
#[derive(Clone, Debug)]
pub struct ChainWitness {
    pub size: usize,
    pub chain: Vec<usize>,
}

/// Size of the largest transitive sub-tournament, by branch and bound over
/// source-to-sink chains (candidates = common out-neighbors of the chain).
pub fn max_transitive_exact(t: &Tournament) -> Result<ChainWitness, OracleError> {
    max_transitive_exact_capped(t, Caps::default().transitive)
}

pub fn max_transitive_exact_capped(t: &Tournament, cap: usize) -> Result<ChainWitness, OracleError> {
    let n = t.n();
    if n > cap {
        if n > 40 {
            return Err(OracleError::HardLimit { n, limit: 40 });
        }
        return Err(OracleError::CapExceeded { n, cap });
    }
    struct Bb<'a> {
        t: &'a Tournament,
        best: Vec<usize>,
        chain: Vec<usize>,
    }
    impl Bb<'_> {
        fn go(&mut self, cand: &[u64]) {
            if self.chain.len() > self.best.len() {
                self.best = self.chain.clone();
            }
            let left = bits::count(cand) as usize;
            if self.chain.len() + left <= self.best.len() {
                return;
            }
            let stride = cand.len();
            let mut next = vec![0u64; stride];
            for w in bits::ones(cand) {
                for (nx, (&c, &r)) in next.iter_mut().zip(cand.iter().zip(self.t.out_row(w))) {
                    *nx = c & r;
                }
                // candidates after w must also come after it in vertex scan
                // order is irrelevant: every transitive set is enumerated by
                // its unique source-to-sink chain
                self.chain.push(w);
                self.go(&next);
                self.chain.pop();
            }
        }
    }
    let mut bb = Bb { t, best: Vec::new(), chain: Vec::new() };
    let full = VertexSet::full(n);
    bb.go(full.words());
    Ok(ChainWitness { size: bb.best.len(), chain: bb.best })
}

/// True iff some `k` vertices induce a transitive sub-tournament.
pub fn has_transitive_k(t: &Tournament, k: usize) -> bool {
    find_transitive_k(t, k).is_some()
}

/// Finds a transitive sub-tournament on `k` vertices (source-to-sink order)
/// if one exists; early-exit depth-first search.
pub fn find_transitive_k(t: &Tournament, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if k > t.n() {
        return None;
    }
    fn go(t: &Tournament, cand: &[u64], chain: &mut Vec<usize>, k: usize) -> bool {
        if chain.len() == k {
            return true;
        }
        if chain.len() + (bits::count(cand) as usize) < k {
            return false;
        }
        let stride = cand.len();
        let mut next = vec![0u64; stride];
        for w in bits::ones(cand) {
            for (nx, (&c, &r)) in next.iter_mut().zip(cand.iter().zip(t.out_row(w))) {
                *nx = c & r;
            }
            chain.push(w);
            if go(t, &next, chain, k) {
                return true;
            }
            chain.pop();
        }
        false
    }
    let mut chain = Vec::new();
    let full = VertexSet::full(t.n());
    if go(t, full.words(), &mut chain, k) {
        Some(chain)
    } else {
        None
    }
}

/// True iff `order` is the k-th power of a path in `t`: every pair at
/// distance at most `k` along the sequence is a forward edge.
pub fn is_kth_power(t: &Tournament, order: &[usize], k: usize) -> bool {
    for i in 0..order.len() {
        for j in i + 1..=(i + k).min(order.len() - 1) {
            if !t.edge(order[i], order[j]) {
                return false;
            }
        }
    }
    true
}

// ----------------------------------------------------------------------
// Exhaustive census over all labeled tournaments
// ----------------------------------------------------------------------

/// Result of scanning every labeled tournament on `n` vertices.
#[derive(Clone, Debug)]
pub struct HopCensus {
    pub n: usize,
    /// Minimum over all tournaments of the maximum hop count.
    pub min_max_hops: u64,
    /// How many labeled tournaments attain the minimum.
    pub minimizer_count: u64,
    /// Whether every minimizer is isomorphic to `R_n` (checked for n = 3, 6
    /// where that uniqueness holds; `None` otherwise).
    pub minimizers_all_rn: Option<bool>,
}

/// Iterates all `2^C(n,2)` labeled tournaments on `n` vertices and records
/// the extremal hop statistics. The upper-triangle orientation mask runs in
/// lexicographic pair order `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn hop_census(n: usize) -> Result<HopCensus, OracleError> {
    if n > 6 {
        return Err(OracleError::CapExceeded { n, cap: 6 });
    }
    Ok(hop_census_forced(n))
}

/// Census without the size guard; n = 7 takes a few minutes.
pub fn hop_census_forced(n: usize) -> HopCensus {
    assert!((2..=7).contains(&n));
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let full = VertexSet::full(n);
    let mut min_max = u64::MAX;
    let mut minimizers: Vec<u64> = Vec::new();
    for mask in 0u64..1u64 << pairs.len() {
        let t = tournament_from_mask(n, &pairs, mask);
        let (h, _) = dp::max_hops_masked(&t, full.words());
        if h < min_max {
            min_max = h;
            minimizers.clear();
            minimizers.push(mask);
        } else if h == min_max {
            minimizers.push(mask);
        }
    }
    let minimizers_all_rn = if n == 3 || n == 6 {
        let rn = Tournament::rn(n).unwrap();
        Some(
            minimizers
                .iter()
                .all(|&mask| is_isomorphic(&tournament_from_mask(n, &pairs, mask), &rn)),
        )
    } else {
        None
    };
    HopCensus { n, min_max_hops: min_max, minimizer_count: minimizers.len() as u64, minimizers_all_rn }
}

pub(crate) fn tournament_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Tournament {
    let mut cells = vec![vec![false; n]; n];
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if mask >> b & 1 == 1 {
            cells[i][j] = true;
        } else {
            cells[j][i] = true;
        }
    }
    Tournament::from_bool_matrix(n, |i, j| cells[i][j])
}

/// Brute-force isomorphism test, feasible up to n = 6 or so.
pub fn is_isomorphic(a: &Tournament, b: &Tournament) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let n = a.n();
    // prune with the out-degree multiset before trying permutations
    let mut da: Vec<usize> = (0..n).map(|v| a.out_degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.out_degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    fn extend(a: &Tournament, b: &Tournament, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == a.n() {
            return true;
        }
        'cand: for w in 0..a.n() {
            if used[w] || a.out_degree(v) != b.out_degree(w) {
                continue;
            }
            for (u, &mu) in map.iter().enumerate() {
                if a.edge(u, v) != b.edge(mu, w) {
                    continue 'cand;
                }
            }
            used[w] = true;
            map.push(w);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    extend(a, b, &mut Vec::new(), &mut vec![false; n])
}

// ----------------------------------------------------------------------
// Whole-instance report
// ----------------------------------------------------------------------

/// All exact statistics of one small tournament, with witnesses.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub n: usize,
    pub max_hops: u64,
    pub max_shortcuts: u64,
    pub longest_square: u64,
    pub best_tree_shortcuts: u64,
    pub beta: u64,
    pub hops_witness: VertexPath,
    pub shortcuts_witness: VertexPath,
    pub square_witness: VertexPath,
    pub tree_witness: ShortcutTree,
    pub beta_order: Vec<usize>,
}

impl OracleReport {
    /// Runs every exact oracle with the given caps.
    pub fn compute(t: &Tournament, caps: &Caps) -> Result<OracleReport, OracleError> {
        let hops = max_hops_exact_capped(t, caps.hops)?;
        let shortcuts = max_shortcuts_exact_capped(t, caps.shortcuts)?;
        let square = longest_square_exact_capped(t, caps.square)?;
        let tree = best_tree_exact_capped(t, caps.tree)?;
        let beta = beta_exact_capped(t, caps.beta)?;
        let report = OracleReport {
            n: t.n(),
            max_hops: hops.value,
            max_shortcuts: shortcuts.value,
            longest_square: square.value,
            best_tree_shortcuts: tree.value,
            beta: beta.value,
            hops_witness: hops.witness,
            shortcuts_witness: shortcuts.witness,
            square_witness: square.witness,
            tree_witness: tree.witness,
            beta_order: beta.order,
        };
        debug_assert_eq!(report.max_shortcuts, report.beta - (report.n as u64 - 1));
        Ok(report)
    }

    /// One-line TSV: `n max_hops max_shortcuts longest_square best_tree beta`.
    pub fn tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n, self.max_hops, self.max_shortcuts, self.longest_square, self.best_tree_shortcuts, self.beta
        )
    }

    pub const TSV_HEADER: &'static str = "n\tmax_hops\tmax_shortcuts\tlongest_square\tbest_tree\tbeta";
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Seed;
    use crate::trees::{build_shortcut_tree, tree_shortcuts, PivotRule, ZTable};

    #[test]
    fn max_hops_small_instances() {
        let r6 = Tournament::rn(6).unwrap();
        assert_eq!(max_hops_exact(&r6).unwrap().value, 2);
        let t5 = Tournament::transitive(5).unwrap();
        assert_eq!(max_hops_exact(&t5).unwrap().value, 3);
        // the 7-vertex quadratic-residue tournament has a hop-complete
        // Hamiltonian path (0..6: differences 1 and 2 are both residues),
        // so its maximum is n - 2 = 5
        let p7 = Tournament::paley(7).unwrap();
        assert_eq!(max_hops_exact(&p7).unwrap().value, 5);
        let r9 = Tournament::rn(9).unwrap();
        assert_eq!(max_hops_exact(&r9).unwrap().value, 4);
        // cap honored
        let big = Tournament::transitive(11).unwrap();
        assert!(matches!(max_hops_exact(&big), Err(OracleError::CapExceeded { .. })));
        assert_eq!(max_hops_exact_capped(&big, 11).unwrap().value, 9);
    }

    #[test]
    fn max_shortcuts_examples() {
        let t5 = Tournament::transitive(5).unwrap();
        assert_eq!(max_shortcuts_exact(&t5).unwrap().value, 6);
        let c3 = Tournament::rn(3).unwrap();
        assert_eq!(max_shortcuts_exact(&c3).unwrap().value, 0);
    }

    #[test]
    fn shortcut_equals_beta_identity() {
        for s in 0..30u64 {
            let n = 6 + (s % 3) as usize;
            let t = Tournament::random(n, Seed(s)).unwrap();
            let sc = max_shortcuts_exact(&t).unwrap();
            let beta = beta_exact(&t).unwrap();
            assert_eq!(sc.value, beta.value - (n as u64 - 1), "n={n} s={s}");
            // the witness path realizes the value
            let p = sc.witness;
            p.check_directed(&t).unwrap();
            assert_eq!(crate::paths::count_shortcuts(&t, &p).unwrap(), sc.value);
        }
    }

    #[test]
    fn beta_examples() {
        let t6 = Tournament::transitive(6).unwrap();
        assert_eq!(beta_exact(&t6).unwrap().value, 15);
        let c3 = Tournament::rn(3).unwrap();
        let b = beta_exact(&c3).unwrap();
        assert_eq!(b.value, 2);
        for s in 0..10u64 {
            let t = Tournament::random(7, Seed(s)).unwrap();
            assert!(beta_exact(&t).unwrap().value >= 11); // ceil of C(7,2)/2
        }
    }

    #[test]
    fn longest_square_examples() {
        let t12 = Tournament::transitive(12).unwrap();
        assert_eq!(longest_square_exact(&t12).unwrap().value, 12);
        let r6 = Tournament::rn(6).unwrap();
        assert_eq!(longest_square_exact(&r6).unwrap().value, 4);
        let p7 = Tournament::paley(7).unwrap();
        assert_eq!(longest_square_exact(&p7).unwrap().value, 7);
        let r12 = Tournament::rnk(12, 2, Seed(0)).unwrap();
        let w = longest_square_exact(&r12).unwrap();
        assert_eq!(w.value, 8);
        assert!(is_kth_power(&r12, w.witness.vertices(), 2));
        // at most two vertices per triangle block
        for blk in 0..4 {
            let inside = w.witness.vertices().iter().filter(|&&v| v / 3 == blk).count();
            assert!(inside <= 2);
        }
    }

    #[test]
    fn best_tree_examples_and_bounds() {
        let c3 = Tournament::rn(3).unwrap();
        assert_eq!(best_tree_exact(&c3).unwrap().value, 0);
        let t7 = Tournament::transitive(7).unwrap();
        assert_eq!(best_tree_exact(&t7).unwrap().value, 15);
        let zt = ZTable::compute(12);
        for s in 0..10u64 {
            let t = Tournament::random(10, Seed(s)).unwrap();
            let opt = best_tree_exact(&t).unwrap();
            crate::trees::validate_tree(&t, &opt.witness).unwrap();
            assert_eq!(tree_shortcuts(&t, &opt.witness).unwrap(), opt.value);
            let built = build_shortcut_tree(&t, PivotRule::MaxMiddle);
            let built_sc = tree_shortcuts(&t, &built).unwrap();
            assert!(opt.value >= built_sc);
            assert!(built_sc as i64 >= zt.z(10));
        }
    }

    #[test]
    fn best_tree_matches_literal_enumeration() {
        // independent route: enumerate every spanning shortcut tree
        fn all_trees(t: &Tournament, s: u32) -> Vec<(Option<usize>, Vec<(usize, Option<usize>, Option<usize>)>)> {
            // returns (root, child assignments) for every tree on s
            if s == 0 {
                return vec![(None, Vec::new())];
            }
            let mut out = Vec::new();
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let mut l = 0u32;
                let mut r = 0u32;
                for w in 0..t.n() {
                    if s >> w & 1 == 1 && w != v {
                        if t.edge(w, v) {
                            l |= 1 << w;
                        } else {
                            r |= 1 << w;
                        }
                    }
                }
                for (lr, ltree) in all_trees(t, l) {
                    for (rr, rtree) in all_trees(t, r) {
                        let mut nodes = vec![(v, lr, rr)];
                        nodes.extend(ltree.iter().cloned());
                        nodes.extend(rtree.iter().cloned());
                        out.push((Some(v), nodes));
                    }
                }
            }
            out
        }
        for s in 0..6u64 {
            let n = 5 + (s % 2) as usize;
            let t = Tournament::random(n, Seed(s)).unwrap();
            let mut best = 0;
            for (root, nodes) in all_trees(&t, ((1u64 << n) - 1) as u32) {
                let mut left = vec![None; n];
                let mut right = vec![None; n];
                for (v, l, r) in nodes {
                    left[v] = l;
                    right[v] = r;
                }
                let tree = ShortcutTree::from_parts(root.unwrap(), left, right);
                crate::trees::validate_tree(&t, &tree).unwrap();
                best = best.max(tree_shortcuts(&t, &tree).unwrap());
            }
            assert_eq!(best, best_tree_exact(&t).unwrap().value, "n={n} s={s}");
        }
    }

    #[test]
    fn middle_brute_examples() {
        let t3 = Tournament::transitive(3).unwrap();
        assert_eq!(middle_count_brute(&t3, 1), 1);
        let t5 = Tournament::transitive(5).unwrap();
        assert_eq!(middle_count_brute(&t5, 2), 4);
        let c3 = Tournament::rn(3).unwrap();
        for v in 0..3 {
            assert_eq!(middle_count_brute(&c3, v), 0);
        }
    }

    #[test]
    fn transitive_oracles() {
        let t10 = Tournament::transitive(10).unwrap();
        assert_eq!(max_transitive_exact(&t10).unwrap().size, 10);
        let c3 = Tournament::rn(3).unwrap();
        assert_eq!(max_transitive_exact(&c3).unwrap().size, 2);
        let p7 = Tournament::paley(7).unwrap();
        let w = max_transitive_exact(&p7).unwrap();
        assert_eq!(w.size, 3);
        assert!(!has_transitive_k(&p7, 4));
        assert!(has_transitive_k(&p7, 3));
        assert!(has_transitive_k(&p7, 1));
        // every 8-vertex tournament contains a transitive 4
        for s in 0..20u64 {
            let t = Tournament::random(8, Seed(s)).unwrap();
            assert!(has_transitive_k(&t, 4));
        }
        // chain witness is transitive in order
        for (i, &u) in w.chain.iter().enumerate() {
            for &v in &w.chain[i + 1..] {
                assert!(p7.edge(u, v));
            }
        }
    }

    #[test]
    fn census_small_values() {
        let c3 = hop_census(3).unwrap();
        assert_eq!(c3.min_max_hops, 0);
        assert_eq!(c3.minimizer_count, 2);
        assert_eq!(c3.minimizers_all_rn, Some(true));
        let c4 = hop_census(4).unwrap();
        assert_eq!(c4.min_max_hops, 1);
        let c5 = hop_census(5).unwrap();
        assert_eq!(c5.min_max_hops, 2);
        assert!(hop_census(7).is_err());
    }

    #[test]
    fn isomorphism_brute() {
        let c3 = Tournament::rn(3).unwrap();
        // reversal of a 3-cycle is again a 3-cycle
        let rev = Tournament::from_bool_matrix(3, |i, j| c3.edge(j, i));
        assert!(is_isomorphic(&c3, &rev));
        let t3 = Tournament::transitive(3).unwrap();
        assert!(!is_isomorphic(&c3, &t3));
    }

    #[test]
    fn report_is_consistent() {
        let t = Tournament::random(8, Seed(1)).unwrap();
        let r = OracleReport::compute(&t, &Caps::default()).unwrap();
        assert_eq!(r.max_shortcuts, r.beta - 7);
        assert!(r.max_hops <= r.max_shortcuts);
        assert!(r.longest_square <= 8);
        assert!(!r.tsv_line().is_empty());
    }
}
