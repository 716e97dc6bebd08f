//! Spanning shortcut trees, the middle-vertex count, the quadratic-time
//! builder, and the `z` recurrence bounding its guarantee.
//!
//! A spanning binary tree of a tournament is a *shortcut tree* when, for
//! every vertex, all left descendants are in-neighbors and all right
//! descendants are out-neighbors. Its in-order traversal is then a
//! Hamiltonian directed path, and the shortcuts of the tree are the
//! shortcuts of that path.

use rand::RngCore;

use crate::bits;
use crate::error::TreeError;
use crate::paths::{self, VertexPath};
use crate::tournament::{Seed, Tournament};

/// A binary tree spanning all vertices of a host tournament.
///
/// Stored as per-vertex child links; the structural and orientation
/// invariants are checked by [`validate_tree`], not by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutTree {
    root: usize,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl ShortcutTree {
    pub fn from_parts(root: usize, left: Vec<Option<usize>>, right: Vec<Option<usize>>) -> ShortcutTree {
        assert_eq!(left.len(), right.len());
        ShortcutTree { root, left, right }
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn left(&self, v: usize) -> Option<usize> {
        self.left[v]
    }

    pub fn right(&self, v: usize) -> Option<usize> {
        self.right[v]
    }

    /// In-order traversal; on a valid tree this is a Hamiltonian directed
    /// path of the host. Iterative, so chain-shaped trees of any size work.
    pub fn inorder(&self) -> VertexPath {
        let mut order = Vec::with_capacity(self.n());
        // stack of (vertex, left subtree already emitted?)
        let mut stack: Vec<(usize, bool)> = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                order.push(v);
                if let Some(r) = self.right[v] {
                    stack.push((r, false));
                }
            } else {
                stack.push((v, true));
                if let Some(l) = self.left[v] {
                    stack.push((l, false));
                }
            }
        }
        VertexPath::new(order)
    }
}

/// Checks that `b` is a valid spanning shortcut tree of `t`.
///
/// Structural defects (wrong size, double parents, unreachable vertices)
/// are reported separately from orientation violations.
pub fn validate_tree(t: &Tournament, b: &ShortcutTree) -> Result<(), TreeError> {
    let n = t.n();
    if b.n() != n {
        return Err(TreeError::SizeMismatch { got: b.n(), expect: n });
    }
    if b.root >= n {
        return Err(TreeError::RootOutOfRange { root: b.root });
    }
    for v in 0..n {
        for child in [b.left[v], b.right[v]].into_iter().flatten() {
            if child >= n {
                return Err(TreeError::ChildOutOfRange { child });
            }
        }
    }
    // walk from the root; every vertex must be reached exactly once
    let mut seen = vec![false; n];
    let mut stack = vec![b.root];
    seen[b.root] = true;
    while let Some(v) = stack.pop() {
        for child in [b.left[v], b.right[v]].into_iter().flatten() {
            if seen[child] {
                return Err(TreeError::DoubleParent { vertex: child });
            }
            seen[child] = true;
            stack.push(child);
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(TreeError::Unreachable { vertex: v });
    }
    // orientation: post-order accumulation of subtree bitsets
    let stride = t.stride();
    let mut subtree: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut stack: Vec<(usize, bool)> = vec![(b.root, false)];
    while let Some((v, expanded)) = stack.pop() {
        if !expanded {
            stack.push((v, true));
            for child in [b.left[v], b.right[v]].into_iter().flatten() {
                stack.push((child, false));
            }
            continue;
        }
        let mut acc = vec![0u64; stride];
        bits::set(&mut acc, v);
        if let Some(l) = b.left[v] {
            let lsub = subtree[l].take().expect("post-order");
            // left descendants must all point at v
            if bits::and_count(&lsub, t.out_row(v)) != 0 {
                let bad = bits::ones(&lsub).find(|&u| t.edge(v, u)).unwrap();
                return Err(TreeError::LeftOrientation { vertex: v, descendant: bad });
            }
            for (a, &w) in acc.iter_mut().zip(&lsub) {
                *a |= w;
            }
        }
        if let Some(r) = b.right[v] {
            let rsub = subtree[r].take().expect("post-order");
            let inside = bits::and_count(&rsub, t.out_row(v));
            if inside != bits::count(&rsub) {
                let bad = bits::ones(&rsub).find(|&w| !t.edge(v, w)).unwrap();
                return Err(TreeError::RightOrientation { vertex: v, descendant: bad });
            }
            for (a, &w) in acc.iter_mut().zip(&rsub) {
                *a |= w;
            }
        }
        subtree[v] = Some(acc);
    }
    Ok(())
}

/// Number of shortcuts of the tree: the shortcuts of its in-order path.
pub fn tree_shortcuts(t: &Tournament, b: &ShortcutTree) -> Result<u64, TreeError> {
    validate_tree(t, b)?;
    Ok(paths::count_shortcuts_unchecked(t, b.inorder().vertices()))
}

/// Number of transitive triangles of `t` with `v` as the middle vertex,
/// in O(n) given the degree sequence:
/// `m(v) = sum over in-neighbors u of (d+(u) - 1) - C(d-(v), 2)`.
pub fn middle_count(t: &Tournament, v: usize) -> u64 {
    let out_degrees: Vec<usize> = (0..t.n()).map(|u| t.out_degree(u)).collect();
    middle_count_with_degrees(t, v, &out_degrees)
}

/// All middle counts at once; one degree pass instead of n.
pub fn middle_counts(t: &Tournament) -> Vec<u64> {
    let out_degrees: Vec<usize> = (0..t.n()).map(|u| t.out_degree(u)).collect();
    (0..t.n()).map(|v| middle_count_with_degrees(t, v, &out_degrees)).collect()
}

fn middle_count_with_degrees(t: &Tournament, v: usize, out_degrees: &[usize]) -> u64 {
    let mut inn = vec![0u64; t.stride()];
    t.in_row_into(v, &mut inn);
    let mut sum: i64 = 0;
    bits::for_each_one(&inn, |u| sum += out_degrees[u] as i64 - 1);
    let din = (t.n() - 1 - out_degrees[v]) as i64;
    let m = sum - din * (din - 1) / 2;
    debug_assert!(m >= 0);
    m as u64
}

/// The guaranteed maximum middle count: some vertex has `m(v)` at least
/// `(n-1)(n-3)/8` for odd `n` and `ceil((n-2)^2 / 8)` for even `n`.
pub fn middle_floor(n: usize) -> u64 {
    if n < 3 {
        return 0;
    }
    let n = n as u64;
    if n % 2 == 1 {
        (n - 1) * (n - 3) / 8
    } else {
        ((n - 2) * (n - 2)).div_ceil(8)
    }
}

/// Root-selection rule for [`build_shortcut_tree`].
#[derive(Copy, Clone, Debug)]
pub enum PivotRule {
    /// Root every subtree at a vertex maximizing the middle count within
    /// the sub-tournament (ties: smallest index). This is the rule with the
    /// `z(n)` shortcut guarantee, O(n^2) total on balanced inputs.
    MaxMiddle,
    /// Always root at the smallest-index vertex: the cheap baseline.
    FirstVertex,
    /// Seeded uniform root choice, deterministic given the seed.
    Random(Seed),
}

/// Builds a spanning shortcut tree of `t`.
///
/// With [`PivotRule::MaxMiddle`] the result carries at least `z(n)`
/// shortcuts, and in particular at least
/// `C(n,2)/2 + (n ln n)/5 - 3122`: rooting at a max-middle vertex `v` turns
/// every transitive triangle with middle `v` into a shortcut, and the two
/// neighborhoods recurse. A max-middle vertex has both degrees linear in
/// `n`, so the recursion depth stays logarithmic; if a degenerate input
/// drives the depth past `4 log2 n` anyway, the affected subtree switches
/// to the most balanced in-window vertex to bound the total work.
pub fn build_shortcut_tree(t: &Tournament, rule: PivotRule) -> ShortcutTree {
    build_shortcut_tree_stats(t, rule).0
}

#[derive(Default, Debug, Clone, Copy)]
pub(crate) struct BuildStats {
    pub max_depth: usize,
    pub balance_fallbacks: usize,
}

pub(crate) fn build_shortcut_tree_stats(t: &Tournament, rule: PivotRule) -> (ShortcutTree, BuildStats) {
    let n = t.n();
    let stride = t.stride();
    let mut left = vec![None; n];
    let mut right = vec![None; n];
    let mut stats = BuildStats::default();
    let depth_limit = 4 * (usize::BITS - n.leading_zeros()) as usize;
    let mut rng = match rule {
        PivotRule::Random(seed) => Some(seed.rng()),
        _ => None,
    };

    // acc stays all-zeros between nodes; only touched entries are reset
    let mut acc: Vec<i64> = vec![0; n];
    let mut degs: Vec<usize> = vec![0; n];

    enum Slot {
        Root,
        Left(usize),
        Right(usize),
    }
    let full: Vec<u64> = {
        let mut w = vec![0u64; stride];
        bits::set_range(&mut w, 0, n);
        w
    };
    let mut root = usize::MAX;
    let mut stack: Vec<(Vec<u64>, usize, Slot, usize)> = vec![(full, n, Slot::Root, 0)];
    while let Some((mask, m, slot, depth)) = stack.pop() {
        stats.max_depth = stats.max_depth.max(depth);
        let pivot = if m == 1 {
            bits::first_one(&mask).unwrap()
        } else {
            for v in bits::ones(&mask) {
                degs[v] = t.out_degree_within(v, &mask);
            }
            match (&rule, depth > depth_limit) {
                (PivotRule::FirstVertex, _) => bits::first_one(&mask).unwrap(),
                (PivotRule::Random(_), _) => {
                    let k = (rng.as_mut().unwrap().next_u64() % m as u64) as usize;
                    bits::ones(&mask).nth(k).unwrap()
                }
                (PivotRule::MaxMiddle, false) => max_middle_vertex(t, &mask, &degs, &mut acc, m),
                (PivotRule::MaxMiddle, true) => {
                    stats.balance_fallbacks += 1;
                    balanced_vertex(&mask, &degs, m)
                }
            }
        };
        match slot {
            Slot::Root => root = pivot,
            Slot::Left(p) => left[p] = Some(pivot),
            Slot::Right(p) => right[p] = Some(pivot),
        }
        if m == 1 {
            continue;
        }
        let d_out = degs[pivot];
        if d_out > 0 {
            let mut out_side = vec![0u64; stride];
            for (o, (&r, &c)) in out_side.iter_mut().zip(t.out_row(pivot).iter().zip(&mask)) {
                *o = r & c;
            }
            stack.push((out_side, d_out, Slot::Right(pivot), depth + 1));
        }
        if d_out + 1 < m {
            let mut in_side = mask;
            for (i, &r) in in_side.iter_mut().zip(t.out_row(pivot)) {
                *i &= !r;
            }
            bits::unset(&mut in_side, pivot);
            stack.push((in_side, m - 1 - d_out, Slot::Left(pivot), depth + 1));
        }
    }
    (ShortcutTree { root, left, right }, stats)
}

/// Argmax of the middle count within `mask` (ties: smallest index).
/// `acc` must be all zeros on entry and is restored to zeros on exit.
fn max_middle_vertex(t: &Tournament, mask: &[u64], degs: &[usize], acc: &mut [i64], m: usize) -> usize {
    let mut row = vec![0u64; mask.len()];
    for u in bits::ones(mask) {
        let wu = degs[u] as i64 - 1;
        for ((r, &o), &c) in row.iter_mut().zip(t.out_row(u)).zip(mask) {
            *r = o & c;
        }
        bits::for_each_one(&row, |v| acc[v] += wu);
    }
    let mut best = i64::MIN;
    let mut pivot = usize::MAX;
    for v in bits::ones(mask) {
        let din = (m - 1 - degs[v]) as i64;
        let mv = acc[v] - din * (din - 1) / 2;
        acc[v] = 0;
        if mv > best {
            best = mv;
            pivot = v;
        }
    }
    pivot
}

/// Most balanced vertex within the degree window (the depth fallback).
fn balanced_vertex(mask: &[u64], degs: &[usize], m: usize) -> usize {
    let mut pivot = usize::MAX;
    let mut best = usize::MAX;
    for v in bits::ones(mask) {
        let dist = (2 * degs[v]).abs_diff(m);
        if dist < best {
            best = dist;
            pivot = v;
        }
    }
    pivot
}

// ----------------------------------------------------------------------
// The z recurrence and the analytic bounds
// ----------------------------------------------------------------------

/// Table of the recurrence
/// `z(1) = z(2) = 0`,
/// `z(n) = ceil((n+7)(n-3)/8) + min over x in [1, (n-1)/2] of z(x) + z(n-x-1)`,
/// which lower-bounds the shortcut count of the max-middle tree.
#[derive(Clone, Debug)]
pub struct ZTable {
    values: Vec<i64>, // values[n] = z(n); values[0] unused
}

impl ZTable {
    /// Computes `z(1..=max_n)` by dynamic programming; the additive term is
    /// independent of the split, so each entry costs O(n).
    pub fn compute(max_n: usize) -> ZTable {
        assert!(max_n >= 1);
        let mut values = vec![0i64; max_n + 1];
        for n in 3..=max_n {
            let term = ((n as i64 + 7) * (n as i64 - 3) + 7) / 8; // ceil
            let mut best = i64::MAX;
            for x in 1..=(n - 1) / 2 {
                let s = values[x] + values[n - x - 1];
                if s < best {
                    best = s;
                }
            }
            values[n] = term + best;
        }
        ZTable { values }
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn z(&self, n: usize) -> i64 {
        self.values[n]
    }

    /// `ceil(n^2/4 + n ln n / 10 - 80)` under the crate rounding rule.
    pub fn bound10(n: usize) -> i64 {
        ceil_eps(z_lower10(n))
    }

    /// `ceil(n^2/4 + n ln n / 5 - 3122)` under the crate rounding rule.
    pub fn bound5(n: usize) -> i64 {
        ceil_eps(z_lower5(n))
    }

    pub fn ok10(&self, n: usize) -> bool {
        self.z(n) >= Self::bound10(n)
    }

    pub fn ok5(&self, n: usize) -> bool {
        self.z(n) >= Self::bound5(n)
    }

    /// Emits the canonical CSV: `n,z,bound10,bound5,ok10,ok5`.
    pub fn write_csv(&self, mut w: impl std::io::Write) -> std::io::Result<()> {
        writeln!(w, "n,z,bound10,bound5,ok10,ok5")?;
        for n in 1..=self.max_n() {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                n,
                self.z(n),
                Self::bound10(n),
                Self::bound5(n),
                self.ok10(n) as u8,
                self.ok5(n) as u8
            )?;
        }
        Ok(())
    }
}

/// All four analytic shortcut-count bounds for one `n`.
///
/// `ln` means natural logarithm and `log2` base-2, matching the formulas.
#[derive(Clone, Copy, Debug)]
pub struct ShortcutBounds {
    /// `C(n,2)/2 + (n ln n)/5 - 3122`: what every max-middle tree achieves.
    pub tree_lower: f64,
    /// `n^2/4 + (n ln n)/10 - 80`: lower bound on `z(n)`, all `n >= 1`.
    pub z_lower10: f64,
    /// `n^2/4 + (n ln n)/5 - 3122`: sharper `z(n)` bound (holds to 62540).
    pub z_lower5: f64,
    /// `C(n,2)/2 + 4 n log2^2 n`: no tree does better on some tournaments.
    pub tree_upper: f64,
}

/// Bound values for a tournament on `n` vertices.
pub fn shortcut_bounds(n: usize) -> ShortcutBounds {
    let nf = n as f64;
    let half_binom = nf * (nf - 1.0) / 4.0;
    let nln = if n <= 1 { 0.0 } else { nf * nf.ln() };
    let log2 = if n <= 1 { 0.0 } else { nf.log2() };
    ShortcutBounds {
        tree_lower: half_binom + nln / 5.0 - 3122.0,
        z_lower10: nf * nf / 4.0 + nln / 10.0 - 80.0,
        z_lower5: nf * nf / 4.0 + nln / 5.0 - 3122.0,
        tree_upper: half_binom + 4.0 * nf * log2 * log2,
    }
}

fn z_lower10(n: usize) -> f64 {
    shortcut_bounds(n).z_lower10
}

fn z_lower5(n: usize) -> f64 {
    shortcut_bounds(n).z_lower5
}

/// Rounding rule for comparing integer counts against real-valued bounds:
/// a count `c` meets bound `b` iff `c >= ceil(b - 1e-9)`, so exact-boundary
/// cases cannot fail through floating-point noise.
pub fn ceil_eps(bound: f64) -> i64 {
    (bound - 1e-9).ceil() as i64
}

/// Whether an integer count meets a real-valued lower bound.
pub fn meets_bound(count: u64, bound: f64) -> bool {
    count as i64 >= ceil_eps(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::count_shortcuts;
    use crate::tournament::Seed;

    #[test]
    fn validate_accepts_hand_built_tree() {
        let t = Tournament::transitive(3).unwrap();
        let b = ShortcutTree::from_parts(1, vec![None, Some(0), None], vec![None, Some(2), None]);
        validate_tree(&t, &b).unwrap();
        assert_eq!(b.inorder().vertices(), &[0, 1, 2]);
    }

    #[test]
    fn validate_rejects_wrong_side() {
        let t = Tournament::transitive(3).unwrap();
        // 0 -> 1, so 1 cannot be a left descendant of 0
        let b = ShortcutTree::from_parts(0, vec![Some(1), None, None], {
            let mut r: Vec<Option<usize>> = vec![None; 3];
            r[1] = Some(2);
            r
        });
        assert_eq!(
            validate_tree(&t, &b),
            Err(TreeError::LeftOrientation { vertex: 0, descendant: 1 })
        );
    }

    #[test]
    fn validate_reports_structural_defects_distinctly() {
        let t = Tournament::transitive(4).unwrap();
        // root 1, left child 0, right child 2: vertex 3 unreachable
        let b = ShortcutTree::from_parts(
            1,
            {
                let mut l: Vec<Option<usize>> = vec![None; 4];
                l[1] = Some(0);
                l
            },
            {
                let mut r: Vec<Option<usize>> = vec![None; 4];
                r[1] = Some(2);
                r
            },
        );
        assert_eq!(validate_tree(&t, &b), Err(TreeError::Unreachable { vertex: 3 }));
        // vertex 2 claimed as a child by both 0 and 3
        let b = ShortcutTree::from_parts(
            1,
            {
                let mut l: Vec<Option<usize>> = vec![None; 4];
                l[1] = Some(0);
                l
            },
            {
                let mut r: Vec<Option<usize>> = vec![None; 4];
                r[1] = Some(3);
                r[0] = Some(2);
                r[3] = Some(2);
                r
            },
        );
        assert_eq!(validate_tree(&t, &b), Err(TreeError::DoubleParent { vertex: 2 }));
    }

    #[test]
    fn figure_shaped_tree_on_consistent_tournament() {
        // balanced tree: root 0, children 1 and 2, grandchildren 3,4,5,6
        // in-order 3,1,4,0,5,2,6; host orients every pair along that order
        let order = [3usize, 1, 4, 0, 5, 2, 6];
        let mut pos = [0usize; 7];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        // host: orient u -> v iff pos[u] < pos[v]
        let mut lines = String::from("tournament v1\nn=7\n");
        for u in 0..7 {
            for v in 0..7 {
                lines.push(if u != v && pos[u] < pos[v] { '1' } else { '0' });
            }
            lines.push('\n');
        }
        let host = crate::format::parse_tournament(lines.as_bytes()).unwrap();
        let left = {
            let mut l: Vec<Option<usize>> = vec![None; 7];
            l[0] = Some(1);
            l[1] = Some(3);
            l[2] = Some(5);
            l
        };
        let right = {
            let mut r: Vec<Option<usize>> = vec![None; 7];
            r[0] = Some(2);
            r[1] = Some(4);
            r[2] = Some(6);
            r
        };
        let b = ShortcutTree::from_parts(0, left, right);
        validate_tree(&host, &b).unwrap();
        assert_eq!(b.inorder().vertices(), &order);
    }

    #[test]
    fn tree_shortcuts_matches_path_count() {
        for s in 0..10u64 {
            let t = Tournament::random(30, Seed(s)).unwrap();
            for rule in [PivotRule::MaxMiddle, PivotRule::FirstVertex, PivotRule::Random(Seed(s))] {
                let b = build_shortcut_tree(&t, rule);
                let sc = tree_shortcuts(&t, &b).unwrap();
                let p = b.inorder();
                p.check_directed(&t).unwrap();
                assert_eq!(sc, count_shortcuts(&t, &p).unwrap());
            }
        }
    }

    #[test]
    fn middle_count_examples() {
        let t3 = Tournament::transitive(3).unwrap();
        assert_eq!(middle_count(&t3, 1), 1);
        let c3 = Tournament::rn(3).unwrap();
        for v in 0..3 {
            assert_eq!(middle_count(&c3, v), 0);
        }
        let t5 = Tournament::transitive(5).unwrap();
        assert_eq!(middle_count(&t5, 2), 4);
    }

    #[test]
    fn builder_on_transitive_gets_everything() {
        for n in [1usize, 2, 3, 7, 40] {
            let t = Tournament::transitive(n).unwrap();
            let b = build_shortcut_tree(&t, PivotRule::MaxMiddle);
            let sc = tree_shortcuts(&t, &b).unwrap();
            let expect = if n >= 2 { (n as u64 * (n as u64 - 1)) / 2 - (n as u64 - 1) } else { 0 };
            assert_eq!(sc, expect, "n={n}");
        }
    }

    #[test]
    fn builder_meets_z_on_random() {
        let zt = ZTable::compute(100);
        for s in 0..10u64 {
            for n in [1usize, 2, 5, 23, 64, 100] {
                let t = Tournament::random(n, Seed(s)).unwrap();
                let b = build_shortcut_tree(&t, PivotRule::MaxMiddle);
                let sc = tree_shortcuts(&t, &b).unwrap();
                assert!(sc as i64 >= zt.z(n), "n={n} s={s}: {sc} < {}", zt.z(n));
            }
        }
    }

    #[test]
    fn z_values_and_bounds() {
        let zt = ZTable::compute(600);
        assert_eq!(zt.z(1), 0);
        assert_eq!(zt.z(2), 0);
        assert_eq!(zt.z(3), 0);
        assert_eq!(zt.z(4), 2);
        assert_eq!(zt.z(18), 74);
        assert_eq!(zt.z(600), 90415);
        assert_eq!(ZTable::bound10(18), 7);
        assert_eq!(ZTable::bound10(600), 90304);
        assert_eq!(zt.z(18) - ZTable::bound10(18), 67);
        for n in 1..=600 {
            assert!(zt.ok10(n) && zt.ok5(n), "n={n}");
        }
    }

    #[test]
    fn rounding_rule_is_stable_on_exact_boundaries() {
        assert_eq!(ceil_eps(2.0), 2);
        assert_eq!(ceil_eps(2.0 + 1e-12), 2);
        assert_eq!(ceil_eps(2.0 - 1e-12), 2);
        assert_eq!(ceil_eps(2.1), 3);
        assert_eq!(ceil_eps(-79.75), -79);
        assert!(meets_bound(2, 2.0));
        assert!(!meets_bound(2, 2.5));
    }

    #[test]
    fn even_case_recurrence_inequality_holds() {
        // ceil((n-2)^2/8) + n - 3 >= ceil((n+7)(n-3)/8) for even n
        for n in (4..=100_000usize).step_by(2) {
            let lhs = ((n as i64 - 2) * (n as i64 - 2) + 7) / 8 + n as i64 - 3;
            let rhs = ((n as i64 + 7) * (n as i64 - 3) + 7) / 8;
            assert!(lhs >= rhs, "n={n}");
        }
    }
}
