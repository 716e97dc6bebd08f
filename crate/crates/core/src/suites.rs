//! Named verification suites: each runs a batch of independent checks and
//! reports one line per check. The CLI exposes them through `verify`.

use crate::oracle;
use crate::paths;
use crate::square;
use crate::tournament::{Seed, Tournament};
use crate::trees::{self, PivotRule, ZTable};

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// `h(n) = ceil((2n - 6) / 3)` for small n: exhaustive for n <= 6 (with the
/// extremal uniqueness of `R_3` and `R_6`), designated instances for
/// n = 7..10. With `full`, n = 7 is also swept exhaustively (about 2^21
/// tournaments; takes a minute or two).
pub fn suite_h10(full: bool) -> Vec<Check> {
    let mut checks = Vec::new();
    let expected = |n: usize| ((2 * n).saturating_sub(6) as u64).div_ceil(3);
    for n in 3..=6 {
        let census = oracle::hop_census(n).unwrap();
        checks.push(Check::new(
            format!("census_n{n}_min"),
            census.min_max_hops == expected(n),
            format!("min max-hops {} want {}", census.min_max_hops, expected(n)),
        ));
        if let Some(all_rn) = census.minimizers_all_rn {
            checks.push(Check::new(
                format!("census_n{n}_extremal_rn"),
                all_rn,
                format!("{} minimizers", census.minimizer_count),
            ));
        }
    }
    // frozen minimizer counts: 2 labeled 3-cycles, 720 / |Aut(R_6)| = 80
    let c3 = oracle::hop_census(3).unwrap();
    checks.push(Check::new("census_n3_count", c3.minimizer_count == 2, format!("{}", c3.minimizer_count)));
    let c6 = oracle::hop_census(6).unwrap();
    checks.push(Check::new("census_n6_count", c6.minimizer_count == 80, format!("{}", c6.minimizer_count)));
    for n in 7..=10 {
        let rn = Tournament::rn(n).unwrap();
        let h = oracle::max_hops_exact(&rn).unwrap().value;
        checks.push(Check::new(
            format!("rn_n{n}_exact"),
            h == expected(n),
            format!("max hops {h} want {}", expected(n)),
        ));
        // random spot instances can only do better than the floor
        for s in 0..5u64 {
            let t = Tournament::random(n, Seed(s)).unwrap();
            let h = oracle::max_hops_exact(&t).unwrap().value;
            if h < expected(n) {
                checks.push(Check::new(
                    format!("random_n{n}_s{s}_floor"),
                    false,
                    format!("max hops {h} below floor {}", expected(n)),
                ));
            }
        }
    }
    // regression: the 7-vertex quadratic-residue tournament is hop complete
    // along 0..6, so its maximum is 5 (in particular >= 3, settling n = 7)
    let p7 = Tournament::paley(7).unwrap();
    let h7 = oracle::max_hops_exact(&p7).unwrap().value;
    checks.push(Check::new("paley7_max_hops", h7 == 5, format!("max hops {h7} want 5")));
    if full {
        let census7 = oracle::hop_census_forced(7);
        checks.push(Check::new(
            "census_n7_min",
            census7.min_max_hops == 3,
            format!("min max-hops {} want 3", census7.min_max_hops),
        ));
    }
    checks
}

/// The thirteen reference rows of the z table.
pub const Z_REFERENCE: [(usize, i64); 13] = [
    (18, 74),
    (50, 618),
    (100, 2508),
    (150, 5657),
    (200, 10062),
    (250, 15696),
    (300, 22635),
    (350, 30805),
    (400, 40219),
    (450, 50874),
    (500, 62765),
    (550, 75965),
    (600, 90415),
];

/// Reference z values from the table of small entries.
pub fn suite_table1() -> Vec<Check> {
    let zt = ZTable::compute(600);
    Z_REFERENCE
        .iter()
        .map(|&(n, want)| {
            Check::new(format!("z_{n}"), zt.z(n) == want, format!("z({n}) = {} want {want}", zt.z(n)))
        })
        .collect()
}

/// Degree formula for the middle count against triple enumeration.
pub fn suite_mv(n: usize, trials: usize, seed: Seed) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut agree = 0usize;
    let mut floor_ok = 0usize;
    for trial in 0..trials {
        let t = Tournament::random(n, seed.child(trial as u64)).unwrap();
        let fast = trees::middle_counts(&t);
        let brute: Vec<u64> = (0..n).map(|v| oracle::middle_count_brute(&t, v)).collect();
        if fast == brute {
            agree += 1;
        }
        if fast.iter().max().copied().unwrap_or(0) >= trees::middle_floor(n) {
            floor_ok += 1;
        }
    }
    checks.push(Check::new(
        "mv_formula_agreement",
        agree == trials,
        format!("{agree}/{trials} instances agree"),
    ));
    checks.push(Check::new(
        "mv_floor",
        floor_ok == trials,
        format!("{floor_ok}/{trials} meet the middle floor {}", trees::middle_floor(n)),
    ));
    checks
}

/// The pairwise common-neighborhood floor, exhaustively for n <= 5 and on
/// random instances.
pub fn suite_delta2(max_n: usize, trials: usize, seed: Seed) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut exhaustive_ok = true;
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u64..1u64 << pairs.len() {
            let t = oracle::tournament_from_mask(n, &pairs, mask);
            let d = square::delta2(&t).unwrap();
            if !trees::meets_bound(d.score, square::delta2_floor(n)) {
                exhaustive_ok = false;
            }
        }
    }
    checks.push(Check::new("delta2_exhaustive_n5", exhaustive_ok, "all labeled tournaments, n = 2..5"));
    let mut ok = 0usize;
    for trial in 0..trials {
        let sub = seed.child(trial as u64);
        // spread sizes over [2, max_n]
        let n = 2 + (sub.0 % (max_n.max(3) as u64 - 1)) as usize;
        let t = Tournament::random(n, sub).unwrap();
        let d = square::delta2(&t).unwrap();
        if trees::meets_bound(d.score, square::delta2_floor(n)) {
            ok += 1;
        }
    }
    checks.push(Check::new("delta2_random", ok == trials, format!("{ok}/{trials} instances meet the floor")));
    checks
}

/// Per-instance identity: max shortcuts over Hamiltonian paths equals
/// beta - (n - 1), exhaustively for n <= 5 plus random instances.
pub fn suite_identity_s_beta(trials: usize, seed: Seed) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut exhaustive_ok = true;
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u64..1u64 << pairs.len() {
            let t = oracle::tournament_from_mask(n, &pairs, mask);
            let sc = oracle::max_shortcuts_exact(&t).unwrap().value;
            let beta = oracle::beta_exact(&t).unwrap().value;
            if sc != beta - (n as u64 - 1) {
                exhaustive_ok = false;
            }
        }
    }
    checks.push(Check::new("identity_exhaustive_n5", exhaustive_ok, "all labeled tournaments, n = 2..5"));
    let mut ok = 0usize;
    for trial in 0..trials {
        let sub = seed.child(trial as u64);
        let n = 6 + (sub.0 % 3) as usize;
        let t = Tournament::random(n, sub).unwrap();
        let sc = oracle::max_shortcuts_exact(&t).unwrap().value;
        let beta = oracle::beta_exact(&t).unwrap().value;
        if sc == beta - (n as u64 - 1) {
            ok += 1;
        }
    }
    checks.push(Check::new("identity_random", ok == trials, format!("{ok}/{trials} instances")));
    checks
}

/// Block-power caps: the longest square in `R(12,2)` is exactly 8 with at
/// most two vertices per block, and the Paley block has no transitive 4.
pub fn suite_rnk_power(seed: Seed) -> Vec<Check> {
    let mut checks = Vec::new();
    let r12 = Tournament::rnk(12, 2, seed).unwrap();
    let w = oracle::longest_square_exact(&r12).unwrap();
    checks.push(Check::new("r12_2_square_exact", w.value == 8, format!("longest square {} want 8", w.value)));
    let per_block_ok = (0..4).all(|blk| w.witness.vertices().iter().filter(|&&v| v / 3 == blk).count() <= 2);
    checks.push(Check::new("r12_2_per_block", per_block_ok, "at most 2 vertices per triangle block"));
    let p7 = Tournament::paley(7).unwrap();
    checks.push(Check::new(
        "paley7_t4_free",
        !oracle::has_transitive_k(&p7, 4),
        "no transitive sub-tournament on 4 vertices",
    ));
    // the construction interface the blocks feed into
    let sq = square::square_path(&r12);
    let ok = paths::is_hop_complete(&r12, &sq).unwrap() && sq.len() <= 8;
    checks.push(Check::new("r12_2_builder_within_cap", ok, format!("built square of length {}", sq.len())));
    checks
}

/// Tree builder guarantee on sampled instances (used by the CLI).
pub fn suite_tree(n: usize, trials: usize, seed: Seed) -> Vec<Check> {
    let zt = ZTable::compute(n);
    let mut ok = 0usize;
    for trial in 0..trials {
        let t = Tournament::random(n, seed.child(trial as u64)).unwrap();
        let b = trees::build_shortcut_tree(&t, PivotRule::MaxMiddle);
        let sc = trees::tree_shortcuts(&t, &b).unwrap();
        let bounds = trees::shortcut_bounds(n);
        if sc as i64 >= zt.z(n) && trees::meets_bound(sc, bounds.tree_lower) {
            ok += 1;
        }
    }
    vec![Check::new(
        "tree_z_floor",
        ok == trials,
        format!("{ok}/{trials} instances at n = {n} meet max(z, analytic) floor"),
    )]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_suite_passes() {
        let checks = suite_table1();
        assert_eq!(checks.len(), 13);
        assert!(all_pass(&checks), "{checks:?}");
    }

    #[test]
    fn mv_suite_passes() {
        let checks = suite_mv(30, 20, Seed(5));
        assert!(all_pass(&checks), "{checks:?}");
    }

    #[test]
    fn delta2_suite_passes() {
        let checks = suite_delta2(40, 50, Seed(5));
        assert!(all_pass(&checks), "{checks:?}");
    }

    #[test]
    fn identity_suite_passes() {
        let checks = suite_identity_s_beta(10, Seed(5));
        assert!(all_pass(&checks), "{checks:?}");
    }

    #[test]
    fn rnk_suite_passes() {
        let checks = suite_rnk_power(Seed(5));
        assert!(all_pass(&checks), "{checks:?}");
    }
}
