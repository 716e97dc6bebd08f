//! Shortcut-rich paths in tournaments.
//!
//! A *tournament* orients every edge of a complete graph. Along a directed
//! path, an edge jumping forward past at least one vertex is a *shortcut*;
//! jumping exactly one is a *hop*; a path with every hop present is *hop
//! complete* (its edges form the square of a path). This crate builds
//! certificates for three guarantees that hold in every tournament:
//!
//! * [`hop_rich_path`]: a Hamiltonian path with at least
//!   `ceil((4n - 10)/7)` hops (n >= 4);
//! * [`build_shortcut_tree`]: a spanning shortcut tree with at least `z(n)`
//!   shortcuts, where [`ZTable`] is an explicit quadratic-plus-`n log n`
//!   recurrence, computed by a quadratic-time algorithm;
//! * [`square_path`]: a hop-complete path on at least `n^0.295` vertices.
//!
//! Extremal constructions ([`Tournament::rn`], [`Tournament::rnk`],
//! [`Tournament::paley`]) witness the matching upper bounds, and the
//! [`oracle`] module recomputes everything exactly on small instances.

mod bits;
mod dp;
pub mod error;
pub mod format;
pub mod oracle;
pub mod paths;
pub mod square;
pub mod suites;
pub mod tournament;
pub mod trees;

pub use error::{BuildError, OracleError, PairError, ParseError, PathError, TreeError};
pub use paths::{
    count_hops, count_shortcuts, greedy_ham_path, hop_floor, hop_rich_path, is_hop_complete,
    VertexPath,
};
pub use square::{
    delta2, delta2_first_meeting, delta2_floor, pair_neighborhoods, square_floor, square_path,
    PairStat,
};
pub use tournament::{find_fk, Seed, Tournament, VertexSet, DEFAULT_FK_BUDGET};
pub use trees::{
    build_shortcut_tree, ceil_eps, meets_bound, middle_count, middle_counts, middle_floor,
    shortcut_bounds, tree_shortcuts, validate_tree, PivotRule, ShortcutBounds, ShortcutTree,
    ZTable,
};
