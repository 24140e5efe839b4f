//! Backtracking search for polychromatic colorings of cyclic groups.
//!
//! For a fixed modulus `q` the word positions `0..q` are assigned in order.
//! Each of the `q` windows `{(n + s) mod q : s in S}` must receive every
//! color; a branch dies as soon as some window has more missing colors than
//! free positions able to take them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::reduce::{two_coloring, verify_polychromatic, verify_polychromatic_mod};
use crate::set::{canonicalize, IntegerSet};
use crate::tiling::{coloring_from_tiling, default_modulus_bound, find_tiling_complement, newman_tiles};

/// Parameters of [`search_coloring`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Target number of colors.
    pub k: u32,
    pub q_min: u64,
    /// Largest modulus tried; `None` means `4 * diam + 8`.
    pub q_max: Option<u64>,
    /// Largest per-modulus node budget of any round.
    pub node_budget: u64,
    /// Number of moduli searched concurrently.
    pub parallelism: usize,
    pub symmetry_breaking: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            k: 3,
            q_min: 1,
            q_max: None,
            node_budget: 2_000_000,
            parallelism: 1,
            symmetry_breaking: true,
        }
    }
}

impl SearchConfig {
    pub fn with_colors(k: u32) -> Self {
        Self { k, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.q_min == 0 {
            return Err(Error::InvalidConfig("q_min must be at least 1".into()));
        }
        if let Some(q_max) = self.q_max {
            if q_max < self.q_min {
                return Err(Error::InvalidConfig(format!(
                    "q_max {q_max} is below q_min {}",
                    self.q_min
                )));
            }
        }
        if self.parallelism == 0 {
            return Err(Error::InvalidConfig("parallelism must be at least 1".into()));
        }
        Ok(())
    }

    /// The moduli tried for `set`, ascending.
    pub fn schedule(&self, set: &IntegerSet) -> std::ops::RangeInclusive<u64> {
        let diam = set.diameter() as u64;
        let lo = self.q_min.max(diam + 1);
        let hi = self.q_max.unwrap_or(4 * diam + 8);
        lo..=hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    /// Every modulus in range was searched to completion without a witness.
    ExhaustedRange,
    /// At least one modulus ran out of budget and none produced a witness.
    BudgetExceeded,
}

impl SearchStatus {
    pub fn label(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustedRange => "exhausted",
            SearchStatus::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub tried: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<(u64, PeriodicColoring)>,
    pub stats: SearchStats,
}

/// Result of the search at a single modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicResult {
    Found(Vec<u32>),
    Exhausted,
    BudgetExceeded,
}

/// Depth-first solver for one modulus.
///
/// Each position carries a bitmask of colors still allowed. After every
/// assignment the affected windows are re-examined: a window fails when it
/// has more missing colors than free positions, or when a missing color is
/// allowed at none of its free positions; when missing colors exactly match
/// the free positions, those positions are narrowed to the missing colors.
struct CyclicSolver {
    q: usize,
    width: usize,
    full: u64,
    symmetry_breaking: bool,
    budget: u64,
    nodes: u64,
    // Node limit of the current restart.
    run_limit: u64,
    // Value order is randomized on every restart but the first.
    rng: Option<ChaCha8Rng>,
    domain: Vec<u64>,
    assigned: Vec<bool>,
    // window_positions[w * width + i] = (w + s_i) mod q
    window_positions: Vec<u32>,
    // windows_of[p * width + i] = (p - s_i) mod q
    windows_of: Vec<u32>,
    trail: Vec<(u32, u64)>,
    queue: Vec<u32>,
}

impl CyclicSolver {
    fn new(q: usize, k: usize, offsets: &[usize], symmetry_breaking: bool, budget: u64) -> Self {
        let width = offsets.len();
        let mut window_positions = Vec::with_capacity(q * width);
        let mut windows_of = Vec::with_capacity(q * width);
        for p in 0..q {
            for &s in offsets {
                window_positions.push(((p + s) % q) as u32);
                windows_of.push(((p + q - s) % q) as u32);
            }
        }
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Self {
            q,
            width,
            full,
            symmetry_breaking,
            budget,
            nodes: 0,
            run_limit: budget,
            rng: None,
            domain: vec![full; q],
            assigned: vec![false; q],
            window_positions,
            windows_of,
            trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    #[inline]
    fn narrow(&mut self, p: usize, mask: u64) {
        self.trail.push((p as u32, self.domain[p]));
        self.domain[p] = mask;
        for i in 0..self.width {
            self.queue.push(self.windows_of[p * self.width + i]);
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (p, old) = self.trail.pop().unwrap();
            self.domain[p as usize] = old;
        }
    }

    /// Propagates queued windows; false on contradiction.
    fn propagate(&mut self) -> bool {
        while let Some(w) = self.queue.pop() {
            let base = w as usize * self.width;
            let mut present = 0u64;
            let mut reachable = 0u64;
            let mut free = 0u32;
            for i in 0..self.width {
                let x = self.window_positions[base + i] as usize;
                if self.assigned[x] {
                    present |= self.domain[x];
                } else {
                    reachable |= self.domain[x];
                    free += 1;
                }
            }
            let missing = self.full & !present;
            let needed = missing.count_ones();
            if needed > free || missing & !reachable != 0 {
                self.queue.clear();
                return false;
            }
            if needed == free && needed > 0 {
                for i in 0..self.width {
                    let x = self.window_positions[base + i] as usize;
                    if self.assigned[x] {
                        continue;
                    }
                    let d = self.domain[x];
                    let nd = d & missing;
                    if nd != d {
                        if nd == 0 {
                            self.queue.clear();
                            return false;
                        }
                        self.narrow(x, nd);
                    }
                }
            }
        }
        true
    }

    fn reset(&mut self) {
        self.domain.fill(self.full);
        self.assigned.fill(false);
        self.trail.clear();
        self.queue.clear();
    }

    /// Restarts with Luby-scaled node limits. A restart that finishes within
    /// its limit is a complete search, so exhaustion is still a proof.
    fn run(mut self) -> (CyclicResult, u64) {
        let mut restart = 1u64;
        let result = loop {
            self.run_limit = self
                .nodes
                .saturating_add(RESTART_UNIT.saturating_mul(luby(restart)))
                .min(self.budget);
            match self.dfs(0, 0) {
                Some(true) => {
                    break CyclicResult::Found(self.domain.iter().map(|d| d.trailing_zeros()).collect())
                }
                Some(false) => break CyclicResult::Exhausted,
                None if self.nodes >= self.budget => break CyclicResult::BudgetExceeded,
                None => {
                    self.reset();
                    self.rng = Some(ChaCha8Rng::seed_from_u64(restart));
                    restart += 1;
                }
            }
        };
        (result, self.nodes)
    }

    /// `Some(true)` solved, `Some(false)` subtree exhausted, `None` out of budget.
    fn dfs(&mut self, p: usize, used: u32) -> Option<bool> {
        if p == self.q {
            return Some(true);
        }
        let mut choices = self.domain[p];
        if self.symmetry_breaking {
            let limit = (used + 1).min(64);
            if limit < 64 {
                choices &= (1u64 << limit) - 1;
            }
        }
        while choices != 0 {
            let color = match self.rng.as_mut() {
                Some(rng) => {
                    let pick = rng.gen_range(0..choices.count_ones());
                    nth_bit(choices, pick)
                }
                None => choices.trailing_zeros(),
            };
            choices &= !(1u64 << color);
            if self.nodes >= self.run_limit {
                return None;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            self.assigned[p] = true;
            self.narrow(p, 1u64 << color);
            if self.propagate() {
                match self.dfs(p + 1, used.max(color + 1)) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            self.assigned[p] = false;
            self.undo_to(mark);
        }
        Some(false)
    }
}

/// Nodes of the shortest restart.
const RESTART_UNIT: u64 = 256;

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, ... (1-based).
fn luby(i: u64) -> u64 {
    let mut i = i;
    loop {
        let k = 64 - i.leading_zeros() as u64;
        if i == (1u64 << k) - 1 {
            return 1 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

/// Index of the `n`-th set bit of `mask`.
fn nth_bit(mut mask: u64, n: u32) -> u32 {
    for _ in 0..n {
        mask &= mask - 1;
    }
    mask.trailing_zeros()
}

/// Colors beyond this many are not supported by the bitmask domains.
pub const MAX_SEARCH_COLORS: u32 = 64;

/// Searches for an `S`-polychromatic `k`-coloring of `Z_q` at one modulus.
///
/// Returns the result together with the number of nodes visited.
pub fn search_cyclic(
    set: &IntegerSet,
    q: u64,
    k: u32,
    node_budget: u64,
    symmetry_breaking: bool,
) -> (CyclicResult, u64) {
    let residues = set.residues(q);
    if k as usize > residues.len() || k > MAX_SEARCH_COLORS {
        return (CyclicResult::Exhausted, 0);
    }
    // Colorings for S and for u S - t correspond through n -> u n - t, so
    // the solver works on the most compact image.
    let (unit, shift, offsets) = compact_image(&residues, q);
    let (result, nodes) =
        CyclicSolver::new(q as usize, k as usize, &offsets, symmetry_breaking, node_budget).run();
    let result = match result {
        CyclicResult::Found(psi) => CyclicResult::Found(
            (0..q)
                .map(|n| {
                    let x = (n as u128 * unit as u128 + (q - shift) as u128) % q as u128;
                    psi[x as usize]
                })
                .collect(),
        ),
        other => other,
    };
    (result, nodes)
}

/// Among units `u <= q / 2`, the image `u S - t` (mod q) of smallest cyclic
/// span, normalized to contain 0 as its least element. Returns `(u, t, image)`.
fn compact_image(residues: &[u64], q: u64) -> (u64, u64, Vec<usize>) {
    let mut best: Option<(u64, u64, u64, Vec<usize>)> = None;
    for u in 1..=(q / 2).max(1) {
        if crate::arith::gcd_u(u, q) != 1 {
            continue;
        }
        let mut image: Vec<u64> = residues
            .iter()
            .map(|&r| ((r as u128 * u as u128) % q as u128) as u64)
            .collect();
        image.sort_unstable();
        // The span is q minus the largest cyclic gap; start after that gap.
        let len = image.len();
        let (gap, start) = (0..len)
            .map(|i| {
                let next = if i + 1 == len { image[0] + q } else { image[i + 1] };
                (next - image[i], (i + 1) % len)
            })
            .max_by_key(|&(g, i)| (g, std::cmp::Reverse(i)))
            .expect("nonempty");
        let span = q - gap;
        if best.as_ref().is_some_and(|b| b.0 <= span) {
            continue;
        }
        let t = image[start];
        let mut offsets: Vec<usize> = image.iter().map(|&x| ((x + q - t) % q) as usize).collect();
        offsets.sort_unstable();
        best = Some((span, u, t, offsets));
    }
    let (_, u, t, offsets) = best.expect("1 is a unit");
    (u, t, offsets)
}

/// Per-modulus node budget of the first round.
const INITIAL_ROUND_BUDGET: u64 = 4096;

/// Searches moduli in the configured range.
///
/// The search runs in rounds. Each round visits the still-open moduli in
/// ascending order with a per-modulus node budget, which grows fourfold per
/// round up to `node_budget`; a modulus searched to completion is closed.
/// The first witness met is returned, so it is the smallest-`q` witness
/// findable within the current round's budget rather than the global
/// minimum. Moduli are processed in batches of `parallelism`, and the
/// outcome does not depend on the worker count.
pub fn search_coloring(set: &IntegerSet, config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    if set.min() != 0 {
        return Err(Error::InvalidConfig("search expects a set with minimum 0".into()));
    }
    let moduli: Vec<u64> = config.schedule(set).collect();
    par::with_jobs(config.parallelism, |exec| {
        search_moduli(set, config, &moduli, exec)
    })
}

fn search_moduli(
    set: &IntegerSet,
    config: &SearchConfig,
    moduli: &[u64],
    exec: Execution,
) -> Result<SearchOutcome> {
    let mut stats = SearchStats::default();
    let mut open: Vec<u64> = moduli.to_vec();
    let mut budget = INITIAL_ROUND_BUDGET.min(config.node_budget);
    loop {
        let mut still_open = Vec::new();
        for batch in open.chunks(config.parallelism) {
            let results = par::map(exec, batch, |&q| {
                search_cyclic(set, q, config.k, budget, config.symmetry_breaking)
            });
            for (&q, (result, nodes)) in batch.iter().zip(results) {
                stats.nodes += nodes;
                if !stats.tried.contains(&q) {
                    stats.tried.push(q);
                }
                match result {
                    CyclicResult::Found(word) => {
                        let coloring = PeriodicColoring::new(config.k, word)?;
                        if !verify_polychromatic_mod(set, q, &coloring) {
                            return Err(Error::ConstructionFailed {
                                subcase: "search".into(),
                                detail: format!("witness at q={q} failed verification"),
                            });
                        }
                        stats.tried.sort_unstable();
                        return Ok(SearchOutcome {
                            status: SearchStatus::Found,
                            witness: Some((q, coloring)),
                            stats,
                        });
                    }
                    CyclicResult::Exhausted => {}
                    CyclicResult::BudgetExceeded => still_open.push(q),
                }
            }
        }
        open = still_open;
        if open.is_empty() || budget >= config.node_budget {
            break;
        }
        budget = budget.saturating_mul(4).min(config.node_budget);
    }
    stats.tried.sort_unstable();
    Ok(SearchOutcome {
        status: if open.is_empty() {
            SearchStatus::ExhaustedRange
        } else {
            SearchStatus::BudgetExceeded
        },
        witness: None,
        stats,
    })
}

/// Expresses a coloring of the canonical form of `set` as one of `set`.
pub(crate) fn lift_canonical(set: &IntegerSet, canonical_coloring: &PeriodicColoring) -> PeriodicColoring {
    let canon = canonicalize(set);
    canonical_coloring
        .stretched(canon.scale as u64)
        .shifted(-canon.shift)
}

/// Largest `k` for which search finds an `S`-polychromatic `k`-coloring,
/// together with the witness. Always at least 2 for `|S| >= 2`.
///
/// For prime-power `|S|` the step `k = |S|` is settled by Newman's
/// criterion and a tiling witness instead of search.
pub fn pnum_lower_bound(set: &IntegerSet, config: &SearchConfig) -> Result<(u32, PeriodicColoring)> {
    if set.len() < 2 {
        return Err(Error::TooSmall {
            needed: 2,
            got: set.len(),
        });
    }
    let canon = canonicalize(set);
    let mut best = (2, two_coloring(set)?);
    for k in 3..=set.len() as u32 {
        if k as usize == set.len() {
            // An |S|-coloring exists exactly when S tiles.
            if let Ok(tiles) = newman_tiles(&canon.set) {
                if !tiles {
                    break;
                }
                let witness = find_tiling_complement(&canon.set, default_modulus_bound(&canon.set));
                if let Some(coloring) = witness.and_then(|w| coloring_from_tiling(&canon.set, &w).ok()) {
                    best = (k, lift_canonical(set, &coloring));
                    break;
                }
            }
        }
        let cfg = SearchConfig { k, ..config.clone() };
        let outcome = search_coloring(&canon.set, &cfg)?;
        match outcome.witness {
            Some((_, coloring)) => best = (k, lift_canonical(set, &coloring)),
            None => break,
        }
    }
    debug_assert!(verify_polychromatic(set, &best.1));
    Ok(best)
}

/// Exact polychromatic number for `|S| <= 4`.
///
/// Sets of size 3 or 4 have `p(S) = |S|` when they tile `Z` and `|S| - 1`
/// otherwise; sizes 1 and 2 always tile.
pub fn pnum_exact_small(set: &IntegerSet) -> Result<u32> {
    let n = set.len();
    match n {
        1 | 2 => Ok(n as u32),
        3 | 4 => Ok(if newman_tiles(set)? {
            n as u32
        } else {
            n as u32 - 1
        }),
        _ => Err(Error::TooLarge { max: 4, got: n }),
    }
}
