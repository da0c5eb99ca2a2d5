//! Budgeted branch-and-bound for the largest member of a hereditary family.
//!
//! The search branches on the highest-index undecided element and explores
//! the "exclude" child first, so complete sets are reached in increasing
//! colex order. With pruning on `bound <= best` the first optimum found is
//! therefore the colex-least one, which makes results independent of any
//! seeding heuristic.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::Serialize;

/// Node and wall-clock limits for one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 10_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Incomplete,
}

/// Counts expanded nodes against a [`Budget`].
#[derive(Debug)]
pub struct Meter {
    budget: Budget,
    start: Instant,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Self {
            budget,
            start: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Records one node; returns `false` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes & 0x3ff == 0 && self.start.elapsed() > self.budget.time_limit)
        {
            self.exhausted = true;
        }
        !self.exhausted
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}

/// A family of subsets of `0..universe()` closed under taking subsets.
///
/// `accept` may single out a non-hereditary subfamily; the search then
/// maximizes over accepted members only, using the hereditary family for
/// bounding.
pub trait HereditaryFamily {
    fn universe(&self) -> usize;

    /// Whether `members + candidate` stays in the family, given that
    /// `members` (mirrored in `chosen`) already is.
    fn can_add(&self, chosen: &FixedBitSet, members: &[usize], candidate: usize) -> bool;

    fn accept(&self, _chosen: &FixedBitSet, _members: &[usize]) -> bool {
        true
    }

    /// True when `accept` holds for every member of the family.
    fn accepts_all(&self) -> bool {
        true
    }
}

#[derive(Clone, Debug)]
pub struct MaxSearch {
    /// Best accepted set found, ascending.
    pub best: Vec<usize>,
    pub status: Status,
    pub nodes: u64,
}

struct Engine<'a, F: HereditaryFamily> {
    family: &'a F,
    meter: Meter,
    chosen: FixedBitSet,
    members: Vec<usize>,
    best: Option<Vec<usize>>,
    threshold: i64,
}

impl<F: HereditaryFamily> Engine<'_, F> {
    fn rec(&mut self, candidates: &[usize]) {
        if !self.meter.tick() {
            return;
        }
        if (self.members.len() + candidates.len()) as i64 <= self.threshold {
            return;
        }
        let Some((&c, rest)) = candidates.split_last() else {
            if self.family.accepts_all() || self.family.accept(&self.chosen, &self.members) {
                let mut found = self.members.clone();
                found.sort_unstable();
                self.threshold = found.len() as i64;
                self.best = Some(found);
            }
            return;
        };
        self.rec(rest);
        if self.meter.exhausted() {
            return;
        }
        if (self.members.len() + 1 + rest.len()) as i64 <= self.threshold {
            return;
        }
        self.chosen.insert(c);
        self.members.push(c);
        let next: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&d| self.family.can_add(&self.chosen, &self.members, d))
            .collect();
        self.rec(&next);
        self.members.pop();
        self.chosen.set(c, false);
    }
}

fn greedy<F: HereditaryFamily>(family: &F) -> Vec<usize> {
    let mut chosen = FixedBitSet::with_capacity(family.universe());
    let mut members = Vec::new();
    for v in 0..family.universe() {
        if family.can_add(&chosen, &members, v) {
            chosen.insert(v);
            members.push(v);
        }
    }
    members
}

/// Largest accepted member of `family`; colex-least among optima when exact.
pub fn maximize<F: HereditaryFamily>(family: &F, budget: Budget) -> MaxSearch {
    let universe = family.universe();
    let chosen = FixedBitSet::with_capacity(universe);
    let roots: Vec<usize> = (0..universe)
        .filter(|&v| family.can_add(&chosen, &[], v))
        .collect();
    // A greedy member lets the search discard small branches early. The
    // threshold sits one below it so the colex-least optimum is still found.
    let seed = if family.accepts_all() {
        greedy(family)
    } else {
        Vec::new()
    };
    let mut engine = Engine {
        family,
        meter: Meter::new(budget),
        chosen,
        members: Vec::new(),
        best: None,
        threshold: seed.len() as i64 - 1,
    };
    engine.rec(&roots);
    let status = if engine.meter.exhausted() {
        Status::Incomplete
    } else {
        Status::Exact
    };
    let best = match engine.best {
        Some(b) if b.len() >= seed.len() => b,
        _ => seed,
    };
    MaxSearch {
        best,
        status,
        nodes: engine.meter.nodes(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent sets of a graph given by adjacency bitmasks.
    struct Independent(Vec<u64>);

    impl HereditaryFamily for Independent {
        fn universe(&self) -> usize {
            self.0.len()
        }
        fn can_add(&self, _: &FixedBitSet, members: &[usize], c: usize) -> bool {
            members.iter().all(|&m| self.0[m] >> c & 1 == 0)
        }
    }

    /// Even-sized independent sets: not hereditary, bounded by `Independent`.
    struct EvenIndependent(Independent);

    impl HereditaryFamily for EvenIndependent {
        fn universe(&self) -> usize {
            self.0.universe()
        }
        fn can_add(&self, chosen: &FixedBitSet, members: &[usize], c: usize) -> bool {
            self.0.can_add(chosen, members, c)
        }
        fn accept(&self, _: &FixedBitSet, members: &[usize]) -> bool {
            members.len().is_multiple_of(2)
        }
        fn accepts_all(&self) -> bool {
            false
        }
    }

    fn cycle(n: usize) -> Vec<u64> {
        (0..n)
            .map(|i| 1u64 << ((i + 1) % n) | 1u64 << ((i + n - 1) % n))
            .collect()
    }

    fn brute_force(adj: &[u64], accept: impl Fn(usize) -> bool) -> (usize, u64) {
        let n = adj.len();
        let mut best: Option<(usize, u64)> = None;
        for mask in 0u64..1 << n {
            let independent = (0..n).all(|i| mask >> i & 1 == 0 || adj[i] & mask == 0);
            let size = mask.count_ones() as usize;
            if independent && accept(size) && best.is_none_or(|(s, _)| size > s) {
                best = Some((size, mask));
            }
        }
        best.unwrap()
    }

    fn to_mask(v: &[usize]) -> u64 {
        v.iter().map(|&i| 1u64 << i).sum()
    }

    #[test]
    fn finds_colex_least_maximum_independent_set() {
        for n in 3..=11 {
            let adj = cycle(n);
            let got = maximize(&Independent(adj.clone()), Budget::default());
            assert_eq!(got.status, Status::Exact);
            let (size, mask) = brute_force(&adj, |_| true);
            assert_eq!(got.best.len(), size);
            // brute force scans masks in increasing order: first optimum is colex-least
            assert_eq!(to_mask(&got.best), mask, "C{n}");
        }
    }

    #[test]
    fn non_hereditary_acceptance() {
        for n in 3..=11 {
            let adj = cycle(n);
            let got = maximize(&EvenIndependent(Independent(adj.clone())), Budget::default());
            let (size, mask) = brute_force(&adj, |s| s % 2 == 0);
            assert_eq!(got.best.len(), size);
            assert_eq!(to_mask(&got.best), mask);
        }
    }

    #[test]
    fn budget_exhaustion_reports_incomplete() {
        let got = maximize(&Independent(vec![0; 40]), Budget::nodes(50));
        assert_eq!(got.status, Status::Incomplete);
        // greedy seed still gives a valid (here optimal) member
        assert_eq!(got.best.len(), 40);
    }
}
