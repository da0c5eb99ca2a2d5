//! Exact minimum transversals (hitting sets) of hypergraphs on at most 64
//! vertices.
//!
//! Branch on an unhit edge with the fewest still-allowed vertices; in the
//! i-th branch the edge's first i-1 vertices are forbidden so no transversal
//! is generated twice. A greedy packing of pairwise disjoint unhit edges
//! bounds the number of vertices still needed.

use serde::Serialize;

use crate::hypergraph::Hypergraph;
use crate::subset::KSubset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalCertificate {
    pub tau: usize,
    pub transversal: KSubset,
    /// Set when exhaustive search proved no smaller transversal exists.
    pub optimal: bool,
}

impl TransversalCertificate {
    /// Re-checks that the transversal meets every edge of `h`.
    pub fn validates(&self, h: &Hypergraph) -> bool {
        self.transversal.size() == self.tau && h.is_transversal(self.transversal.bits())
    }
}

struct Solver<'a> {
    edges: &'a [u64],
    best_size: usize,
    best: Option<u64>,
}

impl Solver<'_> {
    fn packing_bound(&self, chosen: u64, forbidden: u64) -> usize {
        let mut used = 0u64;
        let mut count = 0;
        for &e in self.edges {
            if e & chosen != 0 {
                continue;
            }
            let allowed = e & !forbidden;
            if allowed & used == 0 {
                used |= allowed;
                count += 1;
            }
        }
        count
    }

    fn rec(&mut self, chosen: u64, forbidden: u64, size: usize) {
        if size + self.packing_bound(chosen, forbidden) >= self.best_size {
            return;
        }
        let mut pick: Option<u64> = None;
        for &e in self.edges {
            if e & chosen != 0 {
                continue;
            }
            let allowed = e & !forbidden;
            if allowed == 0 {
                return;
            }
            if pick.is_none_or(|p| allowed.count_ones() < p.count_ones()) {
                pick = Some(allowed);
            }
        }
        let Some(mut branch) = pick else {
            self.best_size = size;
            self.best = Some(chosen);
            return;
        };
        let mut forbidden = forbidden;
        while branch != 0 {
            let v = branch & branch.wrapping_neg();
            branch &= branch - 1;
            self.rec(chosen | v, forbidden, size + 1);
            forbidden |= v;
        }
    }
}

fn greedy_transversal(edges: &[u64]) -> u64 {
    let mut chosen = 0u64;
    loop {
        let mut degree = [0u32; 64];
        let mut any = false;
        for &e in edges.iter().filter(|&&e| e & chosen == 0) {
            any = true;
            let mut rest = e;
            while rest != 0 {
                degree[rest.trailing_zeros() as usize] += 1;
                rest &= rest - 1;
            }
        }
        if !any {
            return chosen;
        }
        let v = (0..64).max_by_key(|&i| (degree[i], std::cmp::Reverse(i))).unwrap();
        chosen |= 1u64 << v;
    }
}

/// Minimum transversal of the edge masks, as `(size, mask)`.
pub(crate) fn min_transversal(edges: &[u64]) -> (usize, u64) {
    let greedy = greedy_transversal(edges);
    let mut solver = Solver {
        edges,
        best_size: greedy.count_ones() as usize,
        best: None,
    };
    solver.rec(0, 0, 0);
    match solver.best {
        Some(mask) => (solver.best_size, mask),
        None => (greedy.count_ones() as usize, greedy),
    }
}

/// Whether every transversal has at least `target` vertices. Stops at the
/// first transversal smaller than `target`.
pub(crate) fn tau_at_least(edges: &[u64], target: usize) -> bool {
    if target == 0 {
        return true;
    }
    if (greedy_transversal(edges).count_ones() as usize) < target {
        return false;
    }
    let mut solver = Solver {
        edges,
        best_size: target,
        best: None,
    };
    solver.rec(0, 0, 0);
    solver.best.is_none()
}

/// Exact transversal number with a minimum transversal.
pub fn transversal_number(h: &Hypergraph) -> TransversalCertificate {
    let (tau, mask) = min_transversal(&h.edge_masks());
    TransversalCertificate {
        tau,
        transversal: KSubset::from_bits_unchecked(h.n(), mask),
        optimal: true,
    }
}
