//! Covering numbers `C(n, k, t)` and `C*(n, k) = C(n, n-k, 2k-1)`.
//!
//! Two exact searches are provided. The block side picks `k`-blocks until
//! every `t`-set is covered. The transversal side looks for the fewest
//! `(n-k)`-edges on `[n]` whose transversal number exceeds `t`; complements
//! of such edges are exactly the blocks of a covering. The two searches
//! share no code, so agreement between them is a real cross-check.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{constraint, precondition, Result};
use crate::hypergraph::{build_H_nk, Hypergraph};
use crate::search::{Budget, Meter, Status};
use crate::subset::{binomial, KSubset, KSubsets, SubMasks};
use crate::transversal::{min_transversal, tau_at_least};
use crate::Value;

/// `ceil(C(n, t) / C(k, t))`, the double-counting lower bound on `C(n, k, t)`.
pub fn steiner_lower_bound(n: usize, k: usize, t: usize) -> Result<u64> {
    if !(n >= k && k >= t) {
        return Err(constraint("n >= k >= t", format!("({n}, {k}, {t})")));
    }
    Ok(binomial(n, t).div_ceil(binomial(k, t)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringInstance {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub status: Status,
    pub lower: u64,
    pub upper: u64,
    /// Blocks of a covering of size `upper`.
    pub blocks: Vec<KSubset>,
    pub nodes_expanded: u64,
}

impl CoveringInstance {
    pub fn value(&self) -> Value {
        Value::from_bounds(self.lower, self.upper)
    }

    pub fn exact(&self) -> Option<u64> {
        (self.status == Status::Exact).then_some(self.upper)
    }

    /// Independently re-checks that the blocks form an `(n, k, t)` covering.
    pub fn validates(&self) -> bool {
        self.blocks.len() as u64 == self.upper
            && self.blocks.iter().all(|b| b.size() == self.k && b.ground() == self.n)
            && KSubsets::new(self.n, self.t)
                .all(|s| self.blocks.iter().any(|b| s.is_subset_of(b)))
    }
}

/// Result of the transversal-side search.
#[derive(Clone, Debug, Serialize)]
pub struct MinEdges {
    pub n: usize,
    pub r: usize,
    pub target_tau: usize,
    pub status: Status,
    pub lower: u64,
    pub upper: u64,
    /// An `r`-uniform hypergraph with `upper` edges and `tau >= target_tau`.
    pub witness: Hypergraph,
    pub nodes_expanded: u64,
}

impl MinEdges {
    pub fn value(&self) -> Value {
        Value::from_bounds(self.lower, self.upper)
    }

    pub fn exact(&self) -> Option<u64> {
        (self.status == Status::Exact).then_some(self.upper)
    }
}

fn ground_mask(n: usize) -> u64 {
    KSubset::full(n).map(|s| s.bits()).unwrap_or(u64::MAX)
}

/// Fewest `r`-edges on `[n]` with transversal number at least `target`.
///
/// The first edge is fixed to `{1..r}` (every nonempty hypergraph has an
/// isomorphic copy containing it, and it is colex-least); further edges
/// are added in increasing colex order. A partial family is abandoned when
/// even raising its transversal number by one per remaining edge cannot
/// reach `target`.
pub fn min_edges_with_transversal(
    n: usize,
    r: usize,
    target: usize,
    budget: Budget,
    extra_witness: Option<Hypergraph>,
) -> Result<MinEdges> {
    if r == 0 || r > n || n > 64 {
        return Err(constraint("1 <= r <= n <= 64", format!("n = {n}, r = {r}")));
    }
    if target + r > n + 1 {
        return Err(constraint(
            "target <= n - r + 1",
            format!("no {r}-graph on {n} vertices has transversal number {target}"),
        ));
    }
    // Known upper witnesses: disjoint edges, or the complete r-graph on
    // target + r - 1 vertices (transversal number exactly target).
    let mut witness = if r * target <= n {
        crate::hypergraph::build_disjoint_edges(n, r, target)?
    } else {
        let v = target + r - 1;
        let edges = KSubsets::new(v, r)
            .map(|s| KSubset::from_bits_unchecked(n, s.bits()))
            .collect();
        Hypergraph::new(n, r, edges)?
    };
    if let Some(extra) = extra_witness {
        let ok = extra.n() == n
            && extra.k() == r
            && tau_at_least(&extra.edge_masks(), target)
            && extra.edge_count() < witness.edge_count();
        if ok {
            witness = extra;
        }
    }
    let mut upper = witness.edge_count() as u64;
    let mut lower = target as u64;
    let pool: Vec<u64> = KSubsets::new(n, r).map(|s| s.bits()).collect();
    let mut meter = Meter::new(budget);

    while lower < upper {
        let m = lower as usize;
        let mut chosen = vec![pool[0]];
        let found = if target == 0 || m == 0 {
            None
        } else {
            exists_family(&pool, m, target, &mut chosen, 1, &mut meter)
        };
        if meter.exhausted() {
            break;
        }
        match found {
            Some(edges) => {
                upper = m as u64;
                witness = Hypergraph::new(
                    n,
                    r,
                    edges
                        .into_iter()
                        .map(|b| KSubset::from_bits_unchecked(n, b))
                        .collect(),
                )?;
            }
            None => lower += 1,
        }
    }
    Ok(MinEdges {
        n,
        r,
        target_tau: target,
        status: if lower == upper {
            Status::Exact
        } else {
            Status::Incomplete
        },
        lower,
        upper,
        witness,
        nodes_expanded: meter.nodes(),
    })
}

fn exists_family(
    pool: &[u64],
    m: usize,
    target: usize,
    chosen: &mut Vec<u64>,
    next: usize,
    meter: &mut Meter,
) -> Option<Vec<u64>> {
    if !meter.tick() {
        return None;
    }
    let remaining = m - chosen.len();
    if remaining == 0 {
        return tau_at_least(chosen, target).then(|| chosen.clone());
    }
    if target > remaining && !tau_at_least(chosen, target - remaining) {
        return None;
    }
    for i in next..=pool.len() - remaining {
        chosen.push(pool[i]);
        let found = exists_family(pool, m, target, chosen, i + 1, meter);
        chosen.pop();
        if found.is_some() || meter.exhausted() {
            return found;
        }
    }
    None
}

struct BlockSearch<'a> {
    blocks: &'a [u64],
    covers: &'a [FixedBitSet],
    containing: &'a [Vec<usize>],
    per_block: usize,
    meter: Meter,
    best: Vec<usize>,
}

impl BlockSearch<'_> {
    fn rec(&mut self, covered: &FixedBitSet, uncovered: usize, chosen: &mut Vec<usize>) {
        if !self.meter.tick() {
            return;
        }
        if chosen.len() + uncovered.div_ceil(self.per_block) >= self.best.len() {
            return;
        }
        let Some(first) = covered.zeroes().next() else {
            self.best = chosen.clone();
            return;
        };
        // The first uncovered t-set at the root is {1..t}; all blocks through
        // it are equivalent under relabelling, so only {1..k} is tried.
        let options: &[usize] = if chosen.is_empty() {
            &self.containing[first][..1]
        } else {
            &self.containing[first]
        };
        for &b in options {
            let mut next = covered.clone();
            next.union_with(&self.covers[b]);
            let now = next.count_ones(..);
            chosen.push(b);
            self.rec(&next, covered.len() - now, chosen);
            chosen.pop();
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

/// Exact `C(n, k, t)` by searching over block families directly.
pub fn covering_by_blocks(n: usize, k: usize, t: usize, budget: Budget) -> Result<CoveringInstance> {
    if !(n >= k && k >= t && t >= 1) || n > 64 {
        return Err(constraint("n >= k >= t >= 1", format!("({n}, {k}, {t})")));
    }
    let tsets: Vec<u64> = KSubsets::new(n, t).map(|s| s.bits()).collect();
    let blocks: Vec<u64> = KSubsets::new(n, k).map(|s| s.bits()).collect();
    let index_of = |bits: u64| KSubset::from_bits_unchecked(n, bits).colex_rank() as usize;
    let mut covers = Vec::with_capacity(blocks.len());
    let mut containing = vec![Vec::new(); tsets.len()];
    for (bi, &b) in blocks.iter().enumerate() {
        let mut cov = FixedBitSet::with_capacity(tsets.len());
        for s in SubMasks::new(b, t) {
            let si = index_of(s);
            cov.insert(si);
            containing[si].push(bi);
        }
        covers.push(cov);
    }

    // greedy: most newly covered t-sets, lowest index on ties
    let mut covered = FixedBitSet::with_capacity(tsets.len());
    let mut greedy = Vec::new();
    while covered.count_ones(..) < tsets.len() {
        let b = (0..blocks.len())
            .max_by_key(|&b| {
                let gain = covers[b].difference(&covered).count();
                (gain, std::cmp::Reverse(b))
            })
            .unwrap();
        covered.union_with(&covers[b]);
        greedy.push(b);
    }

    let mut search = BlockSearch {
        blocks: &blocks,
        covers: &covers,
        containing: &containing,
        per_block: binomial(k, t) as usize,
        meter: Meter::new(budget),
        best: greedy,
    };
    let mut chosen = Vec::new();
    search.rec(
        &FixedBitSet::with_capacity(tsets.len()),
        tsets.len(),
        &mut chosen,
    );
    let upper = search.best.len() as u64;
    let (status, lower) = if search.meter.exhausted() {
        (Status::Incomplete, steiner_lower_bound(n, k, t)?.min(upper))
    } else {
        (Status::Exact, upper)
    };
    let mut out: Vec<KSubset> = search
        .best
        .iter()
        .map(|&b| KSubset::from_bits_unchecked(n, search.blocks[b]))
        .collect();
    out.sort();
    Ok(CoveringInstance {
        n,
        k,
        t,
        status,
        lower,
        upper,
        blocks: out,
        nodes_expanded: search.meter.nodes(),
    })
}

/// `C(n, k, t)`. Uses the transversal side when blocks are co-small
/// (`n - k <= 2`), the block side otherwise.
pub fn covering_number(n: usize, k: usize, t: usize, budget: Budget) -> Result<CoveringInstance> {
    if !(n >= k && k >= t && t >= 1) || n > 64 {
        return Err(constraint("n >= k >= t >= 1", format!("({n}, {k}, {t})")));
    }
    if k == n {
        return Ok(CoveringInstance {
            n,
            k,
            t,
            status: Status::Exact,
            lower: 1,
            upper: 1,
            blocks: vec![KSubset::full(n)?],
            nodes_expanded: 0,
        });
    }
    if n - k > 2 {
        return covering_by_blocks(n, k, t, budget);
    }
    let dual = min_edges_with_transversal(n, n - k, t + 1, budget, None)?;
    let full = ground_mask(n);
    let mut blocks: Vec<KSubset> = dual
        .witness
        .edges()
        .iter()
        .map(|e| KSubset::from_bits_unchecked(n, full & !e.bits()))
        .collect();
    blocks.sort();
    let lower = dual.lower.max(steiner_lower_bound(n, k, t)?).min(dual.upper);
    Ok(CoveringInstance {
        n,
        k,
        t,
        status: dual.status,
        lower,
        upper: dual.upper,
        blocks,
        nodes_expanded: dual.nodes_expanded,
    })
}

/// `C*(n, k)`: fewest edges of a `k`-graph on `n` vertices with transversal
/// number `2k`, equivalently `C(n, n-k, 2k-1)`. Defined for `n >= 3k`,
/// `k >= 2`.
pub fn c_star(n: usize, k: usize, budget: Budget) -> Result<MinEdges> {
    if k < 2 || n < 3 * k {
        return Err(precondition(
            "n >= 3k and k >= 2",
            format!("C*(n, k) is not defined for n = {n}, k = {k}"),
        ));
    }
    let extra = if k >= 3 && n + 5 >= 7 * k {
        Some(build_H_nk(n, k)?)
    } else {
        None
    };
    min_edges_with_transversal(n, k, 2 * k, budget, extra)
}

/// Exact transversal number of `witness` for callers that want to restate it.
pub fn witness_tau(witness: &Hypergraph) -> usize {
    min_transversal(&witness.edge_masks()).0
}
