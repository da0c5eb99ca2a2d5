//! Suspensions of `C4` and `K4` and exact Turán numbers at small order.
//!
//! Every edge of a suspension is `Y ∪ {z_i, z_j}` for a fixed `(k-2)`-set
//! `Y`, so a hypergraph contains one iff the link graph of some `(k-2)`-set
//! contains `C4` (resp. `K4`). Both the containment test and the search
//! work on link graphs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::{constraint, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::search::{maximize, Budget, HereditaryFamily, Status};
use crate::subset::{binomial, KSubset, KSubsets, SubMasks};
use crate::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    C4Suspension,
    K4Suspension,
}

impl PatternKind {
    fn tag(&self) -> &'static str {
        match self {
            PatternKind::C4Suspension => "c4sus",
            PatternKind::K4Suspension => "k4sus",
        }
    }

    /// Pairs of `z` indices joined to the apex.
    fn pairs(&self) -> &'static [(usize, usize)] {
        match self {
            PatternKind::C4Suspension => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            PatternKind::K4Suspension => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        }
    }
}

/// A `k`-uniform suspension on abstract vertices `Y = {1..k-2}` and
/// `z1..z4 = k-1..k+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    kind: PatternKind,
    k: usize,
}

impl Pattern {
    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn apex_size(&self) -> usize {
        self.k - 2
    }

    /// Template edges over the `k + 2` abstract vertices.
    pub fn template(&self) -> Hypergraph {
        let v = self.k + 2;
        let apex = (1u64 << (self.k - 2)) - 1;
        let z = |i: usize| 1u64 << (self.k - 2 + i);
        let mut edges: Vec<KSubset> = self
            .kind
            .pairs()
            .iter()
            .map(|&(i, j)| KSubset::from_bits_unchecked(v, apex | z(i) | z(j)))
            .collect();
        edges.sort();
        Hypergraph::new(v, self.k, edges).expect("template is a valid hypergraph")
    }
}

pub fn build_c4_suspension(k: usize) -> Result<Pattern> {
    build(PatternKind::C4Suspension, k)
}

pub fn build_k4_suspension(k: usize) -> Result<Pattern> {
    build(PatternKind::K4Suspension, k)
}

fn build(kind: PatternKind, k: usize) -> Result<Pattern> {
    if k < 2 {
        return Err(constraint("k >= 2", format!("k = {k}")));
    }
    if k + 2 > 64 {
        return Err(constraint("k + 2 <= 64", format!("k = {k}")));
    }
    Ok(Pattern { kind, k })
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:k={}", self.kind.tag(), self.k)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("pattern `{s}` lacks `:k=`")))?;
        let k = rest
            .strip_prefix("k=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("pattern `{s}`: expected `k=<int>`")))?;
        match tag {
            "c4sus" => build_c4_suspension(k),
            "k4sus" => build_k4_suspension(k),
            _ => Err(Error::Parse(format!("unknown pattern `{tag}`"))),
        }
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Where a pattern sits in a host: the apex `Y` and `z1..z4` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub apex: Vec<usize>,
    pub z: [usize; 4],
}

impl Embedding {
    /// Host edges hit by the embedded template, in template order.
    pub fn image(&self, p: &Pattern, n: usize) -> Vec<KSubset> {
        let apex: u64 = self.apex.iter().map(|&v| 1u64 << (v - 1)).sum();
        p.kind
            .pairs()
            .iter()
            .map(|&(i, j)| {
                KSubset::from_bits_unchecked(n, apex | 1u64 << (self.z[i] - 1) | 1u64 << (self.z[j] - 1))
            })
            .collect()
    }
}

/// Link graph of `apex` in `edges`, as 0-based neighbour masks.
fn link(edges: impl IntoIterator<Item = u64>, apex: u64) -> [u64; 64] {
    let mut adj = [0u64; 64];
    for e in edges {
        if e & apex == apex {
            let rest = e & !apex;
            let a = rest.trailing_zeros() as usize;
            let b = 63 - rest.leading_zeros() as usize;
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    adj
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// A `C4` or `K4` in the graph with neighbour masks `adj`, as `z1..z4`
/// (0-based) in cyclic order for `C4`.
fn find_in_link(adj: &[u64; 64], kind: PatternKind) -> Option<[usize; 4]> {
    let support: u64 = adj.iter().enumerate().filter(|(_, m)| **m != 0).map(|(i, _)| 1u64 << i).sum();
    for a in bits(support) {
        match kind {
            PatternKind::C4Suspension => {
                for c in bits(support & !((2u64 << a) - 1)) {
                    let common = adj[a] & adj[c];
                    if common.count_ones() >= 2 {
                        let b = common.trailing_zeros() as usize;
                        let d = 63 - common.leading_zeros() as usize;
                        return Some([a, b, c, d]);
                    }
                }
            }
            PatternKind::K4Suspension => {
                for b in bits(adj[a] & !((2u64 << a) - 1)) {
                    let common = adj[a] & adj[b];
                    for c in bits(common) {
                        let d = adj[c] & common;
                        if d != 0 {
                            return Some([a, b, c, d.trailing_zeros() as usize]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// An injective embedding of `p` into `h`, if any.
pub fn contains_pattern(h: &Hypergraph, p: &Pattern) -> Result<Option<Embedding>> {
    if h.k() != p.k() {
        return Err(Error::Domain(format!(
            "{p} needs a {}-uniform host, got uniformity {}",
            p.k(),
            h.k()
        )));
    }
    let masks = h.edge_masks();
    let mut apexes = BTreeSet::new();
    for &e in &masks {
        apexes.extend(SubMasks::new(e, p.apex_size()));
    }
    for apex in apexes {
        if let Some(z) = find_in_link(&link(masks.iter().copied(), apex), p.kind) {
            return Ok(Some(Embedding {
                apex: bits(apex).map(|v| v + 1).collect(),
                z: z.map(|v| v + 1),
            }));
        }
    }
    Ok(None)
}

/// `ex(n, K4) = floor(n^2 / 3)`.
pub fn turan_k4_closed(n: u64) -> u64 {
    n * n / 3
}

/// `n^(k - 1/2) / k!`, the leading term of the `C4`-suspension Turán
/// number. An asymptotic guide only; it is neither an upper nor a lower
/// bound at any fixed `n`.
pub fn mubayi_asymptote(n: u64, k: u32) -> f64 {
    let factorial: f64 = (1..=k).map(f64::from).product();
    (n as f64).powf(k as f64 - 0.5) / factorial
}

#[derive(Clone, Debug, Serialize)]
pub struct TuranResult {
    pub n: usize,
    pub k: usize,
    pub pattern: Pattern,
    pub value: Value,
    /// Pattern-free, with `value.lo()` edges.
    pub extremal_witness: Hypergraph,
    pub status: Status,
    pub nodes_expanded: u64,
    /// Present for incomplete results; non-binding.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mubayi_guide: Option<f64>,
}

impl TuranResult {
    pub fn exact(&self) -> Option<u64> {
        self.value.exact()
    }
}

struct PatternFree<'a> {
    edges: &'a [u64],
    pattern: Pattern,
}

impl PatternFree<'_> {
    /// Whether edge `ab` closes a copy in the link graph `adj`.
    fn closes(&self, adj: &[u64; 64], a: usize, b: usize) -> bool {
        match self.pattern.kind {
            // path b - c - d - a
            PatternKind::C4Suspension => {
                bits(adj[b] & !(1u64 << a)).any(|c| adj[c] & adj[a] & !(1u64 << b) != 0)
            }
            PatternKind::K4Suspension => {
                let common = adj[a] & adj[b];
                bits(common).any(|c| adj[c] & common != 0)
            }
        }
    }
}

impl HereditaryFamily for PatternFree<'_> {
    fn universe(&self) -> usize {
        self.edges.len()
    }

    fn can_add(&self, _chosen: &FixedBitSet, members: &[usize], candidate: usize) -> bool {
        let e = self.edges[candidate];
        SubMasks::new(e, self.pattern.apex_size()).all(|apex| {
            let adj = link(
                members.iter().map(|&m| self.edges[m]).filter(|&m| m != e),
                apex,
            );
            let pair = e & !apex;
            let a = pair.trailing_zeros() as usize;
            let b = 63 - pair.leading_zeros() as usize;
            !self.closes(&adj, a, b)
        })
    }
}

/// `ex_k(n, p)`: the most edges of a `p`-free `k`-graph on `[n]`, with the
/// colex-least extremal witness. Falls back to an interval when the budget
/// runs out; the upper end then only uses that the complete `k`-graph on
/// `k + 2` or more vertices contains `p`.
pub fn ex_uniform(n: usize, k: usize, p: &Pattern, budget: Budget) -> Result<TuranResult> {
    if k != p.k() {
        return Err(Error::Domain(format!("{p} is not {k}-uniform")));
    }
    if n < k || n > 64 {
        return Err(constraint("k <= n <= 64", format!("n = {n}, k = {k}")));
    }
    let edges: Vec<u64> = KSubsets::new(n, k).map(|s| s.bits()).collect();
    let found = maximize(
        &PatternFree {
            edges: &edges,
            pattern: *p,
        },
        budget,
    );
    let witness = Hypergraph::new(
        n,
        k,
        found
            .best
            .iter()
            .map(|&i| KSubset::from_bits_unchecked(n, edges[i]))
            .collect(),
    )?;
    let lo = witness.edge_count() as u64;
    let (value, mubayi_guide) = match found.status {
        Status::Exact => (Value::Exact(lo), None),
        Status::Incomplete => {
            let all = binomial(n, k);
            let hi = if n >= k + 2 { all - 1 } else { all };
            (
                Value::from_bounds(lo, hi.max(lo)),
                Some(mubayi_asymptote(n as u64, k as u32)),
            )
        }
    };
    Ok(TuranResult {
        n,
        k,
        pattern: *p,
        value,
        extremal_witness: witness,
        status: found.status,
        nodes_expanded: found.nodes,
        mubayi_guide,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::build_complete_uniform;
    use std::collections::HashSet;
    use proptest::prelude::*;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> Hypergraph {
        let mut edges: Vec<KSubset> = pairs
            .iter()
            .map(|&(a, b)| KSubset::new(n, [a, b]).unwrap())
            .collect();
        edges.sort();
        Hypergraph::new(n, 2, edges).unwrap()
    }

    /// Pattern containment by trying every injective map of the `k + 2`
    /// template vertices into `[n]`.
    fn contains_brute_force(h: &Hypergraph, p: &Pattern) -> bool {
        let host: HashSet<u64> = h.edge_masks().into_iter().collect();
        let template = p.template().edge_masks();
        let v = p.k() + 2;
        let n = h.n();
        fn rec(
            map: &mut Vec<usize>,
            v: usize,
            n: usize,
            template: &[u64],
            host: &HashSet<u64>,
        ) -> bool {
            if map.len() == v {
                return template.iter().all(|&t| {
                    let img: u64 = (0..v).filter(|i| t >> i & 1 == 1).map(|i| 1u64 << map[i]).sum();
                    host.contains(&img)
                });
            }
            for x in 0..n {
                if !map.contains(&x) {
                    map.push(x);
                    if rec(map, v, n, template, host) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        rec(&mut Vec::new(), v, n, &template, &host)
    }

    /// Largest pattern-free subfamily of all `k`-sets by exhaustive
    /// enumeration of edge subsets.
    fn ex_brute_force(n: usize, k: usize, p: &Pattern) -> usize {
        let all: Vec<KSubset> = KSubsets::new(n, k).collect();
        assert!(all.len() <= 20);
        let mut best = 0;
        for mask in 0u32..1 << all.len() {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let edges = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            let h = Hypergraph::new(n, k, edges).unwrap();
            if !contains_brute_force(&h, p) {
                best = size;
            }
        }
        best
    }

    #[test]
    fn templates() {
        let c4 = build_c4_suspension(2).unwrap();
        assert_eq!(c4.template(), graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]));
        let c3 = build_c4_suspension(3).unwrap().template();
        assert_eq!((c3.n(), c3.edge_count()), (5, 4));
        assert!(c3.edges().iter().all(|e| e.contains(1)));
        let c4_4 = build_c4_suspension(4).unwrap().template();
        assert!(c4_4.edges().iter().all(|e| e.contains(1) && e.contains(2)));
        let k4 = build_k4_suspension(2).unwrap();
        assert_eq!(k4.template(), build_complete_uniform(4, 2).unwrap());
        assert_eq!(build_k4_suspension(3).unwrap().template().edge_count(), 6);
        assert!(c4.template().edges().iter().all(|e| k4.template().edges().contains(e)));
        assert!(build_c4_suspension(1).is_err());
        assert_eq!("k4sus:k=2".parse::<Pattern>().unwrap(), k4);
        assert_eq!(c4.to_string(), "c4sus:k=2");
        assert!("c5sus:k=2".parse::<Pattern>().is_err());
    }

    #[test]
    fn containment_examples() {
        let c4 = build_c4_suspension(2).unwrap();
        let cycle = graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let emb = contains_pattern(&cycle, &c4).unwrap().unwrap();
        let image: HashSet<KSubset> = emb.image(&c4, 4).into_iter().collect();
        assert_eq!(image.len(), 4);
        assert!(image.iter().all(|e| cycle.edges().contains(e)));
        let pendant = graph(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]);
        assert!(contains_pattern(&pendant, &c4).unwrap().is_none());
        let c3 = build_c4_suspension(3).unwrap();
        assert!(contains_pattern(&build_complete_uniform(5, 3).unwrap(), &c3)
            .unwrap()
            .is_some());
        assert!(contains_pattern(&cycle, &c3).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(turan_k4_closed(4), 5);
        assert_eq!(turan_k4_closed(6), 12);
        assert_eq!(turan_k4_closed(1), 0);
        assert!((mubayi_asymptote(100, 2) - 500.0).abs() < 1e-9);
        assert!((mubayi_asymptote(1, 2) - 0.5).abs() < 1e-12);
        assert!((mubayi_asymptote(16, 2) - 32.0).abs() < 1e-9);
    }

    #[test]
    fn ex_c4_small() {
        let c4 = build_c4_suspension(2).unwrap();
        for (n, want) in [(4, 4), (5, 6), (6, 7)] {
            let r = ex_uniform(n, 2, &c4, Budget::default()).unwrap();
            assert_eq!(r.exact(), Some(want));
            assert!(contains_pattern(&r.extremal_witness, &c4).unwrap().is_none());
        }
    }

    #[test]
    fn ex_matches_brute_force() {
        for (n, k) in [(4, 2), (5, 2), (6, 2), (5, 3)] {
            for p in [build_c4_suspension(k).unwrap(), build_k4_suspension(k).unwrap()] {
                let r = ex_uniform(n, k, &p, Budget::default()).unwrap();
                assert_eq!(r.exact(), Some(ex_brute_force(n, k, &p) as u64), "{p} n={n}");
            }
        }
    }

    #[test]
    fn ex_k4_matches_closed_form() {
        let k4 = build_k4_suspension(2).unwrap();
        for n in 4..=8 {
            let r = ex_uniform(n, 2, &k4, Budget::default()).unwrap();
            assert_eq!(r.exact(), Some(turan_k4_closed(n as u64)), "n = {n}");
            assert!(contains_pattern(&r.extremal_witness, &k4).unwrap().is_none());
        }
    }

    #[test]
    fn monotone_in_n_and_c4_below_k4() {
        let c4 = build_c4_suspension(2).unwrap();
        let k4 = build_k4_suspension(2).unwrap();
        let ex = |n, p: &Pattern| ex_uniform(n, 2, p, Budget::default()).unwrap().exact().unwrap();
        for n in 4..7 {
            assert!(ex(n, &c4) <= ex(n + 1, &c4));
        }
        for n in 4..=6 {
            assert!(ex(n, &c4) <= ex(n, &k4));
        }
    }

    #[test]
    fn budget_exhaustion_gives_interval() {
        let c3 = build_c4_suspension(3).unwrap();
        let r = ex_uniform(8, 3, &c3, Budget::nodes(50)).unwrap();
        assert_eq!(r.status, Status::Incomplete);
        assert!(r.value.lo() < r.value.hi());
        assert!(r.mubayi_guide.is_some());
        assert!(contains_pattern(&r.extremal_witness, &c3).unwrap().is_none());
    }

    proptest! {
        #[test]
        fn link_search_matches_injective_embedding(
            n in 4usize..=6,
            k in 2usize..=3,
            pick in any::<u64>(),
            kind in prop::bool::ANY,
        ) {
            let p = if kind { build_c4_suspension(k).unwrap() } else { build_k4_suspension(k).unwrap() };
            let edges = KSubsets::new(n, k)
                .enumerate()
                .filter(|(i, _)| pick >> (i % 64) & 1 == 1)
                .map(|(_, s)| s)
                .collect();
            let h = Hypergraph::new(n, k, edges).unwrap();
            let found = contains_pattern(&h, &p).unwrap();
            prop_assert_eq!(found.is_some(), contains_brute_force(&h, &p));
            if let Some(emb) = found {
                let host: HashSet<KSubset> = h.edges().iter().copied().collect();
                prop_assert!(emb.image(&p, n).iter().all(|e| host.contains(e)));
            }
        }
    }
}
