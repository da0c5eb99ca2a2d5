//! Set systems over `[n]`, their text format, and the extremal constructions
//! used as witnesses for covering-number bounds.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{constraint, Error, Result};
use crate::family::FamilyKind;
use crate::subset::{binomial, KSubset, KSubsets, MAX_GROUND};
use crate::visibility::VertexSet;

/// A hypergraph on vertex set `[n]`.
///
/// `k` is the uniformity; `k = 0` marks a mixed hypergraph (for instance the
/// underlying hypergraph of a bipartite Kneser vertex set).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<KSubset>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: Vec<KSubset>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(constraint("n <= 64", format!("n = {n}")));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.ground() != n {
                return Err(Error::Domain(format!(
                    "edge {e} lives on [{}], hypergraph on [{n}]",
                    e.ground()
                )));
            }
            if e.is_empty() {
                return Err(Error::Domain("the empty set is never an edge".into()));
            }
            if k > 0 && e.size() != k {
                return Err(Error::Domain(format!("edge {e} is not {k}-uniform")));
            }
            if !seen.insert(e.bits()) {
                return Err(Error::Domain(format!("duplicate edge {e}")));
            }
        }
        Ok(Self { n, k, edges })
    }

    /// Builds a hypergraph from sets, inferring uniformity (0 when mixed).
    pub fn from_sets(sets: &[KSubset]) -> Result<Self> {
        let Some(first) = sets.first() else {
            return Err(Error::Domain(
                "cannot infer the ground set of an empty family".into(),
            ));
        };
        let n = first.ground();
        if let Some(bad) = sets.iter().find(|s| s.ground() != n) {
            return Err(Error::Domain(format!(
                "mixed ground sets: [{n}] and [{}]",
                bad.ground()
            )));
        }
        let k = if sets.iter().all(|s| s.size() == first.size()) {
            first.size()
        } else {
            0
        };
        Self::new(n, k, sets.to_vec())
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[KSubset] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_uniform(&self) -> bool {
        self.k > 0 || self.edges.is_empty()
    }

    pub(crate) fn edge_masks(&self) -> Vec<u64> {
        self.edges.iter().map(KSubset::bits).collect()
    }

    /// Union of all edges.
    pub fn support(&self) -> u64 {
        self.edges.iter().fold(0, |acc, e| acc | e.bits())
    }

    /// Same edges on a larger ground set; the new vertices are isolates.
    pub fn with_ground(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(constraint("ground set can only grow", format!("{} -> {n}", self.n)));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| KSubset::from_bits(n, e.bits()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, self.k, edges)
    }

    /// Whether `set` meets every edge.
    pub fn is_transversal(&self, set: u64) -> bool {
        self.edges.iter().all(|e| e.bits() & set != 0)
    }

    /// Text format: `n k` on the first line, then one edge per line as
    /// ascending 1-based vertices separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in &self.edges {
            let line: Vec<String> = e.elements().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n k` header".into()))?;
        let nums: Vec<usize> = parse_numbers(header)?;
        let [n, k] = nums[..] else {
            return Err(Error::Parse(format!("header must be `n k`, got `{header}`")));
        };
        let mut edges = Vec::new();
        for line in lines {
            let vs = parse_numbers(line)?;
            if vs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("edge `{line}` is not strictly ascending")));
            }
            edges.push(KSubset::new(n, vs)?);
        }
        Self::new(n, k, edges)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

fn mask_of(range: std::ops::Range<usize>) -> u64 {
    range.fold(0, |m, i| m | 1u64 << i)
}

/// Edges of a `k`-uniform generalized triangle placed on 0-based positions
/// starting at `offset`.
fn generalized_triangle_masks(k: usize, offset: usize) -> Vec<u64> {
    let p1 = k / 2;
    let p2 = k.div_ceil(2);
    let v1 = mask_of(offset..offset + p1);
    let v2 = mask_of(offset + p1..offset + p1 + p2);
    let v3 = mask_of(offset + p1 + p2..offset + p1 + 2 * p2);
    let last = if k.is_multiple_of(2) {
        v2 | v3
    } else {
        // drop the top vertex of V3 so the edge keeps size k
        v2 | (v3 & !(1u64 << (offset + p1 + 2 * p2 - 1)))
    };
    vec![v1 | v2, v1 | v3, last]
}

/// The underlying hypergraph `F(S)`: one edge per member of `s`.
///
/// Uniform for Kneser and Johnson vertex sets; a bipartite Kneser set
/// mixing both sides yields a mixed hypergraph (`k = 0`).
pub fn underlying_hypergraph(s: &VertexSet) -> Hypergraph {
    let g = s.graph();
    let edges = s.members();
    let k = match g.kind() {
        FamilyKind::BipartiteKneser => {
            let sizes: HashSet<usize> = edges.iter().map(KSubset::size).collect();
            match sizes.len() {
                0 => g.k(),
                1 => *sizes.iter().next().unwrap(),
                _ => 0,
            }
        }
        _ => g.k(),
    };
    Hypergraph { n: g.n(), k, edges }
}

/// Vertices spanned by a generalized triangle: `k + ceil(k/2)`.
pub fn generalized_triangle_order(k: usize) -> usize {
    k + k.div_ceil(2)
}

/// The `k`-uniform generalized triangle: three `k`-edges, transversal number 2.
///
/// Parts `V1, V2, V3` of sizes `floor(k/2), ceil(k/2), ceil(k/2)` occupy
/// consecutive labels; edges are `V1∪V2, V1∪V3, V2∪V3`, and for odd `k` the
/// last edge omits the largest vertex of `V3`.
pub fn build_generalized_triangle(k: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(constraint("k >= 2", format!("k = {k}")));
    }
    let n = generalized_triangle_order(k);
    let edges = generalized_triangle_masks(k, 0)
        .into_iter()
        .map(|m| KSubset::from_bits_unchecked(n, m))
        .collect();
    Hypergraph::new(n, k, edges)
}

/// All `k`-subsets of a `v`-set, in colex order.
pub fn build_complete_uniform(v: usize, k: usize) -> Result<Hypergraph> {
    if v < k || k == 0 {
        return Err(constraint("v >= k >= 1", format!("v = {v}, k = {k}")));
    }
    Hypergraph::new(v, k, KSubsets::new(v, k).collect())
}

/// `count` pairwise disjoint `k`-edges on `[n]`, using the lowest labels.
pub fn build_disjoint_edges(n: usize, k: usize, count: usize) -> Result<Hypergraph> {
    if k == 0 || count * k > n {
        return Err(constraint(
            "count * k <= n",
            format!("{count} disjoint {k}-edges on {n} vertices"),
        ));
    }
    let edges = (0..count)
        .map(|i| KSubset::from_bits_unchecked(n, mask_of(i * k..(i + 1) * k)))
        .collect();
    Hypergraph::new(n, k, edges)
}

/// Two disjoint generalized triangles, then two disjoint complete
/// `k`-graphs on `2k-3` vertices; remaining vertices are isolates.
/// It is `k`-uniform with transversal number `2k`.
#[allow(non_snake_case)]
pub fn build_H_nk(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 3 {
        return Err(constraint("k >= 3", format!("k = {k}")));
    }
    if n + 5 < 7 * k {
        return Err(constraint("n >= 7k-5", format!("n = {n}, k = {k}")));
    }
    let mut masks = Vec::new();
    let tri = generalized_triangle_order(k);
    masks.extend(generalized_triangle_masks(k, 0));
    masks.extend(generalized_triangle_masks(k, tri));
    let clique = 2 * k - 3;
    for copy in 0..2 {
        let offset = 2 * tri + copy * clique;
        masks.extend(KSubsets::new(clique, k).map(|s| s.bits() << offset));
    }
    let edges = masks
        .into_iter()
        .map(|m| KSubset::from_bits_unchecked(n, m))
        .collect();
    Hypergraph::new(n, k, edges)
}

/// Edge count of [`build_H_nk`]: `2 C(2k-3, k) + 6`.
#[allow(non_snake_case)]
pub fn H_nk_edge_count(k: usize) -> u64 {
    2 * binomial(2 * k - 3, k) + 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyGraph;

    #[test]
    fn validation() {
        let a = KSubset::new(5, [1, 2]).unwrap();
        let b = KSubset::new(5, [1, 2, 3]).unwrap();
        assert!(Hypergraph::new(5, 2, vec![a, a]).is_err());
        assert!(Hypergraph::new(5, 2, vec![a, b]).is_err());
        assert!(Hypergraph::new(5, 0, vec![a, b]).is_ok());
        assert!(Hypergraph::new(5, 0, vec![KSubset::empty(5).unwrap()]).is_err());
        assert!(Hypergraph::new(6, 2, vec![a]).is_err());
        let c = KSubset::new(6, [1, 2]).unwrap();
        assert!(matches!(Hypergraph::from_sets(&[a, c]), Err(Error::Domain(_))));
    }

    #[test]
    fn generalized_triangle_shapes() {
        let t2 = build_generalized_triangle(2).unwrap();
        assert_eq!(t2.n(), 3);
        assert_eq!(t2.to_text(), "3 2\n1 2\n1 3\n2 3\n");
        let t3 = build_generalized_triangle(3).unwrap();
        assert_eq!(t3.n(), 5);
        assert_eq!(t3.to_text(), "5 3\n1 2 3\n1 4 5\n2 3 4\n");
        let t4 = build_generalized_triangle(4).unwrap();
        assert_eq!(t4.to_text(), "6 4\n1 2 3 4\n1 2 5 6\n3 4 5 6\n");
        assert!(build_generalized_triangle(1).is_err());
        for k in 2..=8 {
            let t = build_generalized_triangle(k).unwrap();
            assert_eq!(t.edge_count(), 3);
            assert_eq!(t.k(), k);
        }
    }

    #[test]
    fn complete_uniform_counts() {
        assert_eq!(build_complete_uniform(3, 3).unwrap().edge_count(), 1);
        assert_eq!(build_complete_uniform(5, 4).unwrap().edge_count(), 5);
        assert_eq!(build_complete_uniform(3, 2).unwrap().edge_count(), 3);
        assert!(build_complete_uniform(2, 3).is_err());
    }

    #[test]
    fn h_nk_layout() {
        let h = build_H_nk(16, 3).unwrap();
        assert_eq!(h.edge_count(), 8);
        assert_eq!(h.edge_count() as u64, H_nk_edge_count(3));
        assert_eq!(h.support().count_ones(), 16);
        let h = build_H_nk(23, 4).unwrap();
        assert_eq!(h.edge_count(), 16);
        assert_eq!(h.support().count_ones(), 22);
        let h17 = build_H_nk(17, 3).unwrap();
        assert_eq!(h17.edge_count(), 8);
        assert_eq!(h17.support().count_ones(), 16);
        assert!(build_H_nk(15, 3).is_err());
        assert!(build_H_nk(20, 2).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let h = build_H_nk(16, 3).unwrap();
        let text = h.to_text();
        assert!(text.starts_with("16 3\n1 2 3\n"));
        assert_eq!(Hypergraph::parse_text(&text).unwrap(), h);
        assert_eq!(Hypergraph::empty(4, 2).unwrap().to_text(), "4 2\n");
        assert!(Hypergraph::parse_text("4 2\n2 1\n").is_err());
        assert!(Hypergraph::parse_text("4 2\n1 5\n").is_err());
        assert!(Hypergraph::parse_text("4\n").is_err());
        assert!(Hypergraph::parse_text("").is_err());
    }

    #[test]
    fn underlying_hypergraph_examples() {
        let g = FamilyGraph::kneser(5, 2).unwrap();
        let s = VertexSet::from_subsets(
            g,
            [KSubset::new(5, [1, 2]).unwrap(), KSubset::new(5, [3, 4]).unwrap()],
        )
        .unwrap();
        let h = underlying_hypergraph(&s);
        assert_eq!((h.n(), h.k(), h.edge_count()), (5, 2, 2));
        let empty = underlying_hypergraph(&VertexSet::empty(g));
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(crate::transversal::transversal_number(&empty).tau, 0);
        let all = underlying_hypergraph(&VertexSet::all(g));
        assert_eq!(all, build_complete_uniform(5, 2).unwrap());
        let h7 = FamilyGraph::bipartite_kneser(7, 2).unwrap();
        let mixed = underlying_hypergraph(&VertexSet::all(h7));
        assert_eq!((mixed.k(), mixed.edge_count()), (0, 42));
    }
}
