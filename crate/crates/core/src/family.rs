//! Kneser, bipartite Kneser and Johnson graphs with implicit adjacency.
//!
//! Vertices are subsets of `[n]`. Vertex indices follow colex order; for the
//! bipartite Kneser graph the `k`-sets come first and the `(n-k)`-sets
//! follow, so the index itself records which partite class a vertex is in.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{constraint, Error, Result};
use crate::subset::{binomial, KSubset, KSubsets, SubMasks, MAX_GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Kneser,
    BipartiteKneser,
    Johnson,
}

impl FamilyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyKind::Kneser => "kneser",
            FamilyKind::BipartiteKneser => "bipartite-kneser",
            FamilyKind::Johnson => "johnson",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kneser" => Ok(FamilyKind::Kneser),
            "bipartite-kneser" => Ok(FamilyKind::BipartiteKneser),
            "johnson" => Ok(FamilyKind::Johnson),
            other => Err(Error::Parse(format!("unknown graph family `{other}`"))),
        }
    }
}

/// Which partite class of `H(n, k)` a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeClass {
    /// The `k`-element sets.
    Small,
    /// The `(n-k)`-element sets.
    Large,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyGraph {
    kind: FamilyKind,
    n: usize,
    k: usize,
}

impl FamilyGraph {
    pub fn new(kind: FamilyKind, n: usize, k: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(constraint("n <= 64", format!("n = {n}")));
        }
        if k < 2 {
            return Err(constraint("k >= 2", format!("k = {k}")));
        }
        match kind {
            FamilyKind::Kneser | FamilyKind::BipartiteKneser if n < 2 * k + 1 => Err(constraint(
                "n >= 2k+1",
                format!("{kind}(n = {n}, k = {k}) is disconnected"),
            )),
            FamilyKind::Johnson if n < k + 2 => Err(constraint(
                "n >= k+2",
                format!("johnson(n = {n}, k = {k}) is complete or empty"),
            )),
            _ => Ok(Self { kind, n, k }),
        }
    }

    pub fn kneser(n: usize, k: usize) -> Result<Self> {
        Self::new(FamilyKind::Kneser, n, k)
    }

    pub fn bipartite_kneser(n: usize, k: usize) -> Result<Self> {
        Self::new(FamilyKind::BipartiteKneser, n, k)
    }

    pub fn johnson(n: usize, k: usize) -> Result<Self> {
        Self::new(FamilyKind::Johnson, n, k)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn class_size(&self) -> usize {
        binomial(self.n, self.k) as usize
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            FamilyKind::BipartiteKneser => 2 * self.class_size(),
            _ => self.class_size(),
        }
    }

    /// All vertices in index order.
    pub fn vertices(&self) -> Vec<KSubset> {
        let mut out: Vec<KSubset> = KSubsets::new(self.n, self.k).collect();
        if self.kind == FamilyKind::BipartiteKneser {
            out.extend(KSubsets::new(self.n, self.n - self.k));
        }
        out
    }

    pub fn is_vertex(&self, s: &KSubset) -> bool {
        if s.ground() != self.n {
            return false;
        }
        match self.kind {
            FamilyKind::BipartiteKneser => s.size() == self.k || s.size() == self.n - self.k,
            _ => s.size() == self.k,
        }
    }

    fn check_vertex(&self, s: &KSubset) -> Result<()> {
        if self.is_vertex(s) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{s} is not a vertex of {self}")))
        }
    }

    pub fn index_of(&self, s: &KSubset) -> Result<usize> {
        self.check_vertex(s)?;
        let rank = s.colex_rank() as usize;
        if self.kind == FamilyKind::BipartiteKneser && s.size() != self.k {
            Ok(self.class_size() + rank)
        } else {
            Ok(rank)
        }
    }

    pub fn vertex(&self, index: usize) -> Result<KSubset> {
        let class = self.class_size();
        if index >= self.vertex_count() {
            return Err(Error::Domain(format!("vertex index {index} out of range")));
        }
        if index < class {
            KSubset::colex_unrank(self.n, self.k, index as u64)
        } else {
            KSubset::colex_unrank(self.n, self.n - self.k, (index - class) as u64)
        }
    }

    /// Partite class of a bipartite Kneser vertex, `None` for the other families.
    pub fn size_class(&self, s: &KSubset) -> Result<Option<SizeClass>> {
        self.check_vertex(s)?;
        Ok(match self.kind {
            FamilyKind::BipartiteKneser if s.size() == self.k => Some(SizeClass::Small),
            FamilyKind::BipartiteKneser => Some(SizeClass::Large),
            _ => None,
        })
    }

    fn adjacent_unchecked(&self, a: &KSubset, b: &KSubset) -> bool {
        match self.kind {
            FamilyKind::Kneser => a.is_disjoint(b),
            FamilyKind::Johnson => a.intersection_size(b) == self.k - 1,
            FamilyKind::BipartiteKneser => {
                a.size() != b.size() && (a.is_subset_of(b) || b.is_subset_of(a))
            }
        }
    }

    pub fn adjacent(&self, a: &KSubset, b: &KSubset) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(self.adjacent_unchecked(a, b))
    }

    pub(crate) fn neighbors_unchecked(&self, a: &KSubset) -> Vec<KSubset> {
        let n = self.n;
        let full = KSubset::full(n).expect("n checked at construction").bits();
        let outside = full & !a.bits();
        match self.kind {
            FamilyKind::Kneser => SubMasks::new(outside, self.k)
                .map(|m| KSubset::from_bits_unchecked(n, m))
                .collect(),
            FamilyKind::Johnson => {
                let mut out = Vec::new();
                for drop in a.elements() {
                    let base = a.bits() & !(1u64 << (drop - 1));
                    let mut rest = outside;
                    while rest != 0 {
                        let add = rest & rest.wrapping_neg();
                        out.push(KSubset::from_bits_unchecked(n, base | add));
                        rest &= rest - 1;
                    }
                }
                out.sort();
                out
            }
            FamilyKind::BipartiteKneser => {
                if a.size() == self.k {
                    SubMasks::new(outside, n - 2 * self.k)
                        .map(|m| KSubset::from_bits_unchecked(n, a.bits() | m))
                        .collect()
                } else {
                    SubMasks::new(a.bits(), self.k)
                        .map(|m| KSubset::from_bits_unchecked(n, m))
                        .collect()
                }
            }
        }
    }

    /// Neighbours in vertex-index order.
    pub fn neighbors(&self, a: &KSubset) -> Result<Vec<KSubset>> {
        self.check_vertex(a)?;
        Ok(self.neighbors_unchecked(a))
    }

    /// Single-pair breadth-first search over the implicit graph.
    pub fn bfs_distance(&self, a: &KSubset, b: &KSubset) -> Result<usize> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Ok(0);
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[self.index_of(a)?] = true;
        let mut queue = VecDeque::from([(*a, 0usize)]);
        while let Some((u, d)) = queue.pop_front() {
            for w in self.neighbors_unchecked(&u) {
                if w == *b {
                    return Ok(d + 1);
                }
                let wi = self.index_of(&w)?;
                if !seen[wi] {
                    seen[wi] = true;
                    queue.push_back((w, d + 1));
                }
            }
        }
        Err(constraint("connected", format!("{b} unreachable from {a} in {self}")))
    }

    /// Shortest-path distance. Johnson graphs use `k - |A ∩ B|`; Kneser graphs
    /// with `n >= 3k-1` have diameter two; everything else runs BFS.
    pub fn distance(&self, a: &KSubset, b: &KSubset) -> Result<usize> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Ok(0);
        }
        match self.kind {
            FamilyKind::Johnson => Ok(self.k - a.intersection_size(b)),
            FamilyKind::Kneser if self.n + 1 >= 3 * self.k => {
                Ok(if a.is_disjoint(b) { 1 } else { 2 })
            }
            _ => self.bfs_distance(a, b),
        }
    }

    /// Eccentricity of the first vertex; all three families are vertex-transitive.
    pub fn diameter(&self) -> usize {
        match self.kind {
            FamilyKind::Kneser if self.n + 1 >= 3 * self.k => 2,
            FamilyKind::Johnson => self.k.min(self.n - self.k),
            _ => {
                let eccentricities = bfs_layers(self, 0);
                *eccentricities.iter().max().expect("non-empty graph")
            }
        }
    }

    /// `S -> [n] \ S`, the automorphism of `H(n, k)` swapping the partite classes.
    pub fn complement_automorphism(&self, s: &KSubset) -> Result<KSubset> {
        if self.kind != FamilyKind::BipartiteKneser {
            return Err(Error::Domain(format!(
                "complementation is an automorphism of bipartite Kneser graphs only, not {self}"
            )));
        }
        self.check_vertex(s)?;
        Ok(s.complement())
    }
}

/// Distances from vertex `source` (by index) to every vertex.
pub(crate) fn bfs_layers(graph: &FamilyGraph, source: usize) -> Vec<usize> {
    let vertices = graph.vertices();
    let mut dist = vec![usize::MAX; vertices.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for w in graph.neighbors_unchecked(&vertices[u]) {
            let wi = graph.index_of(&w).expect("neighbour is a vertex");
            if dist[wi] == usize::MAX {
                dist[wi] = dist[u] + 1;
                queue.push_back(wi);
            }
        }
    }
    dist
}

/// Canonical text form, e.g. `kneser:n=7,k=2`.
impl fmt::Display for FamilyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={},k={}", self.kind, self.n, self.k)
    }
}

impl Serialize for FamilyGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for FamilyGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `family:n=..,k=..`, got `{s}`")))?;
        let kind: FamilyKind = kind.trim().parse()?;
        let (n, k) = parse_nk(params)?;
        FamilyGraph::new(kind, n, k)
    }
}

/// Parses `n=7,k=2` (either order).
pub(crate) fn parse_nk(params: &str) -> Result<(usize, usize)> {
    let mut n = None;
    let mut k = None;
    for part in params.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{value}` is not a non-negative integer")))?;
        match key.trim() {
            "n" if n.is_none() => n = Some(value),
            "k" if k.is_none() => k = Some(value),
            other => return Err(Error::Parse(format!("unexpected parameter `{other}`"))),
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(Error::Parse(format!("`{params}` must set both n and k"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    fn all_pairs_diameter(g: &FamilyGraph) -> usize {
        (0..g.vertex_count())
            .map(|s| *bfs_layers(g, s).iter().max().unwrap())
            .max()
            .unwrap()
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(FamilyGraph::kneser(5, 2).unwrap().vertex_count(), 10);
        assert_eq!(FamilyGraph::johnson(4, 2).unwrap().vertex_count(), 6);
        let h = FamilyGraph::bipartite_kneser(7, 2).unwrap();
        let vs = h.vertices();
        assert_eq!(vs.len(), 42);
        assert!(vs[..21].iter().all(|v| v.size() == 2));
        assert!(vs[21..].iter().all(|v| v.size() == 5));
        assert!(vs[..21].windows(2).all(|w| w[0] < w[1]));
        assert!(vs[21..].windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parameter_constraints_are_named() {
        let err = FamilyGraph::kneser(4, 2).unwrap_err();
        assert!(matches!(err, Error::Constraint { constraint: "n >= 2k+1", .. }));
        let err = FamilyGraph::johnson(3, 2).unwrap_err();
        assert!(matches!(err, Error::Constraint { constraint: "n >= k+2", .. }));
        let err = FamilyGraph::bipartite_kneser(4, 2).unwrap_err();
        assert!(matches!(err, Error::Constraint { constraint: "n >= 2k+1", .. }));
        assert!(FamilyGraph::kneser(5, 1).is_err());
        assert!(FamilyGraph::kneser(65, 2).is_err());
    }

    #[test]
    fn index_round_trip() {
        for g in [
            FamilyGraph::kneser(7, 3).unwrap(),
            FamilyGraph::bipartite_kneser(7, 2).unwrap(),
            FamilyGraph::johnson(6, 3).unwrap(),
        ] {
            for (i, v) in g.vertices().iter().enumerate() {
                assert_eq!(g.index_of(v).unwrap(), i);
                assert_eq!(g.vertex(i).unwrap(), *v);
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let kg = FamilyGraph::kneser(5, 2).unwrap();
        assert!(kg.adjacent(&set(5, &[1, 2]), &set(5, &[3, 4])).unwrap());
        let j = FamilyGraph::johnson(5, 2).unwrap();
        assert!(j.adjacent(&set(5, &[1, 2]), &set(5, &[1, 3])).unwrap());
        assert!(!j.adjacent(&set(5, &[1, 2]), &set(5, &[3, 4])).unwrap());
        let h = FamilyGraph::bipartite_kneser(7, 2).unwrap();
        assert!(h.adjacent(&set(7, &[1, 2]), &set(7, &[1, 2, 3, 4, 5])).unwrap());
        assert!(matches!(
            kg.adjacent(&set(5, &[1, 2, 3]), &set(5, &[4, 5])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn distance_examples() {
        let j = FamilyGraph::johnson(6, 3).unwrap();
        assert_eq!(j.distance(&set(6, &[1, 2, 3]), &set(6, &[4, 5, 6])).unwrap(), 3);
        let p = FamilyGraph::kneser(5, 2).unwrap();
        assert_eq!(p.distance(&set(5, &[1, 2]), &set(5, &[1, 3])).unwrap(), 2);
        let h = FamilyGraph::bipartite_kneser(7, 2).unwrap();
        assert_eq!(h.distance(&set(7, &[1, 2]), &set(7, &[1, 3])).unwrap(), 2);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(FamilyGraph::kneser(7, 2).unwrap().diameter(), 2);
        assert_eq!(FamilyGraph::kneser(5, 2).unwrap().diameter(), 2);
        assert_eq!(FamilyGraph::johnson(4, 2).unwrap().diameter(), 2);
    }

    #[test]
    fn diameter_matches_all_pairs_bfs() {
        for g in [
            FamilyGraph::kneser(5, 2).unwrap(),
            FamilyGraph::kneser(7, 3).unwrap(),
            FamilyGraph::kneser(8, 3).unwrap(),
            FamilyGraph::johnson(6, 3).unwrap(),
            FamilyGraph::johnson(7, 2).unwrap(),
            FamilyGraph::bipartite_kneser(5, 2).unwrap(),
            FamilyGraph::bipartite_kneser(7, 3).unwrap(),
        ] {
            assert_eq!(g.diameter(), all_pairs_diameter(&g), "{g}");
        }
    }

    #[test]
    fn distance_symmetric_and_adjacency_consistent() {
        for g in [
            FamilyGraph::kneser(5, 2).unwrap(),
            FamilyGraph::kneser(7, 3).unwrap(),
            FamilyGraph::kneser(7, 2).unwrap(),
            FamilyGraph::johnson(7, 3).unwrap(),
            FamilyGraph::bipartite_kneser(6, 2).unwrap(),
            FamilyGraph::bipartite_kneser(7, 2).unwrap(),
        ] {
            let vs = g.vertices();
            for (i, a) in vs.iter().enumerate() {
                let from_a = bfs_layers(&g, i);
                for (j, b) in vs.iter().enumerate() {
                    let d = g.distance(a, b).unwrap();
                    assert_eq!(d, g.distance(b, a).unwrap());
                    assert_eq!(d, from_a[j], "{g} {a} {b}");
                    if a != b {
                        assert_eq!(g.adjacent(a, b).unwrap(), d == 1);
                    }
                }
            }
        }
    }

    #[test]
    fn johnson_closed_form_matches_bfs() {
        for n in 4..=10 {
            for k in 2..=n - 2 {
                if binomial(n, k) > 100 {
                    continue;
                }
                let g = FamilyGraph::johnson(n, k).unwrap();
                let vs = g.vertices();
                for a in &vs {
                    for b in &vs {
                        assert_eq!(g.distance(a, b).unwrap(), g.bfs_distance(a, b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn neighbors_agree_with_predicate() {
        for g in [
            FamilyGraph::kneser(7, 2).unwrap(),
            FamilyGraph::johnson(6, 3).unwrap(),
            FamilyGraph::bipartite_kneser(7, 2).unwrap(),
        ] {
            let vs = g.vertices();
            for a in &vs {
                let expected: Vec<KSubset> = vs
                    .iter()
                    .filter(|b| *b != a && g.adjacent(a, b).unwrap())
                    .copied()
                    .collect();
                assert_eq!(g.neighbors(a).unwrap(), expected);
            }
        }
    }

    #[test]
    fn complement_automorphism_examples() {
        let h = FamilyGraph::bipartite_kneser(7, 2).unwrap();
        let s = set(7, &[1, 2]);
        let phi = h.complement_automorphism(&s).unwrap();
        assert_eq!(phi.to_vec(), vec![3, 4, 5, 6, 7]);
        assert_eq!(h.complement_automorphism(&phi).unwrap(), s);

        let h5 = FamilyGraph::bipartite_kneser(5, 2).unwrap();
        let (a, b) = (set(5, &[1, 2]), set(5, &[1, 2, 3]));
        assert!(h5.adjacent(&a, &b).unwrap());
        let (pa, pb) = (
            h5.complement_automorphism(&a).unwrap(),
            h5.complement_automorphism(&b).unwrap(),
        );
        assert_eq!(pa.to_vec(), vec![3, 4, 5]);
        assert_eq!(pb.to_vec(), vec![4, 5]);
        assert!(h5.adjacent(&pa, &pb).unwrap());

        let kg = FamilyGraph::kneser(5, 2).unwrap();
        assert!(matches!(kg.complement_automorphism(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn complement_preserves_adjacency() {
        for n in 5..=8 {
            for k in 2..=(n - 1) / 2 {
                let h = FamilyGraph::bipartite_kneser(n, k).unwrap();
                let vs = h.vertices();
                for a in &vs {
                    let pa = h.complement_automorphism(a).unwrap();
                    for b in &vs {
                        if a == b {
                            continue;
                        }
                        let pb = h.complement_automorphism(b).unwrap();
                        assert_eq!(h.adjacent(a, b).unwrap(), h.adjacent(&pa, &pb).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn size_class_is_explicit() {
        let h = FamilyGraph::bipartite_kneser(7, 2).unwrap();
        assert_eq!(h.size_class(&set(7, &[1, 2])).unwrap(), Some(SizeClass::Small));
        assert_eq!(
            h.size_class(&set(7, &[1, 2, 3, 4, 5])).unwrap(),
            Some(SizeClass::Large)
        );
        let j = FamilyGraph::johnson(5, 2).unwrap();
        assert_eq!(j.size_class(&set(5, &[1, 2])).unwrap(), None);
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["kneser:n=7,k=2", "bipartite-kneser:n=7,k=2", "johnson:n=4,k=2"] {
            let g: FamilyGraph = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g: FamilyGraph = "johnson:k=2,n=5".parse().unwrap();
        assert_eq!(g.to_string(), "johnson:n=5,k=2");
        assert!("kneser:n=4,k=2".parse::<FamilyGraph>().is_err());
        assert!("petersen:n=5,k=2".parse::<FamilyGraph>().is_err());
        assert!("kneser:n=7".parse::<FamilyGraph>().is_err());
        assert!("kneser:n=7,k=2,q=1".parse::<FamilyGraph>().is_err());
    }
}
