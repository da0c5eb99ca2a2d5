//! X-visibility, the mutual-visibility family of set predicates, and exact
//! maximum sizes.
//!
//! A [`VisibilityGraph`] materializes distances and neighbour bitsets for a
//! family graph once. Whether `u` and `v` are X-visible is decided on the
//! shortest-path layers between them: `w` lies on some shortest `u,v`-path
//! iff `d(u,w) + d(w,v) = d(u,v)`, and the question is whether `v` can be
//! reached from `u` stepping one layer at a time through vertices outside X.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{constraint, precondition, Error, Result};
use crate::family::{FamilyGraph, FamilyKind};
use crate::hypergraph::underlying_hypergraph;
use crate::search::{maximize, Budget, HereditaryFamily, Status};
use crate::subset::KSubset;
use crate::transversal::tau_at_least;

/// Graphs above this order are never materialized.
pub const MAX_MATERIALIZED: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VisibilityVariant {
    Mutual,
    Total,
    Dual,
    Outer,
    GeneralPosition,
}

impl VisibilityVariant {
    pub const ALL: [VisibilityVariant; 5] = [
        VisibilityVariant::Mutual,
        VisibilityVariant::Total,
        VisibilityVariant::Dual,
        VisibilityVariant::Outer,
        VisibilityVariant::GeneralPosition,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            VisibilityVariant::Mutual => "mutual",
            VisibilityVariant::Total => "total",
            VisibilityVariant::Dual => "dual",
            VisibilityVariant::Outer => "outer",
            VisibilityVariant::GeneralPosition => "general-position",
        }
    }

    /// Subsets of a valid set are valid (mutual, total, general position).
    pub fn is_hereditary(&self) -> bool {
        matches!(
            self,
            VisibilityVariant::Mutual | VisibilityVariant::Total | VisibilityVariant::GeneralPosition
        )
    }
}

impl fmt::Display for VisibilityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VisibilityVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VisibilityVariant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown visibility variant `{s}`")))
    }
}

/// A set of vertices of one family graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    graph: FamilyGraph,
    members: FixedBitSet,
}

impl VertexSet {
    pub fn empty(graph: FamilyGraph) -> Self {
        Self {
            graph,
            members: FixedBitSet::with_capacity(graph.vertex_count()),
        }
    }

    pub fn all(graph: FamilyGraph) -> Self {
        let mut s = Self::empty(graph);
        s.members.insert_range(..);
        s
    }

    pub fn from_subsets(graph: FamilyGraph, sets: impl IntoIterator<Item = KSubset>) -> Result<Self> {
        let mut out = Self::empty(graph);
        for s in sets {
            let i = graph.index_of(&s)?;
            if out.members.put(i) {
                return Err(Error::Domain(format!("vertex {s} listed twice")));
            }
        }
        Ok(out)
    }

    pub fn from_indices(graph: FamilyGraph, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut out = Self::empty(graph);
        for i in indices {
            if i >= graph.vertex_count() {
                return Err(Error::Domain(format!("vertex index {i} out of range")));
            }
            if out.members.put(i) {
                return Err(Error::Domain(format!("vertex index {i} listed twice")));
            }
        }
        Ok(out)
    }

    pub fn graph(&self) -> FamilyGraph {
        self.graph
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        self.graph
            .index_of(s)
            .is_ok_and(|i| self.members.contains(i))
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    /// Members in vertex-index order.
    pub fn members(&self) -> Vec<KSubset> {
        self.members
            .ones()
            .map(|i| self.graph.vertex(i).expect("index in range"))
            .collect()
    }

    /// `V(G) \ self`.
    pub fn complement(&self) -> VertexSet {
        let mut members = self.members.clone();
        members.toggle_range(..);
        Self {
            graph: self.graph,
            members,
        }
    }
}

/// Sets as ascending integer arrays, the list sorted lexicographically.
pub(crate) fn sorted_sets(sets: &[KSubset]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = sets.iter().map(KSubset::to_vec).collect();
    out.sort();
    out
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        sorted_sets(&self.members()).serialize(serializer)
    }
}

/// Vertices witnessing that a candidate set fails its predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Blocking {
    /// Two vertices that are not X-visible.
    Pair(KSubset, KSubset),
    /// Three vertices of X where the middle one lies on a shortest path
    /// between the outer two.
    Triple(KSubset, KSubset, KSubset),
}

impl Serialize for Blocking {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let sets: Vec<&KSubset> = match self {
            Blocking::Pair(a, b) => vec![a, b],
            Blocking::Triple(a, m, b) => vec![a, m, b],
        };
        let mut seq = serializer.serialize_seq(Some(sets.len()))?;
        for s in sets {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCheck {
    pub holds: bool,
    pub blocking: Option<Blocking>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VisibilityCertificate {
    pub family: FamilyGraph,
    pub variant: VisibilityVariant,
    pub value: usize,
    pub witness: VertexSet,
    pub status: Status,
    pub nodes_expanded: u64,
    /// For hereditary variants: why the colex-first non-member cannot join
    /// the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking_pair: Option<Blocking>,
}

impl VisibilityCertificate {
    /// Re-checks the witness (and blocking pair) definitionally.
    pub fn revalidate(&self, vg: &VisibilityGraph) -> Result<bool> {
        if self.witness.len() != self.value || vg.graph() != self.family {
            return Ok(false);
        }
        if !vg.is_visibility_set(&self.witness, self.variant)?.holds {
            return Ok(false);
        }
        if let Some(Blocking::Pair(u, v)) = &self.blocking_pair {
            // the pair must be blocked once the extra vertex joins the witness
            let extra = (0..vg.vertex_count()).find(|&i| !self.witness.contains_index(i));
            let mut enlarged = self.witness.clone();
            if let Some(i) = extra {
                enlarged.members.insert(i);
            }
            return Ok(!vg.is_x_visible(&enlarged, u, v)?);
        }
        Ok(true)
    }
}

pub struct VisibilityGraph {
    graph: FamilyGraph,
    vertices: Vec<KSubset>,
    nbr: Vec<FixedBitSet>,
    dist: Vec<u8>,
    /// `layers[u][i]`: vertices at distance `i` from `u`.
    layers: Vec<Vec<FixedBitSet>>,
    diameter: usize,
    /// `through[w]`: pairs `(u, v)` with `w` an internal vertex of some
    /// shortest `u,v`-path. Built on first use by the searches.
    through: OnceLock<Vec<Vec<(u32, u32)>>>,
}

impl VisibilityGraph {
    pub fn new(graph: FamilyGraph) -> Result<Self> {
        let count = graph.vertex_count();
        if count > MAX_MATERIALIZED {
            return Err(constraint(
                "vertex_count <= 4096",
                format!("{graph} has {count} vertices"),
            ));
        }
        let vertices = graph.vertices();
        let adj: Vec<Vec<usize>> = vertices
            .iter()
            .map(|v| {
                graph
                    .neighbors_unchecked(v)
                    .iter()
                    .map(|w| graph.index_of(w).expect("neighbour is a vertex"))
                    .collect()
            })
            .collect();
        let mut nbr = Vec::with_capacity(count);
        for list in &adj {
            let mut b = FixedBitSet::with_capacity(count);
            list.iter().for_each(|&w| b.insert(w));
            nbr.push(b);
        }
        let mut dist = vec![u8::MAX; count * count];
        let mut diameter = 0;
        let mut queue = std::collections::VecDeque::new();
        for s in 0..count {
            let row = &mut dist[s * count..(s + 1) * count];
            row[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if row[w] == u8::MAX {
                        row[w] = row[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if let Some(bad) = row.iter().position(|&d| d == u8::MAX) {
                return Err(constraint(
                    "connected",
                    format!("{} unreachable from {} in {graph}", vertices[bad], vertices[s]),
                ));
            }
            diameter = diameter.max(*row.iter().max().unwrap_or(&0) as usize);
        }
        let layers = (0..count)
            .map(|u| {
                let mut ls = vec![FixedBitSet::with_capacity(count); diameter + 1];
                for w in 0..count {
                    ls[dist[u * count + w] as usize].insert(w);
                }
                ls
            })
            .collect();
        Ok(Self {
            graph,
            vertices,
            nbr,
            dist,
            layers,
            diameter,
            through: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> FamilyGraph {
        self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[KSubset] {
        &self.vertices
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.vertices.len() + v] as usize
    }

    #[inline]
    fn between(&self, a: usize, m: usize, b: usize) -> bool {
        self.dist(a, m) + self.dist(m, b) == self.dist(a, b)
    }

    fn index(&self, s: &KSubset) -> Result<usize> {
        self.graph.index_of(s)
    }

    fn check_set(&self, x: &VertexSet) -> Result<()> {
        if x.graph != self.graph {
            return Err(Error::Domain(format!(
                "vertex set of {} used with {}",
                x.graph, self.graph
            )));
        }
        Ok(())
    }

    /// Layered reachability from `u` to `v`; `extra` is one more obstacle.
    pub(crate) fn visible_with(
        &self,
        obstacles: &FixedBitSet,
        extra: Option<usize>,
        u: usize,
        v: usize,
    ) -> bool {
        let d = self.dist(u, v);
        if d <= 1 {
            return true;
        }
        let free = |w: usize| !obstacles.contains(w) && Some(w) != extra;
        if d == 2 {
            return self.nbr[u].intersection(&self.nbr[v]).any(free);
        }
        let count = self.vertices.len();
        let mut frontier = vec![u];
        for i in 1..d {
            let mut next = FixedBitSet::with_capacity(count);
            for &w in &frontier {
                next.union_with(&self.nbr[w]);
            }
            next.intersect_with(&self.layers[u][i]);
            next.intersect_with(&self.layers[v][d - i]);
            next.difference_with(obstacles);
            if let Some(e) = extra {
                next.set(e, false);
            }
            frontier = next.ones().collect();
            if frontier.is_empty() {
                return false;
            }
        }
        // every vertex in the last layer is adjacent to v
        true
    }

    /// True iff some shortest `u,v`-path has no internal vertex in `x`.
    pub fn is_x_visible(&self, x: &VertexSet, u: &KSubset, v: &KSubset) -> Result<bool> {
        self.check_set(x)?;
        let (ui, vi) = (self.index(u)?, self.index(v)?);
        Ok(self.visible_with(&x.members, None, ui, vi))
    }

    fn pair(&self, u: usize, v: usize) -> Blocking {
        Blocking::Pair(self.vertices[u], self.vertices[v])
    }

    fn find_blocking(&self, x: &FixedBitSet, variant: VisibilityVariant) -> Option<Blocking> {
        let count = self.vertices.len();
        if variant == VisibilityVariant::GeneralPosition {
            let members: Vec<usize> = x.ones().collect();
            for (i, &a) in members.iter().enumerate() {
                for (j, &b) in members.iter().enumerate().skip(i + 1) {
                    for &c in &members[j + 1..] {
                        for (p, m, q) in [(b, a, c), (a, b, c), (a, c, b)] {
                            if self.between(p, m, q) {
                                return Some(Blocking::Triple(
                                    self.vertices[p],
                                    self.vertices[m],
                                    self.vertices[q],
                                ));
                            }
                        }
                    }
                }
            }
            return None;
        }
        for u in 0..count {
            for v in u + 1..count {
                let (iu, iv) = (x.contains(u), x.contains(v));
                let required = match variant {
                    VisibilityVariant::Mutual => iu && iv,
                    VisibilityVariant::Total => true,
                    VisibilityVariant::Dual => iu == iv,
                    VisibilityVariant::Outer => iu || iv,
                    VisibilityVariant::GeneralPosition => unreachable!(),
                };
                if required && !self.visible_with(x, None, u, v) {
                    return Some(self.pair(u, v));
                }
            }
        }
        None
    }

    /// Checks the pair (or, for general position, triple) condition of
    /// `variant` on `x`, returning a failing pair or triple if any.
    pub fn is_visibility_set(&self, x: &VertexSet, variant: VisibilityVariant) -> Result<SetCheck> {
        self.check_set(x)?;
        let blocking = self.find_blocking(&x.members, variant);
        Ok(SetCheck {
            holds: blocking.is_none(),
            blocking,
        })
    }

    fn through(&self) -> &[Vec<(u32, u32)>] {
        self.through.get_or_init(|| {
            let count = self.vertices.len();
            let mut out = vec![Vec::new(); count];
            for u in 0..count {
                for v in u + 1..count {
                    let d = self.dist(u, v);
                    for i in 1..d {
                        for w in self.layers[u][i].intersection(&self.layers[v][d - i]) {
                            out[w].push((u as u32, v as u32));
                        }
                    }
                }
            }
            out
        })
    }

    /// Exact maximum size of a set satisfying `variant`, with the colex-least
    /// optimal witness. Mutual, total and general-position sets are closed
    /// under subsets and searched directly; dual and outer sets are mutual
    /// sets, so they are found among the mutual sets with the extra
    /// condition checked on complete candidates.
    pub fn max_visibility_number(
        &self,
        variant: VisibilityVariant,
        budget: Budget,
    ) -> Result<VisibilityCertificate> {
        let base = match variant {
            VisibilityVariant::Total => VisibilityVariant::Total,
            VisibilityVariant::GeneralPosition => VisibilityVariant::GeneralPosition,
            _ => VisibilityVariant::Mutual,
        };
        let family = VisibilityFamily {
            vg: self,
            base,
            accept: (!variant.is_hereditary()).then_some(variant),
        };
        let found = maximize(&family, budget);
        let witness = VertexSet::from_indices(self.graph, found.best.iter().copied())?;
        let blocking_pair = if variant.is_hereditary() {
            (0..self.vertex_count())
                .find(|&i| !witness.contains_index(i))
                .and_then(|extra| {
                    let mut enlarged = witness.members.clone();
                    enlarged.insert(extra);
                    self.find_blocking(&enlarged, variant)
                })
        } else {
            None
        };
        Ok(VisibilityCertificate {
            family: self.graph,
            variant,
            value: witness.len(),
            witness,
            status: found.status,
            nodes_expanded: found.nodes,
            blocking_pair,
        })
    }
}

struct VisibilityFamily<'a> {
    vg: &'a VisibilityGraph,
    base: VisibilityVariant,
    accept: Option<VisibilityVariant>,
}

impl HereditaryFamily for VisibilityFamily<'_> {
    fn universe(&self) -> usize {
        self.vg.vertex_count()
    }

    fn can_add(&self, chosen: &FixedBitSet, members: &[usize], d: usize) -> bool {
        let vg = self.vg;
        match self.base {
            VisibilityVariant::Total => vg.through()[d]
                .iter()
                .all(|&(a, b)| vg.visible_with(chosen, Some(d), a as usize, b as usize)),
            VisibilityVariant::GeneralPosition => members.iter().enumerate().all(|(i, &a)| {
                members[i + 1..].iter().all(|&b| {
                    !vg.between(a, d, b) && !vg.between(d, a, b) && !vg.between(a, b, d)
                })
            }),
            _ => {
                members.iter().all(|&x| vg.visible_with(chosen, None, x, d))
                    && vg.through()[d].iter().all(|&(a, b)| {
                        let (a, b) = (a as usize, b as usize);
                        !(chosen.contains(a) && chosen.contains(b))
                            || vg.visible_with(chosen, Some(d), a, b)
                    })
            }
        }
    }

    fn accept(&self, chosen: &FixedBitSet, _members: &[usize]) -> bool {
        match self.accept {
            Some(v) => self.vg.find_blocking(chosen, v).is_none(),
            None => true,
        }
    }

    fn accepts_all(&self) -> bool {
        self.accept.is_none()
    }
}

/// Total mutual-visibility test for Kneser graphs with `n >= 3k-1`: `x` is
/// a total mutual-visibility set iff the sets outside `x` have transversal
/// number at least `2k`.
pub fn kneser_total_mv_check_fast(n: usize, k: usize, x: &VertexSet) -> Result<bool> {
    let g = x.graph();
    if g.kind() != FamilyKind::Kneser || g.n() != n || g.k() != k {
        return Err(Error::Domain(format!(
            "vertex set belongs to {g}, not kneser:n={n},k={k}"
        )));
    }
    if n + 1 < 3 * k {
        return Err(precondition(
            "n >= 3k-1",
            format!("the transversal characterization needs n >= 3k-1, got n = {n}, k = {k}"),
        ));
    }
    let outside = underlying_hypergraph(&x.complement());
    let masks: Vec<u64> = outside.edges().iter().map(KSubset::bits).collect();
    Ok(tau_at_least(&masks, 2 * k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    fn vs(g: FamilyGraph, sets: &[&[usize]]) -> VertexSet {
        VertexSet::from_subsets(g, sets.iter().map(|s| set(g.n(), s))).unwrap()
    }

    /// Enumerates every shortest path explicitly; independent of the
    /// layered reachability used by the implementation.
    fn visible_by_paths(vg: &VisibilityGraph, x: &FixedBitSet, u: usize, v: usize) -> bool {
        fn walk(vg: &VisibilityGraph, x: &FixedBitSet, at: usize, v: usize) -> bool {
            if at == v {
                return true;
            }
            vg.nbr[at].ones().any(|w| {
                vg.dist(w, v) + 1 == vg.dist(at, v) && (w == v || !x.contains(w)) && walk(vg, x, w, v)
            })
        }
        walk(vg, x, u, v)
    }

    fn brute_force_max(vg: &VisibilityGraph, variant: VisibilityVariant) -> (usize, Vec<usize>) {
        let count = vg.vertex_count();
        assert!(count <= 20);
        let mut best: Option<(usize, u64)> = None;
        for mask in 0u64..1 << count {
            let size = mask.count_ones() as usize;
            if best.is_some_and(|(s, _)| s >= size) {
                continue;
            }
            let mut bits = FixedBitSet::with_capacity(count);
            (0..count).filter(|i| mask >> i & 1 == 1).for_each(|i| bits.insert(i));
            if vg.find_blocking(&bits, variant).is_none() {
                best = Some((size, mask));
            }
        }
        let (size, mask) = best.unwrap();
        (size, (0..count).filter(|i| mask >> i & 1 == 1).collect())
    }

    #[test]
    fn x_visibility_examples() {
        let p = FamilyGraph::kneser(5, 2).unwrap();
        let vg = VisibilityGraph::new(p).unwrap();
        let (a, b) = (set(5, &[1, 2]), set(5, &[3, 4]));
        assert!(vg.is_x_visible(&VertexSet::all(p), &a, &b).unwrap());
        let x = vs(p, &[&[4, 5]]);
        assert!(!vg.is_x_visible(&x, &a, &set(5, &[1, 3])).unwrap());
        let j = FamilyGraph::johnson(4, 2).unwrap();
        let vj = VisibilityGraph::new(j).unwrap();
        assert!(vj
            .is_x_visible(&VertexSet::empty(j), &set(4, &[1, 2]), &set(4, &[3, 4]))
            .unwrap());
        assert!(matches!(
            vg.is_x_visible(&x, &set(5, &[1, 2, 3]), &a),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn layered_reachability_matches_path_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for g in [
            FamilyGraph::kneser(7, 3).unwrap(),
            FamilyGraph::johnson(6, 3).unwrap(),
            FamilyGraph::bipartite_kneser(7, 2).unwrap(),
            FamilyGraph::bipartite_kneser(8, 3).unwrap(),
        ] {
            let vg = VisibilityGraph::new(g).unwrap();
            let count = vg.vertex_count();
            for _ in 0..20 {
                let p: f64 = rng.gen();
                let mut x = FixedBitSet::with_capacity(count);
                (0..count).filter(|_| rng.gen_bool(p)).for_each(|i| x.insert(i));
                for u in 0..count {
                    for v in 0..count {
                        assert_eq!(
                            vg.visible_with(&x, None, u, v),
                            visible_by_paths(&vg, &x, u, v),
                            "{g}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn set_predicate_examples() {
        for g in [
            FamilyGraph::kneser(5, 2).unwrap(),
            FamilyGraph::johnson(4, 2).unwrap(),
            FamilyGraph::bipartite_kneser(5, 2).unwrap(),
        ] {
            let vg = VisibilityGraph::new(g).unwrap();
            assert!(vg
                .is_visibility_set(&VertexSet::empty(g), VisibilityVariant::Mutual)
                .unwrap()
                .holds);
        }
        let p = FamilyGraph::kneser(5, 2).unwrap();
        let vg = VisibilityGraph::new(p).unwrap();
        for v in p.vertices() {
            let x = VertexSet::from_subsets(p, [v]).unwrap();
            let check = vg.is_visibility_set(&x, VisibilityVariant::Total).unwrap();
            assert!(!check.holds);
            let Some(Blocking::Pair(a, b)) = check.blocking else {
                panic!("expected a blocking pair");
            };
            assert!(!vg.is_x_visible(&x, &a, &b).unwrap());
        }
        // triangle {12,13,23} plus pendant {34} in the underlying graph
        let j = FamilyGraph::johnson(4, 2).unwrap();
        let vj = VisibilityGraph::new(j).unwrap();
        let x = vs(j, &[&[1, 2], &[1, 3], &[2, 3], &[3, 4]]);
        assert!(vj.is_visibility_set(&x, VisibilityVariant::Total).unwrap().holds);
    }

    #[test]
    fn general_position_blocking_is_a_triple() {
        let j = FamilyGraph::johnson(5, 2).unwrap();
        let vg = VisibilityGraph::new(j).unwrap();
        // {1,2} - {1,3} - {3,4}: the middle lies on a shortest path
        let x = vs(j, &[&[1, 2], &[1, 3], &[3, 4]]);
        let check = vg.is_visibility_set(&x, VisibilityVariant::GeneralPosition).unwrap();
        let Some(Blocking::Triple(a, m, b)) = check.blocking else {
            panic!("expected a triple");
        };
        let d = |p: &KSubset, q: &KSubset| j.distance(p, q).unwrap();
        assert_eq!(d(&a, &m) + d(&m, &b), d(&a, &b));
    }

    #[test]
    fn max_examples() {
        let p = VisibilityGraph::new(FamilyGraph::kneser(5, 2).unwrap()).unwrap();
        let c = p.max_visibility_number(VisibilityVariant::Total, Budget::default()).unwrap();
        assert_eq!((c.value, c.status), (0, Status::Exact));
        assert!(c.blocking_pair.is_some());
        assert!(c.revalidate(&p).unwrap());

        let j = VisibilityGraph::new(FamilyGraph::johnson(4, 2).unwrap()).unwrap();
        let mu = j.max_visibility_number(VisibilityVariant::Mutual, Budget::default()).unwrap();
        assert_eq!(mu.value, 5);
        assert!(mu.revalidate(&j).unwrap());
        let mut_ = j.max_visibility_number(VisibilityVariant::Total, Budget::default()).unwrap();
        assert_eq!(mut_.value, 4);
        assert!(mut_.revalidate(&j).unwrap());
    }

    #[test]
    fn search_matches_brute_force_with_colex_tie_break() {
        for g in [
            FamilyGraph::kneser(5, 2).unwrap(),
            FamilyGraph::johnson(4, 2).unwrap(),
            FamilyGraph::johnson(5, 2).unwrap(),
            FamilyGraph::johnson(5, 3).unwrap(),
        ] {
            let vg = VisibilityGraph::new(g).unwrap();
            for variant in VisibilityVariant::ALL {
                let got = vg.max_visibility_number(variant, Budget::default()).unwrap();
                let (size, witness) = brute_force_max(&vg, variant);
                assert_eq!(got.status, Status::Exact);
                assert_eq!(got.value, size, "{g} {variant}");
                assert_eq!(got.witness.indices(), witness, "{g} {variant}");
                assert!(got.revalidate(&vg).unwrap());
            }
        }
    }

    #[test]
    fn hereditary_variants_are_monotone() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for g in [
            FamilyGraph::johnson(6, 2).unwrap(),
            FamilyGraph::kneser(6, 2).unwrap(),
            FamilyGraph::kneser(7, 3).unwrap(),
        ] {
            let vg = VisibilityGraph::new(g).unwrap();
            for variant in [VisibilityVariant::Mutual, VisibilityVariant::Total] {
                let c = vg.max_visibility_number(variant, Budget::default()).unwrap();
                let members = c.witness.indices();
                for _ in 0..50 {
                    let sub = members.iter().copied().filter(|_| rng.gen_bool(0.5));
                    let x = VertexSet::from_indices(g, sub).unwrap();
                    assert!(vg.is_visibility_set(&x, variant).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn sandwich_on_small_graphs() {
        for g in [
            FamilyGraph::kneser(5, 2).unwrap(),
            FamilyGraph::johnson(4, 2).unwrap(),
            FamilyGraph::johnson(5, 2).unwrap(),
        ] {
            let vg = VisibilityGraph::new(g).unwrap();
            let val = |v| vg.max_visibility_number(v, Budget::default()).unwrap().value;
            let (mu, mut_, mud, muo, gp) = (
                val(VisibilityVariant::Mutual),
                val(VisibilityVariant::Total),
                val(VisibilityVariant::Dual),
                val(VisibilityVariant::Outer),
                val(VisibilityVariant::GeneralPosition),
            );
            assert!(mut_ <= mud && mud <= mu, "{g}");
            assert!(mut_ <= muo && muo <= mu, "{g}");
            assert!(gp <= mu, "{g}");
        }
    }

    #[test]
    fn fast_kneser_check_examples() {
        let g = FamilyGraph::kneser(8, 2).unwrap();
        let outside = |sets: &[&[usize]]| vs(g, sets).complement();
        let x = outside(&[&[1, 2], &[3, 4], &[5, 6], &[7, 8]]);
        assert!(kneser_total_mv_check_fast(8, 2, &x).unwrap());
        let x = outside(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert!(!kneser_total_mv_check_fast(8, 2, &x).unwrap());
        let g7 = FamilyGraph::kneser(7, 2).unwrap();
        assert!(!kneser_total_mv_check_fast(7, 2, &VertexSet::all(g7)).unwrap());
        let g7_3 = FamilyGraph::kneser(7, 3).unwrap();
        assert!(matches!(
            kneser_total_mv_check_fast(7, 3, &VertexSet::empty(g7_3)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn fast_check_agrees_with_definition() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (n, k) in [(6, 2), (7, 2), (8, 2), (8, 3)] {
            let g = FamilyGraph::kneser(n, k).unwrap();
            let vg = VisibilityGraph::new(g).unwrap();
            for _ in 0..200 {
                let p: f64 = rng.gen();
                let x = VertexSet::from_indices(
                    g,
                    (0..g.vertex_count()).filter(|_| rng.gen_bool(p)),
                )
                .unwrap();
                assert_eq!(
                    kneser_total_mv_check_fast(n, k, &x).unwrap(),
                    vg.is_visibility_set(&x, VisibilityVariant::Total).unwrap().holds
                );
            }
        }
    }

    #[test]
    fn vertex_set_rules() {
        let g = FamilyGraph::kneser(5, 2).unwrap();
        let a = set(5, &[1, 2]);
        assert!(VertexSet::from_subsets(g, [a, a]).is_err());
        assert!(VertexSet::from_subsets(g, [set(5, &[1])]).is_err());
        assert!(VertexSet::from_indices(g, [10]).is_err());
        let x = VertexSet::from_subsets(g, [a]).unwrap();
        assert_eq!(x.complement().len(), 9);
        assert!(x.contains(&a));
        let j = FamilyGraph::johnson(5, 2).unwrap();
        let vg = VisibilityGraph::new(j).unwrap();
        assert!(vg.is_visibility_set(&x, VisibilityVariant::Mutual).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let p = VisibilityGraph::new(FamilyGraph::johnson(4, 2).unwrap()).unwrap();
        let c = p.max_visibility_number(VisibilityVariant::Total, Budget::default()).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["family"], "johnson:n=4,k=2");
        assert_eq!(json["variant"], "total");
        assert_eq!(json["value"], 4);
        assert_eq!(json["status"], "exact");
        assert_eq!(json["witness"].as_array().unwrap().len(), 4);
        assert!(json["nodes_expanded"].as_u64().unwrap() > 0);
    }
}
