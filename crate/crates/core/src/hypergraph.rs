//! Finite hypergraphs over a totally ordered ground set.
//!
//! Vertex subsets are bitsets over ground positions, so every derived
//! hypergraph (restrictions, removals, components) keeps the ambient
//! positions and labels of the hypergraph it came from.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("ground set of {0} vertices exceeds the capacity of {MAX_VERTICES}")]
    Capacity(usize),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),
    #[error("empty hyperedge")]
    EmptyHyperedge,
    #[error("duplicate hyperedge {0}")]
    DuplicateHyperedge(String),
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("subset {0} is not contained in the vertex set")]
    NotASubset(String),
    #[error("removing {0} would leave the empty hypergraph")]
    RemovesEverything(String),
}

/// A subset of ground positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(pos: usize) -> Self {
        VertexSet(1 << pos)
    }

    pub fn full(n: usize) -> Self {
        if n == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0, |acc, p| acc | (1 << p)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, pos: usize) -> bool {
        self.0 & (1 << pos) != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Smallest position, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    /// All nonempty subsets of `self`, in increasing bit order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut sub: u32 = 0;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            // next submask in increasing order
            sub = (sub.wrapping_sub(full)) & full;
            if sub == 0 {
                done = true;
                None
            } else {
                Some(VertexSet(sub))
            }
        })
    }
}

/// Lexicographic order on the ascending element sequences, so that
/// `{a} < {a,b} < {a,b,c} < {a,c} < {b}`.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A vertex of the ground set: its label and its rank in the total order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexId {
    pub label: String,
    pub position: usize,
}

/// A finite hypergraph whose vertices are a subset of an ordered ground set.
#[derive(Clone)]
pub struct Hypergraph {
    ground: Arc<[String]>,
    vertices: VertexSet,
    edges: Vec<VertexSet>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(")?;
        write!(f, "{}; ", self.format_set(self.vertices))?;
        let edges: Vec<String> = self.edges.iter().map(|e| self.format_set(*e)).collect();
        write!(f, "{})", edges.join(" "))
    }
}

impl Hypergraph {
    /// Builds a hypergraph on `labels` (in order). Missing singleton
    /// hyperedges are added; see [`Hypergraph::with_report`] to learn which.
    pub fn new<S: AsRef<str>>(labels: &[S], hyperedges: &[Vec<S>]) -> Result<Self, HypergraphError> {
        Self::with_report(labels, hyperedges).map(|(h, _)| h)
    }

    /// Like [`Hypergraph::new`], also returning the labels whose singleton
    /// hyperedge had to be added.
    pub fn with_report<S: AsRef<str>>(
        labels: &[S],
        hyperedges: &[Vec<S>],
    ) -> Result<(Self, Vec<String>), HypergraphError> {
        if labels.len() > MAX_VERTICES {
            return Err(HypergraphError::Capacity(labels.len()));
        }
        let mut ground: Vec<String> = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref().to_string();
            if ground.contains(&l) {
                return Err(HypergraphError::DuplicateVertex(l));
            }
            ground.push(l);
        }
        let ground: Arc<[String]> = ground.into();
        let position = |s: &str| {
            ground
                .iter()
                .position(|g| g == s)
                .ok_or_else(|| HypergraphError::UnknownVertex(s.to_string()))
        };
        let mut seen = BTreeSet::new();
        for e in hyperedges {
            if e.is_empty() {
                return Err(HypergraphError::EmptyHyperedge);
            }
            let mut set = VertexSet::EMPTY;
            for v in e {
                set = set.union(VertexSet::singleton(position(v.as_ref())?));
            }
            if !seen.insert(set) {
                let h = Hypergraph { ground: ground.clone(), vertices: VertexSet::EMPTY, edges: vec![] };
                return Err(HypergraphError::DuplicateHyperedge(h.format_set(set)));
            }
        }
        let mut added = Vec::new();
        for (p, l) in ground.iter().enumerate() {
            if seen.insert(VertexSet::singleton(p)) {
                added.push(l.clone());
            }
        }
        let vertices = VertexSet::full(ground.len());
        Ok((Hypergraph { ground, vertices, edges: seen.into_iter().collect() }, added))
    }

    /// Builds a hypergraph directly from position sets over `ground`.
    /// Singletons of `vertices` are added; hyperedges outside `vertices`
    /// are rejected.
    pub fn from_sets(
        ground: Arc<[String]>,
        vertices: VertexSet,
        edges: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, HypergraphError> {
        if ground.len() > MAX_VERTICES {
            return Err(HypergraphError::Capacity(ground.len()));
        }
        let mut set: BTreeSet<VertexSet> = vertices.iter().map(VertexSet::singleton).collect();
        for e in edges {
            if e.is_empty() {
                return Err(HypergraphError::EmptyHyperedge);
            }
            if !e.is_subset(vertices) {
                let h = Hypergraph { ground: ground.clone(), vertices, edges: vec![] };
                return Err(HypergraphError::NotASubset(h.format_set(e)));
            }
            set.insert(e);
        }
        Ok(Hypergraph { ground, vertices, edges: set.into_iter().collect() })
    }

    /// The distinguished empty hypergraph over `ground`.
    pub fn empty(ground: Arc<[String]>) -> Self {
        Hypergraph { ground, vertices: VertexSet::EMPTY, edges: vec![] }
    }

    pub fn ground(&self) -> &Arc<[String]> {
        &self.ground
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .map(|p| VertexId { label: self.ground[p].clone(), position: p })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Hyperedges, sorted by [`VertexSet`]'s order.
    pub fn hyperedges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn has_hyperedge(&self, set: VertexSet) -> bool {
        self.edges.binary_search(&set).is_ok()
    }

    pub fn label(&self, pos: usize) -> &str {
        &self.ground[pos]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == label)
    }

    pub fn labels_of(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|p| self.ground[p].clone()).collect()
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet, HypergraphError> {
        labels.iter().try_fold(VertexSet::EMPTY, |acc, l| {
            self.position(l.as_ref())
                .map(|p| acc.union(VertexSet::singleton(p)))
                .ok_or_else(|| HypergraphError::UnknownVertex(l.as_ref().to_string()))
        })
    }

    pub fn format_set(&self, set: VertexSet) -> String {
        format!("{{{}}}", self.labels_of(set).join(","))
    }

    /// The connected component of `seed` inside `within`, using only
    /// hyperedges contained in `within`.
    pub fn component_within(&self, within: VertexSet, seed: VertexSet) -> VertexSet {
        let mut comp = seed;
        loop {
            let mut grown = comp;
            for &e in &self.edges {
                if e.is_subset(within) && e.intersects(grown) {
                    grown = grown.union(e);
                }
            }
            if grown == comp {
                return comp;
            }
            comp = grown;
        }
    }

    /// Vertex sets of the components of the restriction to `within`,
    /// ordered by their minimal vertex.
    pub fn component_sets_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within.intersection(self.vertices);
        let mut out = Vec::new();
        while let Some(m) = rest.min() {
            let c = self.component_within(within, VertexSet::singleton(m));
            out.push(c);
            rest = rest.difference(c);
        }
        out
    }

    /// True iff the restriction to `set` is connected (and `set` is nonempty).
    pub fn is_connected_set(&self, set: VertexSet) -> bool {
        match set.min() {
            None => false,
            Some(m) => self.component_within(set, VertexSet::singleton(m)) == set,
        }
    }

    /// A hypergraph is connected when it has exactly one component.
    pub fn is_connected(&self) -> bool {
        self.is_connected_set(self.vertices)
    }

    pub fn restriction(&self, x: VertexSet) -> Result<Hypergraph, HypergraphError> {
        if x.is_empty() {
            return Err(HypergraphError::EmptySubset);
        }
        if !x.is_subset(self.vertices) {
            return Err(HypergraphError::NotASubset(self.format_set(x)));
        }
        Ok(self.restrict_unchecked(x))
    }

    fn restrict_unchecked(&self, x: VertexSet) -> Hypergraph {
        Hypergraph {
            ground: self.ground.clone(),
            vertices: x,
            edges: self.edges.iter().copied().filter(|e| e.is_subset(x)).collect(),
        }
    }

    /// Restriction to the complement of `x`.
    pub fn remove(&self, x: VertexSet) -> Result<Hypergraph, HypergraphError> {
        if !x.is_subset(self.vertices) {
            return Err(HypergraphError::NotASubset(self.format_set(x)));
        }
        if x == self.vertices {
            return Err(HypergraphError::RemovesEverything(self.format_set(x)));
        }
        Ok(self.restrict_unchecked(self.vertices.difference(x)))
    }

    /// All nonempty subsets whose restriction is connected.
    pub fn saturate(&self) -> Hypergraph {
        let edges = self.saturated_sets();
        Hypergraph { ground: self.ground.clone(), vertices: self.vertices, edges }
    }

    /// The hyperedges of [`Hypergraph::saturate`], sorted.
    pub fn saturated_sets(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> =
            self.vertices.nonempty_subsets().filter(|&s| self.is_connected_set(s)).collect();
        out.sort();
        out
    }

    pub fn is_saturated(&self) -> bool {
        self.edges.iter().enumerate().all(|(i, &x)| {
            self.edges[i + 1..]
                .iter()
                .all(|&y| !x.intersects(y) || self.has_hyperedge(x.union(y)))
        })
    }

    pub fn components(&self) -> Vec<Hypergraph> {
        self.component_sets_within(self.vertices)
            .into_iter()
            .map(|c| self.restrict_unchecked(c))
            .collect()
    }

    /// `{X \ v | X ∈ Sat(h)} \ {∅}`, a hypergraph on the complement of `v`.
    pub fn minus(&self, v: VertexSet) -> Result<Hypergraph, HypergraphError> {
        if v.is_empty() {
            return Err(HypergraphError::EmptySubset);
        }
        if !v.is_subset(self.vertices) {
            return Err(HypergraphError::NotASubset(self.format_set(v)));
        }
        if v == self.vertices {
            return Err(HypergraphError::RemovesEverything(self.format_set(v)));
        }
        let rest = self.vertices.difference(v);
        let edges: BTreeSet<VertexSet> = self
            .saturated_sets()
            .into_iter()
            .map(|x| x.difference(v))
            .filter(|x| !x.is_empty())
            .collect();
        Ok(Hypergraph { ground: self.ground.clone(), vertices: rest, edges: edges.into_iter().collect() })
    }

    /// True iff some hyperedge inside `within` meets both `a` and `b`.
    pub fn adjacent_within(&self, within: VertexSet, a: VertexSet, b: VertexSet) -> bool {
        self.edges
            .iter()
            .any(|&e| e.is_subset(within) && e.intersects(a) && e.intersects(b))
    }
}

/// On-disk hypergraph description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HypergraphFile {
    pub vertices: Vec<String>,
    pub hyperedges: Vec<Vec<String>>,
}

impl HypergraphFile {
    /// Parses into a hypergraph, returning warnings for auto-added singletons.
    pub fn build(&self) -> Result<(Hypergraph, Vec<String>), HypergraphError> {
        let (h, added) = Hypergraph::with_report(&self.vertices, &self.hyperedges)?;
        let warnings = added
            .into_iter()
            .map(|l| format!("singleton hyperedge {{{l}}} was missing and has been added"))
            .collect();
        Ok((h, warnings))
    }
}

impl From<&Hypergraph> for HypergraphFile {
    fn from(h: &Hypergraph) -> Self {
        HypergraphFile {
            vertices: h.labels_of(h.vertices()),
            hyperedges: h.hyperedges().iter().map(|e| h.labels_of(*e)).collect(),
        }
    }
}
