//! Graphs with ordered vertices, flags and legs; canonical contractions,
//! graph-trees and the correspondence with constructs of the edge
//! incidence hypergraph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructs::{is_construct, Construct};
use crate::hypergraph::{Hypergraph, HypergraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate flag `{0}`")]
    DuplicateFlag(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown flag `{0}`")]
    UnknownFlag(String),
    #[error("unordered incidence: flag `{0}` sits at an earlier vertex than its predecessor")]
    UnorderedIncidence(String),
    #[error("broken involution at flag `{0}`")]
    BrokenInvolution(String),
    #[error("leg list mismatch: {0}")]
    Legs(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no internal edges")]
    NoInternalEdges,
    #[error("edge set is empty or not connected")]
    DisconnectedEdgeSet,
    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("expected exactly one fiber with internal edges, found {0}")]
    FiberCount(usize),
    #[error("compatibility violated: {0}")]
    Compatibility(String),
    #[error("invalid graph-tree: {0}")]
    InvalidTree(String),
    #[error("not a construct of the incidence hypergraph")]
    InvalidConstruct,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    pub name: String,
    pub vertex: usize,
    pub partner: Option<usize>,
}

/// An internal edge, as a pair of flag indices with `low < high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InternalEdge {
    pub low: usize,
    pub high: usize,
}

/// A connected graph. Flags are stored in the global order, which is the
/// concatenation of the local orders along the vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<String>,
    flags: Vec<Flag>,
    legs: Vec<usize>,
}

/// On-disk graph description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub flags: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub involution: Vec<[String; 2]>,
    #[serde(default)]
    pub legs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<OrientationFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct OrientationFile {
    /// Edge (by canonical name) to its input flag.
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
    /// Leg to `"in"` or `"out"`.
    #[serde(default)]
    pub legs: BTreeMap<String, String>,
}

impl Graph {
    /// Builds a graph from flags listed in global order with their vertex
    /// index, involution pairs and the leg order.
    pub fn from_parts(
        vertices: Vec<String>,
        flags: Vec<(String, usize)>,
        pairs: &[(String, String)],
        legs: &[String],
    ) -> Result<Graph, GraphError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut index = HashMap::new();
        let mut last = 0;
        for (i, (name, v)) in flags.iter().enumerate() {
            if *v >= vertices.len() {
                return Err(GraphError::UnknownVertex(format!("#{v}")));
            }
            if *v < last {
                return Err(GraphError::UnorderedIncidence(name.clone()));
            }
            last = *v;
            if index.insert(name.as_str(), i).is_some() {
                return Err(GraphError::DuplicateFlag(name.clone()));
            }
        }
        let mut partner = vec![None; flags.len()];
        for (a, b) in pairs {
            let ia = *index.get(a.as_str()).ok_or_else(|| GraphError::UnknownFlag(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| GraphError::UnknownFlag(b.clone()))?;
            if ia == ib {
                return Err(GraphError::BrokenInvolution(a.clone()));
            }
            for (x, y, name) in [(ia, ib, a), (ib, ia, b)] {
                if partner[x].is_some() {
                    return Err(GraphError::BrokenInvolution(name.clone()));
                }
                partner[x] = Some(y);
            }
        }
        let mut leg_idx = Vec::with_capacity(legs.len());
        for l in legs {
            let i = *index.get(l.as_str()).ok_or_else(|| GraphError::UnknownFlag(l.clone()))?;
            if partner[i].is_some() {
                return Err(GraphError::Legs(format!("`{l}` belongs to an internal edge")));
            }
            if leg_idx.contains(&i) {
                return Err(GraphError::Legs(format!("`{l}` listed twice")));
            }
            leg_idx.push(i);
        }
        let fixed = partner.iter().filter(|p| p.is_none()).count();
        if fixed != leg_idx.len() {
            let missing: Vec<_> = (0..flags.len())
                .filter(|i| partner[*i].is_none() && !leg_idx.contains(i))
                .map(|i| flags[i].0.clone())
                .collect();
            return Err(GraphError::Legs(format!("unlisted legs {missing:?}")));
        }
        let g = Graph {
            vertices,
            flags: flags
                .into_iter()
                .zip(partner)
                .map(|((name, vertex), partner)| Flag { name, vertex, partner })
                .collect(),
            legs: leg_idx,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Convenience constructor: `(vertex, local flags)` in vertex order.
    pub fn build(vertices: &[(&str, &[&str])], pairs: &[(&str, &str)], legs: &[&str]) -> Result<Graph, GraphError> {
        let names = vertices.iter().map(|(v, _)| v.to_string()).collect();
        let flags = vertices
            .iter()
            .enumerate()
            .flat_map(|(i, (_, fs))| fs.iter().map(move |f| (f.to_string(), i)))
            .collect();
        let pairs: Vec<_> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let legs: Vec<_> = legs.iter().map(|l| l.to_string()).collect();
        Graph::from_parts(names, flags, &pairs, &legs)
    }

    pub fn from_file(file: &GraphFile) -> Result<Graph, GraphError> {
        for k in file.flags.keys() {
            if !file.vertices.contains(k) {
                return Err(GraphError::UnknownVertex(k.clone()));
            }
        }
        let flags = file
            .vertices
            .iter()
            .enumerate()
            .flat_map(|(i, v)| file.flags.get(v).into_iter().flatten().map(move |f| (f.clone(), i)))
            .collect();
        let pairs: Vec<_> = file.involution.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        Graph::from_parts(file.vertices.clone(), flags, &pairs, &file.legs)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices.clone(),
            flags: (0..self.vertices.len())
                .map(|v| (self.vertices[v].clone(), self.local_flags(v).map(|f| self.flags[f].name.clone()).collect()))
                .collect(),
            involution: self
                .edges()
                .iter()
                .map(|e| [self.flags[e.low].name.clone(), self.flags[e.high].name.clone()])
                .collect(),
            legs: self.leg_names(),
            genus: None,
            orientation: None,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn flag_index(&self, name: &str) -> Option<usize> {
        self.flags.iter().position(|f| f.name == name)
    }

    pub fn flag_name(&self, f: usize) -> &str {
        &self.flags[f].name
    }

    /// Flags at vertex `v`, in local order.
    pub fn local_flags(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.flags.len()).filter(move |&f| self.flags[f].vertex == v)
    }

    pub fn local_flag_names(&self, v: usize) -> Vec<String> {
        self.local_flags(v).map(|f| self.flags[f].name.clone()).collect()
    }

    /// Legs in leg order.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn leg_names(&self) -> Vec<String> {
        self.legs.iter().map(|&l| self.flags[l].name.clone()).collect()
    }

    /// Internal edges ordered by their smaller flag.
    pub fn edges(&self) -> Vec<InternalEdge> {
        (0..self.flags.len())
            .filter_map(|f| match self.flags[f].partner {
                Some(p) if f < p => Some(InternalEdge { low: f, high: p }),
                _ => None,
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.flags.iter().filter(|f| f.partner.is_some()).count() / 2
    }

    pub fn edge_names(&self) -> Vec<String> {
        self.edges().iter().map(|e| self.flags[e.low].name.clone()).collect()
    }

    /// Position in [`Graph::edges`] of the edge containing flag `name`.
    pub fn edge_of_flag(&self, name: &str) -> Option<usize> {
        let f = self.flag_index(name)?;
        let p = self.flags[f].partner?;
        let low = f.min(p);
        self.edges().iter().position(|e| e.low == low)
    }

    /// Edge positions by canonical edge name.
    pub fn edge_set(&self, names: &[&str]) -> Result<VertexSet, GraphError> {
        let edges = self.edges();
        names.iter().try_fold(VertexSet::EMPTY, |acc, n| {
            edges
                .iter()
                .position(|e| self.flags[e.low].name == *n)
                .map(|p| acc.union(VertexSet::singleton(p)))
                .ok_or_else(|| GraphError::UnknownFlag(n.to_string()))
        })
    }

    pub fn edge_endpoints(&self, e: InternalEdge) -> (usize, usize) {
        (self.flags[e.low].vertex, self.flags[e.high].vertex)
    }

    /// First Betti number `|Edg| − |V| + 1`.
    pub fn b1(&self) -> isize {
        self.edge_count() as isize - self.vertices.len() as isize + 1
    }

    pub fn is_corolla(&self) -> bool {
        self.vertices.len() == 1 && self.edge_count() == 0
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for e in self.edges() {
            let (a, b) = self.edge_endpoints(e);
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        let r0 = find(&mut comp, 0);
        (0..n).all(|v| find(&mut comp, v) == r0)
    }

    /// Vertices touched by the edges in `x`, ascending.
    pub fn vertices_of_edges(&self, x: VertexSet) -> Vec<usize> {
        let edges = self.edges();
        let set: BTreeSet<usize> = x
            .iter()
            .flat_map(|p| {
                let (a, b) = self.edge_endpoints(edges[p]);
                [a, b]
            })
            .collect();
        set.into_iter().collect()
    }

    /// Vertices are the internal edges; hyperedges are the singletons and
    /// the pairs of edges sharing a vertex.
    pub fn incidence_hypergraph(&self) -> Result<Hypergraph, GraphError> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(GraphError::NoInternalEdges);
        }
        let labels: Arc<[String]> = self.edge_names().into();
        let ends: Vec<(usize, usize)> = edges.iter().map(|&e| self.edge_endpoints(e)).collect();
        let mut pairs = vec![];
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = ends[i];
                let (c, d) = ends[j];
                if a == c || a == d || b == c || b == d {
                    pairs.push(VertexSet::from_positions([i, j]));
                }
            }
        }
        Ok(Hypergraph::from_sets(labels, VertexSet::full(edges.len()), pairs)?)
    }

    /// The subgraph spanned by a connected set of edge positions: all flags
    /// at the spanned vertices, the edges of `x` kept internal and every
    /// other flag turned into a leg, legs ordered by flag order.
    pub fn subgraph_from_edges(&self, x: VertexSet) -> Result<Graph, GraphError> {
        let h = self.incidence_hypergraph()?;
        if x.is_empty() || !x.is_subset(h.vertices()) || !h.is_connected_set(x) {
            return Err(GraphError::DisconnectedEdgeSet);
        }
        let vs = self.vertices_of_edges(x);
        Ok(self.fiber_on(&vs, x))
    }

    /// Graph on `vs` with all their flags, keeping only the edges in `x`.
    fn fiber_on(&self, vs: &[usize], x: VertexSet) -> Graph {
        let edges = self.edges();
        let kept: BTreeSet<usize> = x.iter().flat_map(|p| [edges[p].low, edges[p].high]).collect();
        let mut map = HashMap::new();
        let mut flags = vec![];
        for f in 0..self.flags.len() {
            if let Some(i) = vs.iter().position(|&v| v == self.flags[f].vertex) {
                map.insert(f, flags.len());
                flags.push(Flag { name: self.flags[f].name.clone(), vertex: i, partner: None });
            }
        }
        for (&old, &new) in &map {
            if kept.contains(&old) {
                flags[new].partner = Some(map[&self.flags[old].partner.unwrap()]);
            }
        }
        let legs = (0..flags.len()).filter(|&f| flags[f].partner.is_none()).collect();
        Graph { vertices: vs.iter().map(|&v| self.vertices[v].clone()).collect(), flags, legs }
    }

    /// Canonical contraction of the edges `e` (positions in [`Graph::edges`]).
    pub fn contract_edges(&self, e: VertexSet) -> Result<Contraction, GraphError> {
        let vs = self.vertices_of_edges(e);
        canonical_contraction(self, &vs, e)
    }
}

/// A morphism of graphs: `vertex_map` sends source vertices to target
/// vertices; `flag_map` injects target flags into source flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    pub vertex_map: Vec<usize>,
    pub flag_map: Vec<usize>,
}

impl GraphMorphism {
    /// Checks that the square commutes and that the injection respects
    /// the involutions.
    pub fn validate(&self, source: &Graph, target: &Graph) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::InvalidMorphism(m));
        if self.vertex_map.len() != source.vertices.len() || self.flag_map.len() != target.flags.len() {
            return bad("map sizes do not match the graphs".into());
        }
        if self.vertex_map.iter().any(|&v| v >= target.vertices.len()) {
            return bad("vertex map leaves the target".into());
        }
        let image: BTreeSet<usize> = self.flag_map.iter().copied().collect();
        if image.len() != self.flag_map.len() || image.iter().any(|&f| f >= source.flags.len()) {
            return bad("flag map is not injective".into());
        }
        for (t, &s) in self.flag_map.iter().enumerate() {
            if target.flags[t].vertex != self.vertex_map[source.flags[s].vertex] {
                return bad(format!("square fails at flag `{}`", target.flags[t].name));
            }
            let expected = target.flags[t].partner.map(|p| self.flag_map[p]);
            match (expected, source.flags[s].partner) {
                (Some(a), Some(b)) if a == b => {}
                (None, None) => {}
                (None, Some(p)) if image.contains(&p) => {
                    return bad(format!("flag `{}` loses its partner", target.flags[t].name))
                }
                (None, Some(_)) => {}
                _ => return bad(format!("involution mismatch at `{}`", target.flags[t].name)),
            }
        }
        Ok(())
    }

    /// Fibers over each target vertex: source vertices mapping there, all
    /// their flags, internal edges being the source edges outside the image.
    pub fn fibers(&self, source: &Graph, target: &Graph) -> Result<Vec<Graph>, GraphError> {
        let image: BTreeSet<usize> = self.flag_map.iter().copied().collect();
        let edges = source.edges();
        (0..target.vertices.len())
            .map(|x| {
                let vs: Vec<usize> = (0..source.vertices.len()).filter(|&v| self.vertex_map[v] == x).collect();
                if vs.is_empty() {
                    return Err(GraphError::InvalidMorphism(format!("empty fiber over `{}`", target.vertices[x])));
                }
                let inner = VertexSet::from_positions(edges.iter().enumerate().filter_map(|(i, e)| {
                    let (a, b) = source.edge_endpoints(*e);
                    (vs.contains(&a) && vs.contains(&b) && !image.contains(&e.low)).then_some(i)
                }));
                let fib = source.fiber_on(&vs, inner);
                if !fib.is_connected() {
                    return Err(GraphError::InvalidMorphism(format!("fiber over `{}` is disconnected", target.vertices[x])));
                }
                Ok(fib)
            })
            .collect()
    }

    /// `self ∘ first`, i.e. first apply `first`.
    pub fn after(&self, first: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            vertex_map: first.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            flag_map: self.flag_map.iter().map(|&f| first.flag_map[f]).collect(),
        }
    }
}

/// Result of a canonical contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub source: Graph,
    pub quotient: Graph,
    pub fiber: Graph,
    pub morphism: GraphMorphism,
    /// Name of the vertex the fiber collapses to (the minimum of its vertices).
    pub merged: String,
}

/// Contracts the connected edge set `e` spanning exactly the vertices `v`.
pub fn canonical_contraction(g: &Graph, v: &[usize], e: VertexSet) -> Result<Contraction, GraphError> {
    let h = g.incidence_hypergraph()?;
    if e.is_empty() || !e.is_subset(h.vertices()) || !h.is_connected_set(e) {
        return Err(GraphError::InvalidSubgraph("edge set must be nonempty and connected".into()));
    }
    let vset: BTreeSet<usize> = v.iter().copied().collect();
    let spanned: BTreeSet<usize> = g.vertices_of_edges(e).into_iter().collect();
    if vset != spanned {
        return Err(GraphError::InvalidSubgraph("vertex set differs from the vertices spanned by the edges".into()));
    }
    let min = *vset.iter().next().unwrap();
    let new_vertices: Vec<usize> = (0..g.vertices.len()).filter(|u| !vset.contains(u) || *u == min).collect();
    let vertex_map: Vec<usize> = (0..g.vertices.len())
        .map(|u| {
            let img = if vset.contains(&u) { min } else { u };
            new_vertices.iter().position(|&w| w == img).unwrap()
        })
        .collect();
    let edges = g.edges();
    let removed: BTreeSet<usize> = e.iter().flat_map(|p| [edges[p].low, edges[p].high]).collect();
    let mut survivors: Vec<usize> = (0..g.flags.len()).filter(|f| !removed.contains(f)).collect();
    // lexicographic: new vertex first, then the old flag order
    survivors.sort_by_key(|&f| (vertex_map[g.flags[f].vertex], f));
    let pos: HashMap<usize, usize> = survivors.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let flags = survivors
        .iter()
        .map(|&f| Flag {
            name: g.flags[f].name.clone(),
            vertex: vertex_map[g.flags[f].vertex],
            partner: g.flags[f].partner.map(|p| pos[&p]),
        })
        .collect();
    let quotient = Graph {
        vertices: new_vertices.iter().map(|&u| g.vertices[u].clone()).collect(),
        flags,
        legs: g.legs.iter().map(|l| pos[l]).collect(),
    };
    let fiber = g.fiber_on(&spanned.into_iter().collect::<Vec<_>>(), e);
    Ok(Contraction {
        source: g.clone(),
        quotient,
        fiber,
        morphism: GraphMorphism { vertex_map, flag_map: survivors },
        merged: g.vertices[min].clone(),
    })
}

/// Splits a morphism with a single nontrivial fiber into its canonical
/// contraction `π` and the isomorphism `σ` from the target onto the
/// quotient of `π`, so that `π = σ ∘ τ`.
pub fn factor_pre_elementary(
    source: &Graph,
    target: &Graph,
    tau: &GraphMorphism,
) -> Result<(Contraction, GraphMorphism), GraphError> {
    tau.validate(source, target)?;
    let fibers = tau.fibers(source, target)?;
    let nontrivial: Vec<usize> = (0..fibers.len()).filter(|&x| fibers[x].edge_count() > 0).collect();
    if nontrivial.len() != 1 {
        return Err(GraphError::FiberCount(nontrivial.len()));
    }
    if fibers.iter().any(|f| f.edge_count() == 0 && f.vertices.len() != 1) {
        return Err(GraphError::InvalidMorphism("a trivial fiber is not a corolla".into()));
    }
    let x = nontrivial[0];
    let vs: Vec<usize> = (0..source.vertices.len()).filter(|&v| tau.vertex_map[v] == x).collect();
    let image: BTreeSet<usize> = tau.flag_map.iter().copied().collect();
    let e = VertexSet::from_positions(
        source.edges().iter().enumerate().filter(|(_, ed)| !image.contains(&ed.low)).map(|(i, _)| i),
    );
    let pi = canonical_contraction(source, &vs, e)?;
    let mut vertex_map = vec![usize::MAX; target.vertices.len()];
    for v in 0..source.vertices.len() {
        vertex_map[tau.vertex_map[v]] = pi.morphism.vertex_map[v];
    }
    let back: HashMap<usize, usize> = tau.flag_map.iter().enumerate().map(|(t, &s)| (s, t)).collect();
    let flag_map = pi.morphism.flag_map.iter().map(|s| back[s]).collect();
    let sigma = GraphMorphism { vertex_map, flag_map };
    sigma.validate(target, &pi.quotient)?;
    Ok((pi, sigma))
}

/// A node of a graph-tree: its decorating graph and the subtrees feeding
/// into it, ordered by label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeNode {
    pub graph: Graph,
    pub children: Vec<TreeNode>,
}

/// A rooted tree of graphs whose leaves are the ordered set `order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphTree {
    order: Vec<String>,
    root: TreeNode,
}

impl TreeNode {
    fn label<'a>(&'a self, rank: &HashMap<&str, usize>) -> &'a str {
        self.graph.vertices.iter().min_by_key(|v| rank[v.as_str()]).unwrap()
    }

    fn sort(&mut self, rank: &HashMap<&str, usize>) {
        for c in &mut self.children {
            c.sort(rank);
        }
        self.children.sort_by_key(|c| rank[c.label(rank)]);
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(TreeNode::node_count).sum::<usize>()
    }

    fn collect_graphs<'a>(&'a self, out: &mut Vec<&'a Graph>) {
        out.push(&self.graph);
        for c in &self.children {
            c.collect_graphs(out);
        }
    }
}

impl GraphTree {
    /// Builds and validates a graph-tree; children are put in label order.
    pub fn new(order: Vec<String>, mut root: TreeNode) -> Result<GraphTree, GraphError> {
        let rank = rank_map(&order);
        for g in {
            let mut gs = vec![];
            root.collect_graphs(&mut gs);
            gs
        } {
            if g.vertices.iter().any(|v| !rank.contains_key(v.as_str())) {
                return Err(GraphError::InvalidTree("vertex outside the leaf set".into()));
            }
        }
        root.sort(&rank);
        let t = GraphTree { order, root };
        t.validate()?;
        Ok(t)
    }

    pub fn corolla(g: Graph) -> Result<GraphTree, GraphError> {
        GraphTree::new(g.vertices.clone(), TreeNode { graph: g, children: vec![] })
    }

    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn node_count(&self) -> usize {
        self.root.node_count()
    }

    /// Checks both compatibility conditions and that the leaves are
    /// exactly `order`.
    pub fn validate(&self) -> Result<(), GraphError> {
        let rank = rank_map(&self.order);
        let mut leaves = vec![];
        validate_node(&self.root, &rank, &mut leaves)?;
        leaves.sort_by_key(|l| rank[l.as_str()]);
        if leaves != self.order {
            return Err(GraphError::InvalidTree("leaves are not the ordered leaf set".into()));
        }
        Ok(())
    }

    /// Total contraction.
    pub fn gr(&self) -> Result<Graph, GraphError> {
        let rank = rank_map(&self.order);
        gr_node(&self.root, &rank)
    }

    /// Collapses the tree edge above the node at `path` (child indices from
    /// the root, nonempty) by vertex insertion.
    pub fn contract_tree_edge(&self, path: &[usize]) -> Result<GraphTree, GraphError> {
        let (&last, parent_path) = path
            .split_last()
            .ok_or_else(|| GraphError::InvalidTree("the root has no outgoing tree edge".into()))?;
        let rank = rank_map(&self.order);
        let mut root = self.root.clone();
        let parent = node_at_mut(&mut root, parent_path)?;
        if last >= parent.children.len() {
            return Err(GraphError::InvalidTree("no such tree edge".into()));
        }
        let child = parent.children.remove(last);
        let at = child.label(&rank).to_string();
        parent.graph = insert_vertex(&parent.graph, &at, &child.graph, &rank)?;
        parent.children.extend(child.children);
        root.sort(&rank);
        Ok(GraphTree { order: self.order.clone(), root })
    }

    /// Paths of all non-root nodes, in preorder.
    pub fn edge_paths(&self) -> Vec<Vec<usize>> {
        fn go(n: &TreeNode, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for (i, c) in n.children.iter().enumerate() {
                path.push(i);
                out.push(path.clone());
                go(c, path, out);
                path.pop();
            }
        }
        let mut out = vec![];
        go(&self.root, &mut vec![], &mut out);
        out
    }

    pub fn node(&self, path: &[usize]) -> Option<&TreeNode> {
        path.iter().try_fold(&self.root, |n, &i| n.children.get(i))
    }
}

fn rank_map(order: &[String]) -> HashMap<&str, usize> {
    order.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
}

fn node_at_mut<'a>(n: &'a mut TreeNode, path: &[usize]) -> Result<&'a mut TreeNode, GraphError> {
    match path.split_first() {
        None => Ok(n),
        Some((&i, rest)) => {
            let c = n.children.get_mut(i).ok_or_else(|| GraphError::InvalidTree("no such node".into()))?;
            node_at_mut(c, rest)
        }
    }
}

fn validate_node(n: &TreeNode, rank: &HashMap<&str, usize>, leaves: &mut Vec<String>) -> Result<(), GraphError> {
    let g = &n.graph;
    if g.edge_count() == 0 {
        return Err(GraphError::InvalidTree("a decorating graph has no internal edge".into()));
    }
    if g.vertices.windows(2).any(|w| rank[w[0].as_str()] >= rank[w[1].as_str()]) {
        return Err(GraphError::Compatibility("vertex order is not induced from the leaf order".into()));
    }
    let mut inputs = BTreeSet::new();
    for c in &n.children {
        let label = c.label(rank);
        let v = g
            .vertex_index(label)
            .ok_or_else(|| GraphError::Compatibility(format!("no vertex `{label}` for an input edge")))?;
        if !inputs.insert(label) {
            return Err(GraphError::Compatibility(format!("two inputs labelled `{label}`")));
        }
        if g.local_flag_names(v) != c.graph.leg_names() {
            return Err(GraphError::Compatibility(format!(
                "half-edges at `{label}` differ from the legs of the graph below"
            )));
        }
        validate_node(c, rank, leaves)?;
    }
    leaves.extend(g.vertices.iter().filter(|v| !inputs.contains(v.as_str())).cloned());
    Ok(())
}

fn gr_node(n: &TreeNode, rank: &HashMap<&str, usize>) -> Result<Graph, GraphError> {
    let mut g = n.graph.clone();
    for c in &n.children {
        g = insert_vertex(&g, c.label(rank), &gr_node(c, rank)?, rank)?;
    }
    Ok(g)
}

/// Inserts `inner` into the vertex `at` of `outer`. The half-edges at `at`
/// must be, in order, the legs of `inner`.
fn insert_vertex(outer: &Graph, at: &str, inner: &Graph, rank: &HashMap<&str, usize>) -> Result<Graph, GraphError> {
    let a = outer
        .vertex_index(at)
        .ok_or_else(|| GraphError::Compatibility(format!("no vertex `{at}`")))?;
    if outer.local_flag_names(a) != inner.leg_names() {
        return Err(GraphError::Compatibility(format!("half-edges at `{at}` differ from the inserted legs")));
    }
    let mut vertices: Vec<&str> = outer
        .vertices
        .iter()
        .filter(|v| *v != at)
        .chain(inner.vertices.iter())
        .map(String::as_str)
        .collect();
    vertices.sort_by_key(|v| rank[v]);
    let mut flags = vec![];
    for (i, v) in vertices.iter().enumerate() {
        let src = if inner.vertex_index(v).is_some() { inner } else { outer };
        let vi = src.vertex_index(v).unwrap();
        flags.extend(src.local_flag_names(vi).into_iter().map(|f| (f, i)));
    }
    let mut pairs = vec![];
    for e in inner.edges() {
        pairs.push((inner.flags[e.low].name.clone(), inner.flags[e.high].name.clone()));
    }
    for e in outer.edges() {
        pairs.push((outer.flags[e.low].name.clone(), outer.flags[e.high].name.clone()));
    }
    Graph::from_parts(vertices.into_iter().map(String::from).collect(), flags, &pairs, &outer.leg_names())
}

/// The graph-tree of a construct of the incidence hypergraph of `g`.
pub fn alpha(g: &Graph, c: &Construct) -> Result<GraphTree, GraphError> {
    let h = g.incidence_hypergraph()?;
    if !is_construct(&h, c) {
        return Err(GraphError::InvalidConstruct);
    }
    let root = alpha_node(g, g, c)?;
    GraphTree::new(g.vertices.clone(), root)
}

fn alpha_node(top: &Graph, sub: &Graph, c: &Construct) -> Result<TreeNode, GraphError> {
    let mut cur = sub.clone();
    let mut children = vec![];
    for k in c.children() {
        let names: BTreeSet<String> = top.edges().iter().enumerate().filter(|(i, _)| k.union().contains(*i)).map(|(_, e)| top.flags[e.low].name.clone()).collect();
        let local = VertexSet::from_positions(
            cur.edges().iter().enumerate().filter(|(_, e)| names.contains(&cur.flags[e.low].name)).map(|(i, _)| i),
        );
        cur = cur.contract_edges(local)?.quotient;
        let child_graph = top.subgraph_from_edges(k.union())?;
        children.push(alpha_node(top, &child_graph, k)?);
    }
    Ok(TreeNode { graph: cur, children })
}

/// Inverse of [`alpha`]: decorates each node by the edges of its graph.
pub fn alpha_inv(g: &Graph, t: &GraphTree) -> Result<Construct, GraphError> {
    fn go(g: &Graph, n: &TreeNode) -> Result<Construct, GraphError> {
        let mut dec = VertexSet::EMPTY;
        for e in n.graph.edges() {
            let (a, b) = (n.graph.flag_name(e.low), n.graph.flag_name(e.high));
            let p = g.edge_of_flag(a).ok_or_else(|| GraphError::UnknownFlag(a.to_string()))?;
            if g.edge_of_flag(b) != Some(p) {
                return Err(GraphError::InvalidTree(format!("`{a}`/`{b}` is not an edge of the graph")));
            }
            dec = dec.union(VertexSet::singleton(p));
        }
        let children = n.children.iter().map(|c| go(g, c)).collect::<Result<_, _>>()?;
        Ok(Construct::new(dec, children))
    }
    let c = go(g, &t.root)?;
    if !is_construct(&g.incidence_hypergraph()?, &c) {
        return Err(GraphError::InvalidConstruct);
    }
    Ok(c)
}

/// All graph-trees with `gr(T) = g`, built directly from contractions:
/// the children of the root are the connected pieces of a proper edge
/// subset, the root graph is `g` with those pieces contracted.
pub fn enumerate_graph_trees(g: &Graph) -> Result<Vec<GraphTree>, GraphError> {
    let nodes = trees_of(g, g)?;
    nodes.into_iter().map(|n| GraphTree::new(g.vertices.clone(), n)).collect()
}

fn trees_of(top: &Graph, sub: &Graph) -> Result<Vec<TreeNode>, GraphError> {
    let m = sub.edge_count();
    if m == 0 {
        return Err(GraphError::NoInternalEdges);
    }
    let edges = sub.edges();
    let mut out = vec![];
    for removed in VertexSet::full(m).nonempty_subsets().chain([VertexSet::EMPTY]) {
        if removed == VertexSet::full(m) {
            continue;
        }
        // pieces of `removed` glued along shared vertices
        let mut pieces: Vec<(BTreeSet<usize>, BTreeSet<String>)> = vec![];
        for p in removed.iter() {
            let (a, b) = sub.edge_endpoints(edges[p]);
            let mut piece = (BTreeSet::from([a, b]), BTreeSet::from([sub.flags[edges[p].low].name.clone()]));
            pieces.retain(|q| {
                if q.0.contains(&a) || q.0.contains(&b) {
                    piece.0.extend(q.0.iter().copied());
                    piece.1.extend(q.1.iter().cloned());
                    false
                } else {
                    true
                }
            });
            // merging may connect further pieces
            loop {
                let before = pieces.len();
                pieces.retain(|q| {
                    if q.0.iter().any(|v| piece.0.contains(v)) {
                        piece.0.extend(q.0.iter().copied());
                        piece.1.extend(q.1.iter().cloned());
                        false
                    } else {
                        true
                    }
                });
                if pieces.len() == before {
                    break;
                }
            }
            pieces.push(piece);
        }
        let mut cur = sub.clone();
        let mut options: Vec<Vec<TreeNode>> = vec![];
        for (_, names) in &pieces {
            let local = VertexSet::from_positions(
                cur.edges().iter().enumerate().filter(|(_, e)| names.contains(&cur.flags[e.low].name)).map(|(i, _)| i),
            );
            cur = cur.contract_edges(local)?.quotient;
            let top_set = VertexSet::from_positions(names.iter().map(|n| top.edge_of_flag(n).unwrap()));
            options.push(trees_of(top, &top.subgraph_from_edges(top_set)?)?);
        }
        let mut combos: Vec<Vec<TreeNode>> = vec![vec![]];
        for opts in options {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    opts.iter().map(move |o| {
                        let mut c = c.clone();
                        c.push(o.clone());
                        c
                    })
                })
                .collect();
        }
        out.extend(combos.into_iter().map(|children| TreeNode { graph: cur.clone(), children }));
    }
    Ok(out)
}

/// Grafts the root of `r` onto the leaf `x` of `s`. `order` is the ordered
/// vertex set of the source graph of the underlying contraction.
pub fn graft(s: &GraphTree, r: &GraphTree, x: &str, order: &[String]) -> Result<GraphTree, GraphError> {
    let rank = rank_map(order);
    for v in s.order.iter().chain(r.order.iter()) {
        if !rank.contains_key(v.as_str()) {
            return Err(GraphError::InvalidTree(format!("`{v}` missing from the ambient order")));
        }
    }
    if r.root.label(&rank) != x {
        return Err(GraphError::Compatibility(format!("grafted tree is not labelled by `{x}`")));
    }
    let path = leaf_path(&s.root, x, &rank).ok_or_else(|| GraphError::InvalidTree(format!("`{x}` is not a leaf")))?;
    let mut root = s.root.clone();
    let node = node_at_mut(&mut root, &path)?;
    let v = node.graph.vertex_index(x).unwrap();
    if node.graph.local_flag_names(v) != r.root.graph.leg_names() {
        return Err(GraphError::Compatibility(format!("half-edges at `{x}` differ from the grafted legs")));
    }
    node.children.push(r.root.clone());
    root.sort(&rank);
    let mut leaves: Vec<String> = s.order.iter().filter(|v| *v != x).chain(r.order.iter()).cloned().collect();
    leaves.sort_by_key(|v| rank[v.as_str()]);
    let t = GraphTree { order: leaves, root };
    t.validate()?;
    Ok(t)
}

fn leaf_path(n: &TreeNode, x: &str, rank: &HashMap<&str, usize>) -> Option<Vec<usize>> {
    if n.graph.vertex_index(x).is_some() && n.children.iter().all(|c| c.label(rank) != x) {
        return Some(vec![]);
    }
    n.children.iter().enumerate().find_map(|(i, c)| {
        leaf_path(c, x, rank).map(|mut p| {
            p.insert(0, i);
            p
        })
    })
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::constructs::{collapse, enumerate_constructs};

    #[test]
    fn validation() {
        assert_eq!(gamma2().edge_names(), vec!["a", "b"]);
        assert_eq!(ex1().edge_count(), 5);
        assert_eq!(ex1().edge_names(), vec!["u", "v", "x", "y", "z"]);
        let err = Graph::build(&[("1", &["a", "b", "c"])], &[("a", "b"), ("b", "c")], &[]);
        assert_eq!(err, Err(GraphError::BrokenInvolution("b".into())));
        let err = Graph::build(&[("1", &["a"]), ("2", &["b"])], &[], &["a", "b"]);
        assert_eq!(err, Err(GraphError::Disconnected));
        let err = Graph::from_parts(
            vec!["1".into(), "2".into()],
            vec![("a".into(), 1), ("b".into(), 0)],
            &[("a".into(), "b".into())],
            &[],
        );
        assert_eq!(err, Err(GraphError::UnorderedIncidence("b".into())));
        assert!(matches!(Graph::build(&[("1", &["a"])], &[], &[]), Err(GraphError::Legs(_))));
    }

    #[test]
    fn file_round_trip() {
        let g = ex1();
        assert_eq!(Graph::from_file(&g.to_file()).unwrap(), g);
    }

    #[test]
    fn incidence() {
        let h = ex1().incidence_hypergraph().unwrap();
        assert_eq!(h.len(), 5);
        let pairs: Vec<_> = h.hyperedges().iter().filter(|e| e.len() == 2).collect();
        assert_eq!(pairs.len(), 9);
        assert!(!h.has_hyperedge(h.set_of(&["u", "z"]).unwrap()));

        let h = gamma2().incidence_hypergraph().unwrap();
        assert_eq!(h.hyperedges().len(), 3);
        let h = theta().incidence_hypergraph().unwrap();
        assert_eq!(h.hyperedges().len(), 6);

        let corolla = Graph::build(&[("1", &["l"])], &[], &["l"]).unwrap();
        assert_eq!(corolla.incidence_hypergraph(), Err(GraphError::NoInternalEdges));
    }

    #[test]
    fn subgraphs() {
        let g = ex1();
        let s = g.subgraph_from_edges(g.edge_set(&["x"]).unwrap()).unwrap();
        assert_eq!(s.vertices(), &["2", "3"]);
        assert_eq!(s.edge_names(), vec!["x"]);
        assert_eq!(s.leg_names(), vec!["u'", "y", "l1", "l2", "v'", "y'", "z", "z'"]);

        let g2 = gamma2();
        let s = g2.subgraph_from_edges(g2.edge_set(&["a"]).unwrap()).unwrap();
        assert_eq!(s.vertices().len(), 2);
        assert_eq!(s.edge_count(), 1);

        assert_eq!(g.subgraph_from_edges(g.edge_set(&["u", "z"]).unwrap()), Err(GraphError::DisconnectedEdgeSet));
    }

    #[test]
    fn contraction_of_gamma2() {
        let g = gamma2();
        let c = g.contract_edges(g.edge_set(&["b"]).unwrap()).unwrap();
        assert_eq!(c.quotient.vertices(), &["1", "2"]);
        assert_eq!(c.quotient.edge_names(), vec!["a"]);
        assert_eq!(c.fiber.edge_names(), vec!["b"]);
        assert_eq!(c.fiber.leg_names(), vec!["a'"]);
        assert_eq!(c.merged, "2");
        c.morphism.validate(&g, &c.quotient).unwrap();
    }

    #[test]
    fn contraction_reorders_flags_lexicographically() {
        // vertices 1, 2, 3; edge (1,6) joins vertices 1 and 3
        let g = Graph::build(&[("1", &["1", "2"]), ("2", &["3", "4"]), ("3", &["5", "6"])], &[("1", "6"), ("2", "3")], &["5", "4"]).unwrap();
        let c = canonical_contraction(&g, &[0, 2], g.edge_set(&["1"]).unwrap()).unwrap();
        let q = &c.quotient;
        assert_eq!(q.vertices(), &["1", "2"]);
        assert_eq!(q.local_flag_names(0), vec!["2", "5"]);
        assert_eq!(q.local_flag_names(1), vec!["3", "4"]);
        assert_eq!(q.leg_names(), vec!["5", "4"]);
        assert_eq!(c.morphism.vertex_map, vec![0, 1, 0]);
        assert!(canonical_contraction(&g, &[0, 1], g.edge_set(&["1"]).unwrap()).is_err());
    }

    #[test]
    fn contract_everything() {
        let g = ex1();
        let c = g.contract_edges(VertexSet::full(5)).unwrap();
        assert!(c.quotient.is_corolla());
        assert_eq!(c.quotient.leg_names(), vec!["l1", "l2"]);
        assert_eq!(c.fiber.b1() + c.quotient.b1(), g.b1());
    }

    #[test]
    fn factorization() {
        let g = gamma2();
        let c = g.contract_edges(g.edge_set(&["b"]).unwrap()).unwrap();
        let (pi, sigma) = factor_pre_elementary(&g, &c.quotient, &c.morphism).unwrap();
        assert_eq!(pi, c);
        assert_eq!(sigma.vertex_map, vec![0, 1]);
        assert_eq!(sigma.flag_map, vec![0, 1]);

        // the quotient with its vertices listed in the opposite order
        let relabelled = Graph::build(&[("2", &["a'"]), ("1", &["a"])], &[("a", "a'")], &[]).unwrap();
        let tau = GraphMorphism { vertex_map: vec![1, 0, 0], flag_map: vec![1, 0] };
        let (pi, sigma) = factor_pre_elementary(&g, &relabelled, &tau).unwrap();
        assert_eq!(pi, c);
        assert_eq!(sigma.vertex_map, vec![1, 0]);
        assert_eq!(sigma.after(&tau), pi.morphism);

        // contracting both edges of the theta's three into different fibers is impossible,
        // so use the identity on a graph with two edges: no nontrivial fiber
        let id = GraphMorphism { vertex_map: vec![0, 1, 2], flag_map: (0..4).collect() };
        assert_eq!(factor_pre_elementary(&g, &g, &id), Err(GraphError::FiberCount(0)));
    }

    #[test]
    fn factorization_rejects_two_fibers() {
        // path 1 - 2 - 3 - 4 contracted along a and c into two vertices
        let g = Graph::build(
            &[("1", &["a"]), ("2", &["a'", "b"]), ("3", &["b'", "c"]), ("4", &["c'"])],
            &[("a", "a'"), ("b", "b'"), ("c", "c'")],
            &[],
        )
        .unwrap();
        let target = Graph::build(&[("1", &["b"]), ("3", &["b'"])], &[("b", "b'")], &[]).unwrap();
        let tau = GraphMorphism { vertex_map: vec![0, 0, 1, 1], flag_map: vec![2, 3] };
        assert_eq!(factor_pre_elementary(&g, &target, &tau), Err(GraphError::FiberCount(2)));
    }

    #[test]
    fn two_vertex_tree_contracts_to_gamma2() {
        let g = gamma2();
        let c = g.contract_edges(g.edge_set(&["b"]).unwrap()).unwrap();
        let t = GraphTree::new(
            g.vertices().to_vec(),
            TreeNode { graph: c.quotient.clone(), children: vec![TreeNode { graph: c.fiber.clone(), children: vec![] }] },
        )
        .unwrap();
        let flat = t.contract_tree_edge(&[0]).unwrap();
        assert_eq!(flat, GraphTree::corolla(g.clone()).unwrap());
        assert_eq!(t.gr().unwrap(), g);

        let s = GraphTree::corolla(c.quotient.clone()).unwrap();
        let r = GraphTree::corolla(c.fiber.clone()).unwrap();
        assert_eq!(graft(&s, &r, "2", g.vertices()).unwrap(), t);
    }

    #[test]
    fn alpha_example() {
        let g = ex1();
        let h = g.incidence_hypergraph().unwrap();
        let c = Construct::new(h.set_of(&["x", "y"]).unwrap(), vec![Construct::leaf(h.set_of(&["u", "v", "z"]).unwrap())]);
        let t = alpha(&g, &c).unwrap();
        let root = &t.root().graph;
        assert_eq!(root.vertices(), &["1"]);
        assert_eq!(root.edge_names(), vec!["x", "y"]);
        assert_eq!(root.leg_names(), vec!["l1", "l2"]);
        let child = &t.root().children[0].graph;
        assert_eq!(child.vertices(), &["1", "2", "3"]);
        assert_eq!(child.edge_names(), vec!["u", "v", "z"]);
        assert_eq!(t.gr().unwrap(), g);
        assert_eq!(alpha_inv(&g, &t).unwrap(), c);

        let top = alpha(&g, &Construct::leaf(h.vertices())).unwrap();
        assert_eq!(top, GraphTree::corolla(g.clone()).unwrap());
    }

    #[test]
    fn alpha_is_a_poset_isomorphism() {
        for g in [gamma2(), theta(), ex1()] {
            let h = g.incidence_hypergraph().unwrap();
            let all = enumerate_constructs(&h).unwrap();
            let mut trees = BTreeSet::new();
            for c in &all {
                let t = alpha(&g, c).unwrap();
                assert_eq!(alpha_inv(&g, &t).unwrap(), *c);
                assert_eq!(t.gr().unwrap(), g);
                let paths = t.edge_paths();
                assert_eq!(paths.len(), c.edges().len());
                for (p, k) in c.edges() {
                    let up = alpha(&g, &collapse(c, p, k).unwrap()).unwrap();
                    let path = paths
                        .iter()
                        .find(|path| alpha_inv_dec(&g, &t.node(path).unwrap().graph) == k)
                        .unwrap();
                    assert_eq!(t.contract_tree_edge(path).unwrap(), up);
                }
                trees.insert(format!("{t:?}"));
            }
            let direct = enumerate_graph_trees(&g).unwrap();
            assert_eq!(direct.len(), all.len());
            let direct: BTreeSet<String> = direct.iter().map(|t| format!("{t:?}")).collect();
            assert_eq!(direct, trees);
        }
    }

    fn alpha_inv_dec(g: &Graph, n: &Graph) -> VertexSet {
        VertexSet::from_positions(n.edges().iter().map(|e| g.edge_of_flag(n.flag_name(e.low)).unwrap()))
    }

    #[test]
    fn gr_is_order_independent() {
        let g = ex1();
        let h = g.incidence_hypergraph().unwrap();
        for c in enumerate_constructs(&h).unwrap().into_iter().filter(|c| c.rank() == 0) {
            let t = alpha(&g, &c).unwrap();
            // top-down: always contract the first edge below the root
            let mut a = t.clone();
            while a.node_count() > 1 {
                a = a.contract_tree_edge(&[0]).unwrap();
            }
            // bottom-up: always contract the deepest edge
            let mut b = t.clone();
            while b.node_count() > 1 {
                let p = b.edge_paths().into_iter().max_by_key(|p| p.len()).unwrap();
                b = b.contract_tree_edge(&p).unwrap();
            }
            assert_eq!(a, b);
            assert_eq!(a.root().graph, g);
        }
    }

    #[test]
    fn graft_is_associative_on_disjoint_leaves() {
        // path 1 - 2 - 3 - 4 - 5; fibers {a} at 1 and {d} at 4 of the middle quotient
        let g = Graph::build(
            &[("1", &["a"]), ("2", &["a'", "b"]), ("3", &["b'", "c"]), ("4", &["c'", "d"]), ("5", &["d'"])],
            &[("a", "a'"), ("b", "b'"), ("c", "c'"), ("d", "d'")],
            &[],
        )
        .unwrap();
        let c1 = g.contract_edges(g.edge_set(&["a"]).unwrap()).unwrap();
        let q1 = &c1.quotient;
        let c2 = q1.contract_edges(q1.edge_set(&["d"]).unwrap()).unwrap();
        let s = GraphTree::corolla(c2.quotient.clone()).unwrap();
        let r = GraphTree::corolla(c1.fiber.clone()).unwrap();
        let q = GraphTree::corolla(c2.fiber.clone()).unwrap();
        let order = g.vertices();
        let left = graft(&graft(&s, &r, "1", order).unwrap(), &q, "4", order).unwrap();
        let right = graft(&graft(&s, &q, "4", order).unwrap(), &r, "1", order).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.gr().unwrap(), g);
    }

    #[test]
    fn graft_rejects_incompatible_legs() {
        let g = gamma2();
        let c = g.contract_edges(g.edge_set(&["b"]).unwrap()).unwrap();
        let s = GraphTree::corolla(c.quotient.clone()).unwrap();
        let bad_fiber = Graph::build(&[("2", &["q", "b"]), ("3", &["b'"])], &[("b", "b'")], &["q"]).unwrap();
        let r = GraphTree::corolla(bad_fiber).unwrap();
        assert!(matches!(graft(&s, &r, "2", g.vertices()), Err(GraphError::Compatibility(_))));
    }
}
