//! Constructs of a hypergraph, their face poset and the diamond property.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexSet};

/// Default cap on the number of faces materialized by [`face_poset`].
pub const DEFAULT_MAX_FACES: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("hypergraph is not connected")]
    Disconnected,
    #[error("hypergraph is empty")]
    Empty,
    #[error("tree is not a construct of the hypergraph")]
    Invalid,
    #[error("no node decorated by {0}")]
    NoSuchNode(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("{0} is not a tree edge")]
    NoSuchEdge(String),
    #[error("face poset has {count} faces, above the cap of {cap}")]
    Capacity { count: u128, cap: usize },
    #[error("malformed construct JSON: {0}")]
    Json(String),
}

/// A rooted tree of vertex-set decorations. Children are kept in the
/// canonical order: ascending minimum of their subtree's union.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Construct {
    decoration: VertexSet,
    children: Vec<Construct>,
}

impl Construct {
    pub fn leaf(decoration: VertexSet) -> Self {
        Construct { decoration, children: vec![] }
    }

    pub fn new(decoration: VertexSet, mut children: Vec<Construct>) -> Self {
        children.sort_by_key(|c| c.union().min());
        Construct { decoration, children }
    }

    /// The construct of the empty hypergraph.
    pub fn empty() -> Self {
        Construct::leaf(VertexSet::EMPTY)
    }

    pub fn is_empty(&self) -> bool {
        self.decoration.is_empty() && self.children.is_empty()
    }

    pub fn decoration(&self) -> VertexSet {
        self.decoration
    }

    pub fn children(&self) -> &[Construct] {
        &self.children
    }

    /// Union of all decorations in the tree.
    pub fn union(&self) -> VertexSet {
        self.children.iter().fold(self.decoration, |acc, c| acc.union(c.union()))
    }

    pub fn node_count(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        1 + self.children.iter().map(Construct::node_count).sum::<usize>()
    }

    /// `|H| - #nodes`, where `|H|` is the size of the union.
    pub fn rank(&self) -> isize {
        self.union().len() as isize - self.node_count() as isize
    }

    /// Node decorations in preorder (node, then children in canonical order).
    pub fn decorations(&self) -> Vec<VertexSet> {
        let mut out = vec![];
        self.walk(&mut |c| out.push(c.decoration));
        out
    }

    /// Tree edges as (parent decoration, child decoration).
    pub fn edges(&self) -> Vec<(VertexSet, VertexSet)> {
        let mut out = vec![];
        self.walk(&mut |c| {
            for ch in &c.children {
                out.push((c.decoration, ch.decoration));
            }
        });
        out
    }

    /// Subtree unions of every node, in preorder.
    pub fn subtree_unions(&self) -> Vec<VertexSet> {
        let mut out = vec![];
        self.walk(&mut |c| out.push(c.union()));
        out
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Construct)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    /// The subtree rooted at the node decorated by `dec`.
    pub fn find(&self, dec: VertexSet) -> Option<&Construct> {
        if self.decoration == dec {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(dec))
    }

    /// Rebuilds the tree with the node decorated by `dec` replaced by `f(node)`.
    fn replace_node(&self, dec: VertexSet, f: &mut dyn FnMut(&Construct) -> Construct) -> Option<Construct> {
        if self.decoration == dec {
            return Some(f(self));
        }
        for (i, c) in self.children.iter().enumerate() {
            if let Some(new) = c.replace_node(dec, f) {
                let mut children = self.children.clone();
                children[i] = new;
                return Some(Construct::new(self.decoration, children));
            }
        }
        None
    }

    /// Text form such as `{a}{{b},{c}}`.
    pub fn display(&self, h: &Hypergraph) -> String {
        let mut s = String::new();
        self.write_display(h, &mut s);
        s
    }

    fn write_display(&self, h: &Hypergraph, s: &mut String) {
        if self.is_empty() {
            s.push('∅');
            return;
        }
        s.push_str(&h.format_set(self.decoration));
        if !self.children.is_empty() {
            s.push('{');
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                c.write_display(h, s);
            }
            s.push('}');
        }
    }

    pub fn to_json(&self, h: &Hypergraph) -> Value {
        json!({
            "decoration": h.labels_of(self.decoration),
            "children": self.children.iter().map(|c| c.to_json(h)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(h: &Hypergraph, v: &Value) -> Result<Construct, ConstructError> {
        let err = |m: &str| ConstructError::Json(m.to_string());
        let dec = v.get("decoration").and_then(Value::as_array).ok_or_else(|| err("missing decoration"))?;
        let labels: Vec<&str> = dec.iter().map(|l| l.as_str().ok_or_else(|| err("label must be a string"))).collect::<Result<_, _>>()?;
        let decoration = h.set_of(&labels).map_err(|e| ConstructError::Json(e.to_string()))?;
        let children = match v.get("children") {
            None => vec![],
            Some(c) => c
                .as_array()
                .ok_or_else(|| err("children must be an array"))?
                .iter()
                .map(|c| Construct::from_json(h, c))
                .collect::<Result<_, _>>()?,
        };
        Ok(Construct::new(decoration, children))
    }
}

/// Checks the recursive definition directly. Child order is irrelevant.
pub fn is_construct(h: &Hypergraph, c: &Construct) -> bool {
    if h.is_empty() {
        return c.is_empty();
    }
    valid_on(h, h.vertices(), c)
}

fn valid_on(h: &Hypergraph, s: VertexSet, c: &Construct) -> bool {
    let x = c.decoration;
    if x.is_empty() || !x.is_subset(s) {
        return false;
    }
    if x == s {
        return c.children.is_empty();
    }
    let comps = h.component_sets_within(s.difference(x));
    if comps.len() != c.children.len() {
        return false;
    }
    let mut used = vec![false; comps.len()];
    for child in &c.children {
        let u = child.union();
        match comps.iter().position(|&k| k == u) {
            Some(i) if !used[i] => used[i] = true,
            _ => return false,
        }
        if !valid_on(h, u, child) {
            return false;
        }
    }
    true
}

/// `|H| - #nodes`, after checking validity.
pub fn rank(c: &Construct, h: &Hypergraph) -> Result<isize, ConstructError> {
    if !is_construct(h, c) {
        return Err(ConstructError::Invalid);
    }
    Ok(h.len() as isize - c.node_count() as isize)
}

fn require_connected(h: &Hypergraph) -> Result<(), ConstructError> {
    if h.is_empty() {
        return Err(ConstructError::Empty);
    }
    if !h.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    Ok(())
}

/// All constructs, ordered by rank descending then by tree order.
pub fn enumerate_constructs(h: &Hypergraph) -> Result<Vec<Construct>, ConstructError> {
    require_connected(h)?;
    let mut memo = HashMap::new();
    let mut all = constructs_on(h, h.vertices(), &mut memo);
    all.sort_by(|a, b| b.rank().cmp(&a.rank()).then_with(|| a.cmp(b)));
    Ok(all)
}

fn constructs_on(h: &Hypergraph, s: VertexSet, memo: &mut HashMap<VertexSet, Vec<Construct>>) -> Vec<Construct> {
    if let Some(v) = memo.get(&s) {
        return v.clone();
    }
    let mut out = vec![];
    for x in s.nonempty_subsets() {
        if x == s {
            out.push(Construct::leaf(s));
            continue;
        }
        let comps = h.component_sets_within(s.difference(x));
        let mut partial: Vec<Vec<Construct>> = vec![vec![]];
        for k in comps {
            let options = constructs_on(h, k, memo);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    options.iter().map(move |o| {
                        let mut q = p.clone();
                        q.push(o.clone());
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|ch| Construct::new(x, ch)));
    }
    memo.insert(s, out.clone());
    out
}

/// Number of constructs, without materializing them.
pub fn count_constructs(h: &Hypergraph) -> Result<u128, ConstructError> {
    require_connected(h)?;
    let mut memo = HashMap::new();
    Ok(count_on(h, h.vertices(), &mut memo))
}

fn count_on(h: &Hypergraph, s: VertexSet, memo: &mut HashMap<VertexSet, u128>) -> u128 {
    if let Some(&n) = memo.get(&s) {
        return n;
    }
    let mut total = 0u128;
    for x in s.nonempty_subsets() {
        if x == s {
            total += 1;
            continue;
        }
        total += h
            .component_sets_within(s.difference(x))
            .into_iter()
            .map(|k| count_on(h, k, memo))
            .product::<u128>();
    }
    memo.insert(s, total);
    total
}

/// Replaces the node decorated by `x ∪ y` with `x`, giving it a new child `y`.
/// Children hyperedge-adjacent to `y` (inside the node's subtree minus `x`)
/// move under `y`.
pub fn split(h: &Hypergraph, c: &Construct, x: VertexSet, y: VertexSet) -> Result<Construct, ConstructError> {
    if x.is_empty() || y.is_empty() || x.intersects(y) {
        return Err(ConstructError::InvalidSplit("parts must be nonempty and disjoint".into()));
    }
    let v = x.union(y);
    let node = c.find(v).ok_or_else(|| ConstructError::NoSuchNode(h.format_set(v)))?;
    let within = node.union().difference(x);
    c.replace_node(v, &mut |n| {
        let (under_y, mut under_x): (Vec<_>, Vec<_>) =
            n.children.iter().cloned().partition(|k| h.adjacent_within(within, k.union(), y));
        under_x.push(Construct::new(y, under_y));
        Construct::new(x, under_x)
    })
    .filter(|r| is_construct(h, r))
    .ok_or_else(|| {
        ConstructError::InvalidSplit(format!(
            "{} over {} is not a construct",
            h.format_set(x),
            h.format_set(y)
        ))
    })
}

/// Merges the child decorated by `child` into its parent `parent`.
pub fn collapse(c: &Construct, parent: VertexSet, child: VertexSet) -> Result<Construct, ConstructError> {
    let no_edge = || ConstructError::NoSuchEdge(format!("{parent:?} -> {child:?}"));
    let p = c.find(parent).ok_or_else(no_edge)?;
    if !p.children.iter().any(|k| k.decoration == child) {
        return Err(no_edge());
    }
    c.replace_node(parent, &mut |n| {
        let mut children = vec![];
        for k in &n.children {
            if k.decoration == child {
                children.extend(k.children.iter().cloned());
            } else {
                children.push(k.clone());
            }
        }
        Construct::new(parent.union(child), children)
    })
    .ok_or_else(no_edge)
}

/// Faces of the poset. `Bottom` is the adjoined least element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    Bottom,
    Construct(usize),
}

/// Constructs of `h` plus a bottom element, ordered by edge collapse.
#[derive(Debug, Clone)]
pub struct FacePoset {
    pub hypergraph: Hypergraph,
    /// Constructs in enumeration order.
    pub constructs: Vec<Construct>,
    /// Covering pairs `(lower, upper)` between constructs.
    pub covers: Vec<(usize, usize)>,
    index: HashMap<Construct, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl FacePoset {
    pub fn len(&self) -> usize {
        self.constructs.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, c: &Construct) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn rank(&self, f: Face) -> isize {
        match f {
            Face::Bottom => -1,
            Face::Construct(i) => self.constructs[i].rank(),
        }
    }

    pub fn top_rank(&self) -> isize {
        self.hypergraph.len() as isize - 1
    }

    /// Faces covering `f`.
    pub fn upper_covers(&self, f: Face) -> Vec<Face> {
        match f {
            Face::Bottom => (0..self.constructs.len())
                .filter(|&i| self.constructs[i].rank() == 0)
                .map(Face::Construct)
                .collect(),
            Face::Construct(i) => self.up[i].iter().map(|&j| Face::Construct(j)).collect(),
        }
    }

    /// Faces covered by `f`.
    pub fn lower_covers(&self, f: Face) -> Vec<Face> {
        match f {
            Face::Bottom => vec![],
            Face::Construct(i) if self.constructs[i].rank() == 0 => vec![Face::Bottom],
            Face::Construct(i) => self.down[i].iter().map(|&j| Face::Construct(j)).collect(),
        }
    }

    /// Reflexive-transitive closure of the covering relation.
    pub fn leq(&self, a: Face, b: Face) -> bool {
        match (a, b) {
            (Face::Bottom, _) => true,
            (_, Face::Bottom) => false,
            (Face::Construct(i), Face::Construct(j)) => {
                let mut seen = vec![false; self.constructs.len()];
                let mut queue = VecDeque::from([i]);
                while let Some(k) = queue.pop_front() {
                    if k == j {
                        return true;
                    }
                    for &u in &self.up[k] {
                        if !seen[u] && self.constructs[u].rank() <= self.constructs[j].rank() {
                            seen[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
                false
            }
        }
    }

    /// Number of faces in each rank from 0 to the top.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.top_rank().max(0) as usize;
        let mut f = vec![0; top + 1];
        for c in &self.constructs {
            f[c.rank() as usize] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn face_name(&self, f: Face) -> String {
        match f {
            Face::Bottom => "∅".into(),
            Face::Construct(i) => self.constructs[i].display(&self.hypergraph),
        }
    }

    pub fn to_json(&self) -> Value {
        let h = &self.hypergraph;
        let faces: Vec<Value> = self
            .constructs
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"id": i, "rank": c.rank(), "construct": c.to_json(h), "text": c.display(h)}))
            .collect();
        let mut covers: Vec<Value> = self.covers.iter().map(|(a, b)| json!([a, b])).collect();
        for f in self.upper_covers(Face::Bottom) {
            if let Face::Construct(i) = f {
                covers.push(json!(["bottom", i]));
            }
        }
        json!({"faces": faces, "bottom": {"rank": -1}, "covers": covers, "f_vector": self.f_vector()})
    }

    /// Hasse diagram, edges pointing from lower to upper face.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph faces {\n  rankdir=BT;\n  bottom [label=\"∅\"];\n");
        for (i, _) in self.constructs.iter().enumerate() {
            let _ = writeln!(s, "  c{i} [label=\"{}\"];", self.face_name(Face::Construct(i)));
        }
        for f in self.upper_covers(Face::Bottom) {
            if let Face::Construct(i) = f {
                let _ = writeln!(s, "  bottom -> c{i};");
            }
        }
        for (a, b) in &self.covers {
            let _ = writeln!(s, "  c{a} -> c{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn face_poset(h: &Hypergraph) -> Result<FacePoset, ConstructError> {
    face_poset_capped(h, DEFAULT_MAX_FACES)
}

pub fn face_poset_capped(h: &Hypergraph, cap: usize) -> Result<FacePoset, ConstructError> {
    let count = count_constructs(h)? + 1;
    if count > cap as u128 {
        return Err(ConstructError::Capacity { count, cap });
    }
    let constructs = enumerate_constructs(h)?;
    let index: HashMap<Construct, usize> = constructs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut covers = vec![];
    let mut up = vec![vec![]; constructs.len()];
    let mut down = vec![vec![]; constructs.len()];
    for (i, c) in constructs.iter().enumerate() {
        for (p, k) in c.edges() {
            let upper = collapse(c, p, k).expect("edge of the construct");
            let j = index[&upper];
            covers.push((i, j));
            up[i].push(j);
            down[j].push(i);
        }
    }
    Ok(FacePoset { hypergraph: h.clone(), constructs, covers, index, up, down })
}

/// How the two collapsed edges of a diamond sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiamondShape {
    /// The edges share no node.
    Disjoint,
    /// The edges share their parent.
    SharedParent,
    /// The child of one edge is the parent of the other.
    Chain,
}

#[derive(Debug, Clone)]
pub struct DiamondWitness {
    pub lower: Construct,
    pub left: Construct,
    pub right: Construct,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct DiamondReport {
    pub holds: bool,
    pub checked: usize,
    pub shapes: BTreeSet<DiamondShape>,
    pub witness: Option<DiamondWitness>,
}

/// Checks that every pair of upper covers of a construct of rank below
/// `|H| - 2` lies in a unique interval of length two with exactly two
/// middle elements.
pub fn check_diamond(h: &Hypergraph) -> Result<DiamondReport, ConstructError> {
    let p = face_poset(h)?;
    Ok(check_diamond_poset(&p))
}

pub fn check_diamond_poset(p: &FacePoset) -> DiamondReport {
    let n = p.hypergraph.len() as isize;
    let mut report = DiamondReport { holds: true, checked: 0, shapes: BTreeSet::new(), witness: None };
    for (ci, c) in p.constructs.iter().enumerate() {
        let k = c.rank() + 1;
        if !(0 < k && k < n - 1) {
            continue;
        }
        let edges = c.edges();
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                report.checked += 1;
                let left = p.up[ci][a];
                let right = p.up[ci][b];
                report.shapes.insert(shape(edges[a], edges[b]));
                let above_both: Vec<usize> = p.up[left].iter().copied().filter(|d| p.up[right].contains(d)).collect();
                let fail = |reason: String| DiamondWitness {
                    lower: c.clone(),
                    left: p.constructs[left].clone(),
                    right: p.constructs[right].clone(),
                    reason,
                };
                let Some(&d) = above_both.first() else {
                    report.holds = false;
                    report.witness.get_or_insert_with(|| fail("no common upper cover".into()));
                    continue;
                };
                let middle: BTreeSet<usize> = p.up[ci].iter().copied().filter(|m| p.up[*m].contains(&d)).collect();
                if middle != BTreeSet::from([left, right]) {
                    report.holds = false;
                    report
                        .witness
                        .get_or_insert_with(|| fail(format!("open interval has {} elements", middle.len())));
                }
            }
        }
    }
    report
}

fn shape(e: (VertexSet, VertexSet), f: (VertexSet, VertexSet)) -> DiamondShape {
    if e.0 == f.0 {
        DiamondShape::SharedParent
    } else if e.1 == f.0 || f.1 == e.0 {
        DiamondShape::Chain
    } else {
        DiamondShape::Disjoint
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::*;

    fn s(h: &Hypergraph, l: &[&str]) -> VertexSet {
        h.set_of(l).unwrap()
    }

    #[test]
    fn enumerate_small() {
        let h = h2();
        let all = enumerate_constructs(&h).unwrap();
        let text: Vec<_> = all.iter().map(|c| c.display(&h)).collect();
        assert_eq!(text, vec!["{a,b}", "{a}{{b}}", "{b}{{a}}"]);

        let p = face_poset(&h3p()).unwrap();
        assert_eq!(p.constructs.len(), 11);
        assert_eq!(p.f_vector(), vec![5, 5, 1]);
        let p = face_poset(&h3k()).unwrap();
        assert_eq!(p.constructs.len(), 13);
        assert_eq!(p.f_vector(), vec![6, 6, 1]);
    }

    #[test]
    fn disconnected_rejected() {
        let h = Hypergraph::new(&["a", "b"], &[]).unwrap();
        assert_eq!(enumerate_constructs(&h), Err(ConstructError::Disconnected));
    }

    #[test]
    fn validator_examples() {
        let h = h2();
        let t = Construct::new(s(&h, &["a"]), vec![Construct::leaf(s(&h, &["b"]))]);
        assert!(is_construct(&h, &t));
        let bad = Construct::new(h.vertices(), vec![Construct::leaf(s(&h, &["b"]))]);
        assert!(!is_construct(&h, &bad));

        let h = h3p();
        let ok = Construct::new(
            s(&h, &["a"]),
            vec![Construct::new(s(&h, &["c"]), vec![Construct::leaf(s(&h, &["b"]))])],
        );
        assert!(is_construct(&h, &ok));
        let bad = Construct::new(s(&h, &["b"]), vec![Construct::leaf(s(&h, &["a", "c"]))]);
        assert!(!is_construct(&h, &bad));
        // non-connected root decoration is allowed
        let ac = Construct::new(s(&h, &["a", "c"]), vec![Construct::leaf(s(&h, &["b"]))]);
        assert!(is_construct(&h, &ac));
    }

    #[test]
    fn rank_examples() {
        let h = h_ex1();
        let c = Construct::new(s(&h, &["x", "y"]), vec![Construct::leaf(s(&h, &["u", "v", "z"]))]);
        assert_eq!(rank(&c, &h), Ok(3));
        let h = h3p();
        assert_eq!(rank(&Construct::leaf(h.vertices()), &h), Ok(2));
        for c in enumerate_constructs(&h).unwrap() {
            if c.node_count() == 3 {
                assert_eq!(rank(&c, &h), Ok(0));
            }
        }
        let bad = Construct::leaf(s(&h, &["a"]));
        assert_eq!(rank(&bad, &h), Err(ConstructError::Invalid));
    }

    #[test]
    fn split_and_collapse_examples() {
        let h = h2();
        let top = Construct::leaf(h.vertices());
        let a = s(&h, &["a"]);
        let b = s(&h, &["b"]);
        let c = split(&h, &top, a, b).unwrap();
        assert_eq!(c.display(&h), "{a}{{b}}");
        assert_eq!(collapse(&c, a, b).unwrap(), top);

        let h = h3p();
        let top = Construct::leaf(h.vertices());
        assert!(matches!(
            split(&h, &top, s(&h, &["b"]), s(&h, &["a", "c"])),
            Err(ConstructError::InvalidSplit(_))
        ));
        let c = split(&h, &top, s(&h, &["a"]), s(&h, &["b", "c"])).unwrap();
        assert_eq!(c.display(&h), "{a}{{b,c}}");

        let chain = Construct::new(
            s(&h, &["a"]),
            vec![Construct::new(s(&h, &["b"]), vec![Construct::leaf(s(&h, &["c"]))])],
        );
        assert_eq!(collapse(&chain, s(&h, &["b"]), s(&h, &["c"])).unwrap(), c);
    }

    #[test]
    fn split_redistributes_children() {
        // {b}{{a},{c}} split at the root is impossible, but splitting
        // {a,b}{{c}} into {a} over {b} must carry {c} under {b}.
        let h = h3p();
        let c = Construct::new(s(&h, &["a", "b"]), vec![Construct::leaf(s(&h, &["c"]))]);
        let r = split(&h, &c, s(&h, &["a"]), s(&h, &["b"])).unwrap();
        assert_eq!(r.display(&h), "{a}{{b}{{c}}}");
    }

    #[test]
    fn covers_are_single_collapses() {
        let p = face_poset(&h_ex1()).unwrap();
        for &(lo, hi) in &p.covers {
            assert_eq!(p.constructs[hi].rank(), p.constructs[lo].rank() + 1);
        }
        assert_eq!(p.euler_characteristic(), 1);
        let top = p.constructs.iter().position(|c| c.node_count() == 1).unwrap();
        for i in 0..p.constructs.len() {
            assert!(p.leq(Face::Construct(i), Face::Construct(top)));
            assert!(p.leq(Face::Bottom, Face::Construct(i)));
        }
    }

    #[test]
    fn diamonds() {
        for h in [h3p(), h3k(), h_ex1()] {
            let r = check_diamond(&h).unwrap();
            assert!(r.holds, "{:?}", r.witness);
        }
        let r = check_diamond(&h_ex1()).unwrap();
        assert_eq!(r.shapes.len(), 3);
    }

    #[test]
    fn json_round_trip() {
        let h = h_ex1();
        for c in enumerate_constructs(&h).unwrap().iter().take(50) {
            assert_eq!(&Construct::from_json(&h, &c.to_json(&h)).unwrap(), c);
        }
    }

    #[test]
    fn capacity() {
        assert!(matches!(face_poset_capped(&h3k(), 5), Err(ConstructError::Capacity { count: 14, cap: 5 })));
    }
}
