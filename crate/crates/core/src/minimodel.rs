//! The minimal model on a graph: chains on the construct basis `e_C`, the
//! signed differential, the augmentation `ρ` and grafting of chains.
//!
//! A basis element `e_C` is represented by the tensor product of the
//! determinant lines of its nodes, listed in λ_lex order: a node, then the
//! subtrees of its children from the last child to the first. Each factor
//! `det(X)` has degree `|X| − 1` and is the sorted wedge of `X` in the edge
//! order of the ambient graph.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructs::{enumerate_constructs, is_construct, split, Construct, ConstructError};
use crate::games::format_rational;
use crate::graphs::{Contraction, Graph, GraphError};
use crate::homology::{ChainComplex, HomologyError, SparseMatrix};
use crate::hypergraph::{Hypergraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimodelError {
    #[error("the generator boundary needs at least two edges, found {0}")]
    TooFewEdges(usize),
    #[error("degree {0} outside 1..={1}")]
    Degree(usize, usize),
    #[error("not a partition of the edge set")]
    NotAPartition,
    #[error("incompatible grafting data: {0}")]
    Compatibility(String),
    #[error("unknown sign convention `{0}`")]
    UnknownConvention(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Global normalization of the generator boundary. `Alt` flips every sign
/// of `∂`, which is a chain isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Default,
    Alt,
}

impl SignConvention {
    pub fn parse(s: &str) -> Result<Self, MinimodelError> {
        match s {
            "default" => Ok(SignConvention::Default),
            "alt" => Ok(SignConvention::Alt),
            _ => Err(MinimodelError::UnknownConvention(s.into())),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            SignConvention::Default => "lambda-lex/koszul-left/normalization+1",
            SignConvention::Alt => "lambda-lex/koszul-left/normalization-1",
        }
    }

    fn epsilon(self) -> i32 {
        match self {
            SignConvention::Default => 1,
            SignConvention::Alt => -1,
        }
    }
}

/// The generator `det(Edg(Γ))`; absent for a corolla.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetBasis {
    pub graph: Graph,
    pub wedge: Vec<String>,
}

impl DetBasis {
    pub fn new(graph: &Graph) -> Option<DetBasis> {
        (graph.edge_count() > 0).then(|| DetBasis { graph: graph.clone(), wedge: graph.edge_names() })
    }

    pub fn degree(&self) -> usize {
        self.wedge.len() - 1
    }
}

/// Incidence hypergraph of `g`; the empty hypergraph for a corolla.
pub fn model_hypergraph(g: &Graph) -> Result<Hypergraph, MinimodelError> {
    if g.edge_count() == 0 {
        return Ok(Hypergraph::empty(Arc::from(Vec::<String>::new())));
    }
    Ok(g.incidence_hypergraph()?)
}

/// A chain of the free operad on `Γ`, in the `e_C` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComponent {
    graph: Graph,
    hypergraph: Hypergraph,
    terms: BTreeMap<Construct, BigRational>,
}

impl FreeComponent {
    pub fn zero(graph: &Graph) -> Result<Self, MinimodelError> {
        Ok(FreeComponent { graph: graph.clone(), hypergraph: model_hypergraph(graph)?, terms: BTreeMap::new() })
    }

    /// The basis element `e_C`.
    pub fn basis(graph: &Graph, c: Construct) -> Result<Self, MinimodelError> {
        let mut x = Self::zero(graph)?;
        x.add(c, BigRational::one())?;
        Ok(x)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn add(&mut self, c: Construct, q: BigRational) -> Result<(), MinimodelError> {
        if !is_construct(&self.hypergraph, &c) {
            return Err(ConstructError::Invalid.into());
        }
        self.add_unchecked(c, q);
        Ok(())
    }

    fn add_unchecked(&mut self, c: Construct, q: BigRational) {
        let slot = self.terms.entry(c).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coefficient(&self, c: &Construct) -> BigRational {
        self.terms.get(c).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in the basis order: rank descending, then tree order.
    pub fn terms(&self) -> Vec<(&Construct, &BigRational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.rank().cmp(&a.0.rank()).then(a.0.cmp(b.0)));
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Grade-`k` slice.
    pub fn homogeneous(&self, k: isize) -> FreeComponent {
        let terms = self.terms.iter().filter(|(c, _)| c.rank() == k).map(|(c, v)| (c.clone(), v.clone())).collect();
        FreeComponent { graph: self.graph.clone(), hypergraph: self.hypergraph.clone(), terms }
    }

    fn scaled(&self, s: i32) -> FreeComponent {
        let q = BigRational::from_integer(s.into());
        let terms = self.terms.iter().map(|(c, v)| (c.clone(), v * &q)).collect();
        FreeComponent { graph: self.graph.clone(), hypergraph: self.hypergraph.clone(), terms }
    }

    fn plus(&self, other: &FreeComponent) -> FreeComponent {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_unchecked(c.clone(), v.clone());
        }
        out
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, v)) in self.terms().into_iter().enumerate() {
            let neg = v < &BigRational::zero();
            let abs = if neg { -v.clone() } else { v.clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !abs.is_one() {
                s.push_str(&format_rational(&abs));
                s.push('·');
            }
            s.push_str("e_");
            s.push_str(&c.display(&self.hypergraph));
        }
        s
    }

    pub fn to_json(&self, conv: SignConvention) -> Value {
        json!({
            "sign_convention": conv.tag(),
            "terms": self.terms().into_iter().map(|(c, v)| json!({
                "construct": c.to_json(&self.hypergraph),
                "coefficient": format_rational(v),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Sign of the permutation taking the sorted wedge of `e` to the sorted
/// wedge of `ev` followed by the sorted wedge of `eu`.
pub fn shuffle_sign(e: VertexSet, ev: VertexSet, eu: VertexSet) -> Result<i8, MinimodelError> {
    if ev.intersects(eu) || ev.union(eu) != e {
        return Err(MinimodelError::NotAPartition);
    }
    let mut inversions = 0;
    for a in ev.iter() {
        inversions += eu.iter().filter(|&b| b < a).count();
    }
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

fn parity(n: usize) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of splitting a factor `det(S1 ⊔ S2)` into `det(S1) ⊗ det(S2)` with
/// `S1` on the upper level.
fn split_sign(x: VertexSet, s1: VertexSet, s2: VertexSet, conv: SignConvention) -> i32 {
    let sh = shuffle_sign(x, s1, s2).expect("split parts partition the node") as i32;
    conv.epsilon() * sh * parity(s1.len() * (s2.len() + 1))
}

/// One summand of the generator boundary: `E_v` on top, `E_u` below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTerm {
    pub eu: VertexSet,
    pub ev: VertexSet,
    pub sign: i8,
}

/// `∂` on `det(Edg(Γ))`, one term per two-vertex graph-tree.
pub fn generator_boundary(g: &Graph, conv: SignConvention) -> Result<Vec<GeneratorTerm>, MinimodelError> {
    let n = g.edge_count();
    if n < 2 {
        return Err(MinimodelError::TooFewEdges(n));
    }
    let h = g.incidence_hypergraph()?;
    let e = h.vertices();
    let top = Construct::leaf(e);
    let mut out = vec![];
    for eu in e.nonempty_subsets() {
        let ev = e.difference(eu);
        if ev.is_empty() || split(&h, &top, ev, eu).is_err() {
            continue;
        }
        out.push(GeneratorTerm { eu, ev, sign: split_sign(e, ev, eu, conv) as i8 });
    }
    Ok(out)
}

/// Node decorations in λ_lex order.
pub fn lex_sequence(c: &Construct) -> Vec<VertexSet> {
    fn go(c: &Construct, out: &mut Vec<VertexSet>) {
        out.push(c.decoration());
        for k in c.children().iter().rev() {
            go(k, out);
        }
    }
    let mut out = vec![];
    if !c.is_empty() {
        go(c, &mut out);
    }
    out
}

/// Koszul sign of reordering the factors `from` into `to`.
fn koszul(from: &[VertexSet], to: &[VertexSet]) -> i32 {
    let pos: Vec<usize> = from.iter().map(|x| to.iter().position(|y| y == x).expect("same factors")).collect();
    let mut s = 1;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                s *= parity((from[i].len() - 1) * (from[j].len() - 1));
            }
        }
    }
    s
}

/// `∂ e_C` as a list of covered constructs with signs.
pub fn basis_boundary(h: &Hypergraph, c: &Construct, conv: SignConvention) -> Vec<(Construct, i32)> {
    let seq = lex_sequence(c);
    let mut out = vec![];
    let mut before = 0;
    for (i, &x) in seq.iter().enumerate() {
        for s1 in x.nonempty_subsets() {
            let s2 = x.difference(s1);
            if s2.is_empty() {
                continue;
            }
            let Ok(f) = split(h, c, s1, s2) else { continue };
            let mut next = seq[..i].to_vec();
            next.extend([s1, s2]);
            next.extend_from_slice(&seq[i + 1..]);
            let sign = parity(before) * split_sign(x, s1, s2, conv) * koszul(&next, &lex_sequence(&f));
            out.push((f, sign));
        }
        before += x.len() - 1;
    }
    out
}

pub fn boundary(x: &FreeComponent, conv: SignConvention) -> FreeComponent {
    let mut out = FreeComponent { graph: x.graph.clone(), hypergraph: x.hypergraph.clone(), terms: BTreeMap::new() };
    for (c, v) in &x.terms {
        for (f, s) in basis_boundary(&x.hypergraph, c, conv) {
            out.add_unchecked(f, v * BigRational::from_integer(s.into()));
        }
    }
    out
}

/// Basis of each grade `0..=|Edg| − 1`, in basis order.
pub fn graded_basis(g: &Graph) -> Result<Vec<Vec<Construct>>, MinimodelError> {
    if g.edge_count() == 0 {
        return Ok(vec![vec![Construct::empty()]]);
    }
    let h = g.incidence_hypergraph()?;
    let mut grades = vec![vec![]; g.edge_count()];
    for c in enumerate_constructs(&h)? {
        grades[c.rank() as usize].push(c);
    }
    Ok(grades)
}

fn matrix_of(h: &Hypergraph, cols: &[Construct], rows: &[Construct], conv: SignConvention) -> SparseMatrix {
    let index: BTreeMap<&Construct, usize> = rows.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let cols = cols
        .iter()
        .map(|c| {
            let mut col = BTreeMap::new();
            for (f, s) in basis_boundary(h, c, conv) {
                *col.entry(index[&f]).or_insert_with(BigRational::zero) += BigRational::from_integer(s.into());
            }
            col
        })
        .collect();
    SparseMatrix::from_columns(rows.len(), cols)
}

/// Matrix of `∂ : grade k → grade k − 1`.
pub fn boundary_matrix(g: &Graph, k: usize, conv: SignConvention) -> Result<SparseMatrix, MinimodelError> {
    let top = g.edge_count().saturating_sub(1);
    if k == 0 || k > top {
        return Err(MinimodelError::Degree(k, top));
    }
    let h = g.incidence_hypergraph()?;
    let grades = graded_basis(g)?;
    Ok(matrix_of(&h, &grades[k], &grades[k - 1], conv))
}

/// The whole complex of `Γ`, bases labelled by construct notation.
pub fn model_complex(g: &Graph, conv: SignConvention) -> Result<ChainComplex, MinimodelError> {
    let h = model_hypergraph(g)?;
    let grades = graded_basis(g)?;
    let bases = grades.iter().map(|cs| cs.iter().map(|c| c.display(&h)).collect()).collect();
    let boundaries = (1..grades.len()).map(|k| matrix_of(&h, &grades[k], &grades[k - 1], conv)).collect();
    Ok(ChainComplex { bases, boundaries })
}

/// The augmentation: every grade-0 basis element goes to 1, higher grades to 0.
pub fn rho(x: &FreeComponent) -> BigRational {
    x.terms.iter().filter(|(c, _)| c.rank() == 0).map(|(_, v)| v.clone()).sum()
}

/// Re-expresses a construct over `from` on the edges of `to`, matching
/// edges by flag name. Also returns the sign of reordering every node's
/// wedge from the order of `from` into the order of `to`.
fn transport(c: &Construct, from: &Graph, to: &Graph) -> Result<(Construct, i32), MinimodelError> {
    if c.is_empty() {
        return Ok((Construct::empty(), 1));
    }
    let names = from.edge_names();
    let mut images = vec![];
    for p in c.decoration().iter() {
        let q = to
            .edge_of_flag(&names[p])
            .ok_or_else(|| MinimodelError::Compatibility(format!("edge {} is missing", names[p])))?;
        images.push(q);
    }
    let mut sign = 1;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                sign = -sign;
            }
        }
    }
    let mut children = vec![];
    for k in c.children() {
        let (t, s) = transport(k, from, to)?;
        sign *= s;
        children.push(t);
    }
    Ok((Construct::new(VertexSet::from_positions(images), children), sign))
}

/// Inserts `r` as a new child of the deepest node of `s` whose subtree
/// touches a vertex in `hit`.
fn attach(g: &Graph, s: &Construct, r: Construct, hit: &BTreeSet<usize>) -> Construct {
    let touches = |k: &Construct| g.vertices_of_edges(k.union()).iter().any(|v| hit.contains(v));
    let mut children: Vec<Construct> = s.children().to_vec();
    if let Some(i) = children.iter().position(touches) {
        children[i] = attach(g, &children[i], r, hit);
    } else {
        children.push(r);
    }
    Construct::new(s.decoration(), children)
}

/// Grafts chains along a canonical contraction `Γ → Υ` with fiber `F`:
/// `s` lives over `Υ`, `r` over `F`, the result over `Γ`.
pub fn graft_chain(
    s: &FreeComponent,
    r: &FreeComponent,
    contraction: &Contraction,
) -> Result<FreeComponent, MinimodelError> {
    if s.graph != contraction.quotient {
        return Err(MinimodelError::Compatibility("outer chain is not over the quotient".into()));
    }
    if r.graph != contraction.fiber {
        return Err(MinimodelError::Compatibility("inner chain is not over the fiber".into()));
    }
    let g = &contraction.source;
    let mut out = FreeComponent::zero(g)?;
    let hit: BTreeSet<usize> =
        contraction.fiber.vertices().iter().map(|v| g.vertex_index(v).expect("fiber vertex")).collect();
    for (sc, sv) in &s.terms {
        let (st, s_sign) = transport(sc, &s.graph, g)?;
        for (rc, rv) in &r.terms {
            let (rt, r_sign) = transport(rc, &r.graph, g)?;
            let joined = if st.is_empty() {
                rt.clone()
            } else if rt.is_empty() {
                st.clone()
            } else {
                attach(g, &st, rt.clone(), &hit)
            };
            if !is_construct(&out.hypergraph, &joined) {
                return Err(MinimodelError::Compatibility("grafted tree is not a construct".into()));
            }
            let mut seq = lex_sequence(&st);
            seq.extend(lex_sequence(&rt));
            let sign = s_sign * r_sign * koszul(&seq, &lex_sequence(&joined));
            out.add_unchecked(joined, sv * rv * BigRational::from_integer(sign.into()));
        }
    }
    Ok(out)
}

/// `∂(s∘r) − ∂s∘r − (−1)^{deg s} s∘∂r` for homogeneous `s`.
pub fn leibniz_defect(
    s: &FreeComponent,
    r: &FreeComponent,
    contraction: &Contraction,
    conv: SignConvention,
) -> Result<FreeComponent, MinimodelError> {
    let deg = s.terms.keys().next().map_or(0, |c| c.rank() as usize);
    let lhs = boundary(&graft_chain(s, r, contraction)?, conv);
    let a = graft_chain(&boundary(s, conv), r, contraction)?;
    let b = graft_chain(s, &boundary(r, conv), contraction)?;
    Ok(lhs.plus(&a.scaled(-1)).plus(&b.scaled(-parity(deg))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::fixtures::*;
    use crate::homology::{betti, verify_complex};

    fn path(n: usize) -> Graph {
        let names: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
        let mut flags: Vec<Vec<String>> = vec![vec![]; n + 1];
        let mut pairs = vec![];
        for i in 0..n {
            let (a, b) = (format!("e{i}"), format!("e{i}'"));
            flags[i].push(a.clone());
            flags[i + 1].push(b.clone());
            pairs.push((a, b));
        }
        let vs: Vec<(&str, Vec<&str>)> =
            names.iter().zip(&flags).map(|(v, f)| (v.as_str(), f.iter().map(String::as_str).collect())).collect();
        let vs: Vec<(&str, &[&str])> = vs.iter().map(|(v, f)| (*v, f.as_slice())).collect();
        let ps: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Graph::build(&vs, &ps, &[]).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn shuffle_signs() {
        let e = VertexSet::full(4);
        assert_eq!(shuffle_sign(VertexSet::full(2), VertexSet::singleton(0), VertexSet::singleton(1)).unwrap(), 1);
        assert_eq!(shuffle_sign(VertexSet::full(2), VertexSet::singleton(1), VertexSet::singleton(0)).unwrap(), -1);
        let ac = VertexSet::from_positions([0, 2]);
        let bd = VertexSet::from_positions([1, 3]);
        assert_eq!(shuffle_sign(e, ac, bd).unwrap(), -1);
        assert_eq!(shuffle_sign(e, ac, ac), Err(MinimodelError::NotAPartition));
    }

    #[test]
    fn gamma2_boundary() {
        let g = gamma2();
        let terms = generator_boundary(&g, SignConvention::Default).unwrap();
        assert_eq!(terms.len(), 2);
        let h = g.incidence_hypergraph().unwrap();
        let top = FreeComponent::basis(&g, Construct::leaf(h.vertices())).unwrap();
        let d = boundary(&top, SignConvention::Default);
        assert_eq!(d.display(), "e_{a}{{b}} - e_{b}{{a}}");
        assert_eq!(rho(&d), q(0));
        let low = FreeComponent::basis(&g, Construct::new(VertexSet::singleton(0), vec![Construct::leaf(VertexSet::singleton(1))])).unwrap();
        assert_eq!(rho(&low), q(1));
        assert!(boundary(&low, SignConvention::Default).is_zero());
        let alt = boundary(&top, SignConvention::Alt);
        assert_eq!(alt.display(), "-e_{a}{{b}} + e_{b}{{a}}");
        assert_eq!(rho(&FreeComponent::zero(&g).unwrap()), q(0));
    }

    #[test]
    fn theta_generator_has_six_terms() {
        let terms = generator_boundary(&theta(), SignConvention::Default).unwrap();
        assert_eq!(terms.len(), 6);
        assert!(terms.iter().all(|t| t.sign.abs() == 1));
        assert!(matches!(generator_boundary(&path(1), SignConvention::Default), Err(MinimodelError::TooFewEdges(1))));
    }

    #[test]
    fn pentagon_matrices() {
        let g = path(3);
        let m2 = boundary_matrix(&g, 2, SignConvention::Default).unwrap();
        let m1 = boundary_matrix(&g, 1, SignConvention::Default).unwrap();
        assert_eq!((m2.nrows, m2.ncols, m1.nrows, m1.ncols), (5, 1, 5, 5));
        assert_eq!(m2.nnz(), 5);
        assert!(m1.entries().chain(m2.entries()).all(|(_, _, v)| v.is_one() || (-v).is_one()));
        assert!(m1.mul(&m2).unwrap().is_zero());
        assert!(matches!(boundary_matrix(&g, 3, SignConvention::Default), Err(MinimodelError::Degree(3, 2))));
    }

    #[test]
    fn complexes_are_acyclic() {
        for g in [gamma2(), theta(), path(3), path(4), ex1()] {
            for conv in [SignConvention::Default, SignConvention::Alt] {
                let c = model_complex(&g, conv).unwrap();
                assert!(verify_complex(&c).unwrap());
                let b = betti(&c).unwrap();
                assert_eq!(b[0], 1);
                assert!(b[1..].iter().all(|&x| x == 0), "{b:?}");
            }
        }
    }

    #[test]
    fn support_is_the_covered_faces() {
        let g = ex1();
        let h = g.incidence_hypergraph().unwrap();
        let p = crate::constructs::face_poset(&h).unwrap();
        for (i, c) in p.constructs.iter().enumerate() {
            let got: BTreeSet<Construct> = basis_boundary(&h, c, SignConvention::Default).into_iter().map(|(f, _)| f).collect();
            let want: BTreeSet<Construct> =
                p.covers.iter().filter(|&&(_, hi)| hi == i).map(|&(lo, _)| p.constructs[lo].clone()).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn leibniz_on_every_contraction() {
        for g in [theta(), path(3), path(4), ex1()] {
            let h = g.incidence_hypergraph().unwrap();
            for e in h.vertices().nonempty_subsets().filter(|&e| h.is_connected_set(e)) {
                let cc = g.contract_edges(e).unwrap();
                for sc in graded_basis(&cc.quotient).unwrap().into_iter().flatten() {
                    let s = FreeComponent::basis(&cc.quotient, sc).unwrap();
                    for rc in graded_basis(&cc.fiber).unwrap().into_iter().flatten() {
                        let r = FreeComponent::basis(&cc.fiber, rc).unwrap();
                        let d = leibniz_defect(&s, &r, &cc, SignConvention::Default).unwrap();
                        assert!(d.is_zero(), "{}", d.display());
                    }
                }
            }
        }
    }

    #[test]
    fn unit_grafting() {
        let g = gamma2();
        let all = VertexSet::full(2);
        let cc = g.contract_edges(all).unwrap();
        assert!(cc.quotient.is_corolla());
        let unit = FreeComponent::basis(&cc.quotient, Construct::empty()).unwrap();
        let top = FreeComponent::basis(&cc.fiber, Construct::leaf(all)).unwrap();
        let out = graft_chain(&unit, &top, &cc).unwrap();
        assert_eq!(out.display(), "e_{a,b}");
        let a = g.contract_edges(VertexSet::singleton(1)).unwrap();
        let s = FreeComponent::basis(&a.quotient, Construct::leaf(VertexSet::singleton(0))).unwrap();
        let r = FreeComponent::basis(&a.fiber, Construct::leaf(VertexSet::singleton(0))).unwrap();
        let out = graft_chain(&s, &r, &a).unwrap();
        assert_eq!(out.display(), "e_{a}{{b}}");
        assert!(graft_chain(&r, &s, &a).is_err());
    }
}
