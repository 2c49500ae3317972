//! Subcategories of connected graphs: genus gradings, trees, wheeled
//! orientations, rooted and strongly rooted trees. Membership is a check on
//! top of [`Graph`]; the minimal model of each is the plain one.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{Contraction, Graph, GraphError, OrientationFile};
use crate::homology::ChainComplex;
use crate::hypergraph::VertexSet;
use crate::minimodel::{model_complex, MinimodelError, SignConvention};

pub type GenusGrading = BTreeMap<String, u32>;
pub type Orientation = OrientationFile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VariantsError {
    #[error("genus grading misses vertex {0}")]
    GenusNotTotal(String),
    #[error("genus grading names unknown vertex {0}")]
    GenusUnknownVertex(String),
    #[error("graph is not a tree (b1 = {0})")]
    NotATree(isize),
    #[error("graph is not strongly rooted")]
    NotStronglyRooted,
    #[error("graph is not in {0}")]
    NotInSubcategory(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Minimodel(#[from] MinimodelError),
}

fn check_grading(g: &Graph, gr: &GenusGrading) -> Result<(), VariantsError> {
    if let Some(v) = g.vertices().iter().find(|v| !gr.contains_key(*v)) {
        return Err(VariantsError::GenusNotTotal(v.clone()));
    }
    if let Some(v) = gr.keys().find(|v| g.vertex_index(v).is_none()) {
        return Err(VariantsError::GenusUnknownVertex(v.clone()));
    }
    Ok(())
}

/// `Σ g(v) + b₁`.
pub fn genus(g: &Graph, gr: &GenusGrading) -> Result<u64, VariantsError> {
    check_grading(g, gr)?;
    let sum: u64 = g.vertices().iter().map(|v| gr[v] as u64).sum();
    Ok(sum + g.b1() as u64)
}

/// Gradings of the fiber and the quotient of a contraction. The merged
/// vertex carries the genus of the fiber.
pub fn induce_genus(c: &Contraction, gr: &GenusGrading) -> Result<(GenusGrading, GenusGrading), VariantsError> {
    check_grading(&c.source, gr)?;
    let fiber: GenusGrading = c.fiber.vertices().iter().map(|v| (v.clone(), gr[v])).collect();
    let merged = genus(&c.fiber, &fiber)? as u32;
    let quotient = c
        .quotient
        .vertices()
        .iter()
        .map(|v| (v.clone(), if *v == c.merged { merged } else { gr[v] }))
        .collect();
    Ok((fiber, quotient))
}

pub fn is_contractible(g: &Graph) -> bool {
    g.b1() == 0
}

/// Every internal edge names one of its flags as input, every leg is
/// marked `in` or `out`, and nothing else is listed.
pub fn is_wheeled_oriented(g: &Graph, o: &Orientation) -> bool {
    let mut seen = VertexSet::EMPTY;
    for (key, input) in &o.edges {
        let (Some(e), Some(f)) = (g.edge_of_flag(key), g.edge_of_flag(input)) else {
            return false;
        };
        if e != f || seen.contains(e) {
            return false;
        }
        seen = seen.union(VertexSet::singleton(e));
    }
    let legs = g.leg_names();
    seen.len() == g.edge_count()
        && o.legs.len() == legs.len()
        && legs.iter().all(|l| matches!(o.legs.get(l).map(String::as_str), Some("in" | "out")))
}

type RootPaths = Vec<(usize, Option<usize>)>;

/// For each vertex, the flag pointing toward the root and the vertex it
/// leads to (`None` at the root vertex). The root is the first leg.
fn toward_root(g: &Graph) -> Result<Option<RootPaths>, VariantsError> {
    if !is_contractible(g) {
        return Err(VariantsError::NotATree(g.b1()));
    }
    let Some(&root) = g.legs().first() else {
        return Ok(None);
    };
    let flags = g.flags();
    let mut out = vec![None; g.vertices().len()];
    let start = flags[root].vertex;
    out[start] = Some((root, None));
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for f in g.local_flags(v) {
            if let Some(p) = flags[f].partner {
                let u = flags[p].vertex;
                if out[u].is_none() {
                    out[u] = Some((p, Some(v)));
                    stack.push(u);
                }
            }
        }
    }
    Ok(Some(out.into_iter().map(|x| x.expect("tree is connected")).collect()))
}

/// Edges point to the root leg; each vertex's outgoing flag must come
/// first in its local order.
pub fn is_rooted(g: &Graph) -> Result<bool, VariantsError> {
    let Some(out) = toward_root(g)? else {
        return Ok(false);
    };
    Ok((0..g.vertices().len()).all(|v| g.local_flags(v).next() == Some(out[v].0)))
}

/// Rooted, and every vertex on the path from `u` to the root precedes `u`.
pub fn is_strongly_rooted(g: &Graph) -> Result<bool, VariantsError> {
    if !is_rooted(g)? {
        return Ok(false);
    }
    let out = toward_root(g)?.expect("rooted graphs have a root");
    Ok((0..out.len()).all(|u| out[u].1.is_none_or(|parent| parent < u)))
}

/// A connected edge set whose contraction leaves the subcategory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub edges: Vec<String>,
    pub quotient_ok: bool,
    pub fiber_ok: bool,
}

/// Checks that every canonical contraction of a strongly rooted tree has
/// strongly rooted quotient and fiber.
pub fn check_srtr_closure(g: &Graph) -> Result<Option<ClosureWitness>, VariantsError> {
    if !is_strongly_rooted(g)? {
        return Err(VariantsError::NotStronglyRooted);
    }
    if g.edge_count() == 0 {
        return Ok(None);
    }
    let h = g.incidence_hypergraph()?;
    let names = g.edge_names();
    for e in h.vertices().nonempty_subsets().filter(|&e| h.is_connected_set(e)) {
        let c = g.contract_edges(e)?;
        let quotient_ok = is_strongly_rooted(&c.quotient)?;
        let fiber_ok = is_strongly_rooted(&c.fiber)?;
        if !(quotient_ok && fiber_ok) {
            let edges = e.iter().map(|p| names[p].clone()).collect();
            return Ok(Some(ClosureWitness { edges, quotient_ok, fiber_ok }));
        }
    }
    Ok(None)
}

/// The subcategories with a membership predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subcategory {
    Graphs,
    GenusGraded(GenusGrading),
    Contractible,
    Wheeled(Orientation),
    Rooted,
    StronglyRooted,
}

impl Subcategory {
    pub fn tag(&self) -> &'static str {
        match self {
            Subcategory::Graphs => "Grc",
            Subcategory::GenusGraded(_) => "ggGrc",
            Subcategory::Contractible => "Tr",
            Subcategory::Wheeled(_) => "Whe",
            Subcategory::Rooted => "RTr",
            Subcategory::StronglyRooted => "SRTr",
        }
    }

    pub fn contains(&self, g: &Graph) -> Result<bool, VariantsError> {
        Ok(match self {
            Subcategory::Graphs => true,
            Subcategory::GenusGraded(gr) => check_grading(g, gr).is_ok(),
            Subcategory::Contractible => is_contractible(g),
            Subcategory::Wheeled(o) => is_wheeled_oriented(g, o),
            Subcategory::Rooted => is_contractible(g) && is_rooted(g)?,
            Subcategory::StronglyRooted => is_contractible(g) && is_strongly_rooted(g)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedModel {
    pub subcategory: &'static str,
    pub complex: ChainComplex,
}

/// The minimal model of a subcategory at `g`: the plain complex of the
/// underlying graph, after checking membership.
pub fn restrict_model(g: &Graph, sub: &Subcategory, conv: SignConvention) -> Result<RestrictedModel, VariantsError> {
    if !sub.contains(g)? {
        return Err(VariantsError::NotInSubcategory(sub.tag()));
    }
    Ok(RestrictedModel { subcategory: sub.tag(), complex: model_complex(g, conv)? })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub contractible: bool,
    pub rooted: bool,
    pub strongly_rooted: bool,
    pub wheeled_oriented: bool,
    pub genus: u64,
}

/// Missing grading means all zeros; missing orientation means not oriented.
pub fn classify(g: &Graph, gr: Option<&GenusGrading>, o: Option<&Orientation>) -> Result<Classification, VariantsError> {
    let zeros: GenusGrading = g.vertices().iter().map(|v| (v.clone(), 0)).collect();
    let contractible = is_contractible(g);
    Ok(Classification {
        contractible,
        rooted: contractible && is_rooted(g)?,
        strongly_rooted: contractible && is_strongly_rooted(g)?,
        wheeled_oriented: o.is_some_and(|o| is_wheeled_oriented(g, o)),
        genus: genus(g, gr.unwrap_or(&zeros))?,
    })
}
