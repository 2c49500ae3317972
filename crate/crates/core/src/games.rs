//! Cooperative games and the exact core polytope of a hypergraph.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructs::{enumerate_constructs, Construct, ConstructError};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::linalg::solve;

/// Largest ground set for exhaustive convexity checks.
pub const CONVEXITY_CAPACITY: usize = 16;
/// Largest ground set for [`brute_force_vertices`].
pub const BRUTE_FORCE_CAPACITY: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("unknown game `{0}`")]
    UnknownGame(String),
    #[error("ground set of {0} vertices exceeds the capacity of {1}")]
    Capacity(usize, usize),
    #[error("game is not strictly convex: {0}")]
    NotStrictlyConvex(String),
    #[error("game table: {0}")]
    Table(String),
    #[error("realized point for {0} violates the core constraints")]
    Infeasible(String),
    #[error("constructs {0} and {1} realize to the same point")]
    Degenerate(String, String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Values {
    Pow3,
    Loday,
    Table(HashMap<VertexSet, BigRational>),
}

/// A game on the positions of an ordered ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooperativeGame {
    ground: Vec<String>,
    values: Values,
}

impl CooperativeGame {
    pub fn builtin(name: &str, ground: &[String]) -> Result<Self, GameError> {
        let values = match name {
            "pow3" => Values::Pow3,
            "loday" => Values::Loday,
            _ => return Err(GameError::UnknownGame(name.to_string())),
        };
        Ok(CooperativeGame { ground: ground.to_vec(), values })
    }

    /// A game given by an explicit value on every nonempty coalition.
    pub fn table(ground: &[String], values: HashMap<VertexSet, BigRational>) -> Result<Self, GameError> {
        let n = ground.len();
        if n > CONVEXITY_CAPACITY {
            return Err(GameError::Capacity(n, CONVEXITY_CAPACITY));
        }
        for s in VertexSet::full(n).nonempty_subsets() {
            match values.get(&s) {
                None => return Err(GameError::Table(format!("missing value for {:?}", s))),
                Some(v) if v.is_negative() => return Err(GameError::Table(format!("negative value for {:?}", s))),
                _ => {}
            }
        }
        if values.keys().any(|k| k.is_empty() || !k.is_subset(VertexSet::full(n))) {
            return Err(GameError::Table("coalition outside the ground set".into()));
        }
        Ok(CooperativeGame { ground: ground.to_vec(), values: Values::Table(values) })
    }

    /// Parses `{"type":"pow3"}`, `{"type":"loday"}` or a value table keyed
    /// by comma-joined sorted labels.
    pub fn from_json(v: &Value, ground: &[String]) -> Result<Self, GameError> {
        let ty = v.get("type").and_then(Value::as_str).ok_or_else(|| GameError::Table("missing `type`".into()))?;
        if ty != "table" {
            return Self::builtin(ty, ground);
        }
        let obj = v
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| GameError::Table("missing `values`".into()))?;
        let mut values = HashMap::new();
        for (k, val) in obj {
            let mut set = VertexSet::EMPTY;
            for label in k.split(',').map(str::trim) {
                let p = ground
                    .iter()
                    .position(|g| g == label)
                    .ok_or_else(|| GameError::Table(format!("unknown label `{label}`")))?;
                set = set.union(VertexSet::singleton(p));
            }
            values.insert(set, parse_rational(val).ok_or_else(|| GameError::Table(format!("bad value for `{k}`")))?);
        }
        Self::table(ground, values)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    /// `Π(I)`, with `Π(∅) = 0`.
    pub fn value(&self, coalition: VertexSet) -> BigRational {
        let k = coalition.len() as u32;
        if k == 0 {
            return BigRational::zero();
        }
        match &self.values {
            Values::Pow3 => BigRational::from_integer(BigInt::from(3).pow(k)),
            Values::Loday => BigRational::from_integer(BigInt::from(k * (k + 1) / 2)),
            Values::Table(t) => t[&coalition].clone(),
        }
    }

    /// Exhaustive check of `Π(X∪Y) ≥ Π(X)+Π(Y)−Π(X∩Y)`, strict for
    /// incomparable `X`, `Y`. Returns the first violating pair.
    pub fn convexity_violation(&self) -> Result<Option<(VertexSet, VertexSet)>, GameError> {
        let n = self.ground.len();
        if n > CONVEXITY_CAPACITY {
            return Err(GameError::Capacity(n, CONVEXITY_CAPACITY));
        }
        let full = VertexSet::full(n);
        let subsets: Vec<VertexSet> = full.nonempty_subsets().collect();
        for (i, &x) in subsets.iter().enumerate() {
            for &y in &subsets[i + 1..] {
                let lhs = self.value(x.union(y));
                let rhs = self.value(x) + self.value(y) - self.value(x.intersection(y));
                let incomparable = !x.is_subset(y) && !y.is_subset(x);
                if lhs < rhs || (incomparable && lhs == rhs) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_strictly_convex(&self) -> Result<bool, GameError> {
        Ok(self.convexity_violation()?.is_none())
    }

    fn require_strictly_convex(&self) -> Result<(), GameError> {
        if let Some((x, y)) = self.convexity_violation()? {
            let names = |s: VertexSet| s.iter().map(|p| self.ground[p].as_str()).join(",");
            return Err(GameError::NotStrictlyConvex(format!("{{{}}} and {{{}}}", names(x), names(y))));
        }
        Ok(())
    }
}

fn parse_rational(v: &Value) -> Option<BigRational> {
    if let Some(i) = v.as_i64() {
        return Some(BigRational::from_integer(i.into()));
    }
    let s = v.as_str()?;
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            let p: BigInt = p.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `Σ_{i∈Y} x_i ≥ Π(Y)` for each `Y ∈ Sat(H) \ {H}`, plus `Σ_{i∈H} x_i = Π(H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRepresentation {
    pub ground: Vec<String>,
    pub vertices: VertexSet,
    pub inequalities: Vec<(VertexSet, BigRational)>,
    pub equality: (VertexSet, BigRational),
}

impl HRepresentation {
    pub fn satisfies(&self, p: &RationalPoint) -> bool {
        self.inequalities.iter().all(|(y, b)| &p.sum(*y) >= b) && p.sum(self.equality.0) == self.equality.1
    }

    pub fn to_json(&self) -> Value {
        let names = |s: VertexSet| s.iter().map(|p| self.ground[p].clone()).collect::<Vec<_>>();
        json!({
            "inequalities": self.inequalities.iter().map(|(y, b)| json!({"coalition": names(*y), "lower_bound": format_rational(b)})).collect::<Vec<_>>(),
            "equality": {"coalition": names(self.equality.0), "value": format_rational(&self.equality.1)},
        })
    }
}

/// Exact coordinates indexed by ground position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub coords: BTreeMap<usize, BigRational>,
}

impl RationalPoint {
    pub fn sum(&self, set: VertexSet) -> BigRational {
        set.iter().map(|p| self.coords[&p].clone()).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn to_json(&self, ground: &[String]) -> Value {
        Value::Object(
            self.coords
                .iter()
                .map(|(p, r)| (ground[*p].clone(), Value::String(format_rational(r))))
                .collect(),
        )
    }
}

pub fn core_hrep(h: &Hypergraph, g: &CooperativeGame) -> Result<HRepresentation, GameError> {
    g.require_strictly_convex()?;
    let full = h.vertices();
    let inequalities = h
        .saturated_sets()
        .into_iter()
        .filter(|&y| y != full)
        .map(|y| (y, g.value(y)))
        .collect();
    Ok(HRepresentation {
        ground: h.ground().to_vec(),
        vertices: full,
        inequalities,
        equality: (full, g.value(full)),
    })
}

/// Subtree unions of every node; the root gives the whole vertex set.
pub fn construct_face_support(c: &Construct) -> BTreeSet<VertexSet> {
    c.subtree_unions().into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub points: usize,
    pub constraints_checked: usize,
    pub all_feasible: bool,
    pub pairwise_distinct: bool,
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub hrep: HRepresentation,
    pub vertices: Vec<(Construct, RationalPoint)>,
    pub report: VerificationReport,
}

/// Solves `x_v = Π(subtree(v)) − Σ_children Π(subtree(child))` for the
/// tight sets of a rank-0 construct.
fn tight_point(c: &Construct, g: &CooperativeGame, out: &mut BTreeMap<usize, BigRational>) {
    let mut x = g.value(c.union());
    for ch in c.children() {
        x -= g.value(ch.union());
        tight_point(ch, g, out);
    }
    let p = c.decoration().min().expect("nonempty decoration");
    out.insert(p, x);
}

pub fn realize(h: &Hypergraph, g: &CooperativeGame) -> Result<Realization, GameError> {
    let hrep = core_hrep(h, g)?;
    let mut vertices = vec![];
    for c in enumerate_constructs(h)?.into_iter().filter(|c| c.rank() == 0) {
        let mut coords = BTreeMap::new();
        tight_point(&c, g, &mut coords);
        let p = RationalPoint { coords };
        if !hrep.satisfies(&p) {
            return Err(GameError::Infeasible(c.display(h)));
        }
        vertices.push((c, p));
    }
    let mut seen: BTreeMap<&RationalPoint, &Construct> = BTreeMap::new();
    for (c, p) in &vertices {
        if let Some(other) = seen.insert(p, c) {
            return Err(GameError::Degenerate(other.display(h), c.display(h)));
        }
    }
    let report = VerificationReport {
        points: vertices.len(),
        constraints_checked: vertices.len() * (hrep.inequalities.len() + 1),
        all_feasible: true,
        pairwise_distinct: true,
    };
    Ok(Realization { hrep, vertices, report })
}

/// Every vertex lies on the equality hyperplane, so it is the unique
/// solution of the equality together with `n − 1` tight inequalities.
pub fn brute_force_vertices(hrep: &HRepresentation) -> Result<BTreeSet<RationalPoint>, GameError> {
    let positions: Vec<usize> = hrep.vertices.iter().collect();
    let n = positions.len();
    if n > BRUTE_FORCE_CAPACITY {
        return Err(GameError::Capacity(n, BRUTE_FORCE_CAPACITY));
    }
    let row = |s: VertexSet| -> Vec<BigRational> {
        positions
            .iter()
            .map(|&p| if s.contains(p) { BigRational::one() } else { BigRational::zero() })
            .collect()
    };
    let mut out = BTreeSet::new();
    for combo in hrep.inequalities.iter().combinations(n - 1) {
        let mut a = vec![row(hrep.equality.0)];
        let mut b = vec![hrep.equality.1.clone()];
        for (s, v) in combo {
            a.push(row(*s));
            b.push(v.clone());
        }
        if let Some(x) = solve(a, b) {
            let p = RationalPoint { coords: positions.iter().copied().zip(x).collect() };
            if hrep.satisfies(&p) {
                out.insert(p);
            }
        }
    }
    Ok(out)
}
