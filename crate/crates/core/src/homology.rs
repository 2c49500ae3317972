//! Exact chain complexes over the rationals: ∂² checks, Betti numbers and
//! the sign relation on length-two intervals of a face poset.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructs::{Face, FacePoset};
use crate::games::format_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("∂∂ ≠ 0 in grade {0}")]
    NotAComplex(usize),
    #[error("cover {0} has no sign")]
    MissingSign(String),
}

/// Column-major sparse matrix; each column lists `(row, value)` by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![vec![]; ncols] }
    }

    /// Builds from columns given as row → value maps, dropping zeros.
    pub fn from_columns(nrows: usize, cols: Vec<BTreeMap<usize, BigRational>>) -> Self {
        let ncols = cols.len();
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.cols[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, HomologyError> {
        if self.ncols != other.nrows {
            return Err(HomologyError::Shape(format!(
                "{}×{} times {}×{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (k, v) in col {
                    for (r, w) in &self.cols[*k] {
                        *acc.entry(*r).or_insert_with(BigRational::zero) += v * w;
                    }
                }
                acc
            })
            .collect();
        Ok(SparseMatrix::from_columns(self.nrows, cols))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Rank by fraction-free elimination over the integers. Columns are
    /// reduced in order against pivots keyed by their first nonzero row.
    pub fn rank(&self) -> usize {
        let mut pivots: HashMap<usize, BTreeMap<usize, BigInt>> = HashMap::new();
        for col in &self.cols {
            let mut v = integer_column(col);
            while let Some((&r, _)) = v.iter().next() {
                let Some(p) = pivots.get(&r) else {
                    pivots.insert(r, v);
                    break;
                };
                let a = p[&r].clone();
                let b = v[&r].clone();
                let g = a.gcd(&b);
                let (a, b) = (&a / &g, &b / &g);
                let mut next = BTreeMap::new();
                for (i, x) in &v {
                    next.insert(*i, x * &a);
                }
                for (i, y) in p {
                    *next.entry(*i).or_insert_with(BigInt::zero) -= y * &b;
                }
                next.retain(|_, x| !x.is_zero());
                normalize(&mut next);
                v = next;
            }
        }
        pivots.len()
    }

    /// One `row col value` line per nonzero entry, preceded by the shape.
    pub fn to_triplets(&self) -> String {
        let mut s = format!("{} {} {}\n", self.nrows, self.ncols, self.nnz());
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "{r} {c} {}", format_rational(v));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": self.entries().map(|(r, c, v)| json!([r, c, format_rational(v)])).collect::<Vec<_>>(),
        })
    }
}

fn integer_column(col: &[(usize, BigRational)]) -> BTreeMap<usize, BigInt> {
    let l = col.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: BTreeMap<usize, BigInt> = col.iter().map(|(r, v)| (*r, (v * BigRational::from_integer(l.clone())).to_integer())).collect();
    normalize(&mut out);
    out
}

fn normalize(v: &mut BTreeMap<usize, BigInt>) {
    let g = v.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.values_mut() {
            *x /= &g;
        }
    }
    if v.values().next().is_some_and(|x| x.is_negative()) {
        for x in v.values_mut() {
            *x = -&*x;
        }
    }
}

/// Bases per grade `0..=top` and boundaries `∂_k : C_k → C_{k−1}` stored
/// at index `k − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn check_shapes(&self) -> Result<(), HomologyError> {
        if self.boundaries.len() + 1 != self.bases.len().max(1) {
            return Err(HomologyError::Shape(format!(
                "{} grades but {} boundary maps",
                self.bases.len(),
                self.boundaries.len()
            )));
        }
        for (i, d) in self.boundaries.iter().enumerate() {
            let k = i + 1;
            if d.ncols != self.bases[k].len() || d.nrows != self.bases[k - 1].len() {
                return Err(HomologyError::Shape(format!(
                    "∂_{k} is {}×{}, expected {}×{}",
                    d.nrows,
                    d.ncols,
                    self.bases[k - 1].len(),
                    self.bases[k].len()
                )));
            }
        }
        Ok(())
    }

    /// Grades `k` where `∂_k ∂_{k+1} ≠ 0`.
    pub fn failures(&self) -> Result<Vec<usize>, HomologyError> {
        self.check_shapes()?;
        let mut bad = vec![];
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k])?.is_zero() {
                bad.push(k);
            }
        }
        Ok(bad)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "bases": self.bases,
            "boundaries": self.boundaries.iter().map(SparseMatrix::to_json).collect::<Vec<_>>(),
        })
    }
}

/// True iff every composite of consecutive boundaries is zero.
pub fn verify_complex(c: &ChainComplex) -> Result<bool, HomologyError> {
    Ok(c.failures()?.is_empty())
}

pub fn betti(c: &ChainComplex) -> Result<Vec<usize>, HomologyError> {
    if let Some(&k) = c.failures()?.first() {
        return Err(HomologyError::NotAComplex(k));
    }
    let ranks: Vec<usize> = c.boundaries.iter().map(SparseMatrix::rank).collect();
    Ok((0..c.bases.len())
        .map(|k| {
            let out = if k == 0 { 0 } else { ranks[k - 1] };
            let inc = ranks.get(k).copied().unwrap_or(0);
            c.bases[k].len() - out - inc
        })
        .collect())
}

/// Signs on covering pairs `(lower, upper)`.
pub type CoverSigns = HashMap<(Face, Face), i8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignWitness {
    pub lower: Face,
    pub upper: Face,
    pub middles: (Face, Face),
    pub sum: i32,
}

/// Checks `η(D→C′)η(C′→F) + η(D→C″)η(C″→F) = 0` on every length-two
/// interval with two middle elements. Covers by the bottom element are
/// included only when the map supplies signs for them.
pub fn diamond_sign_check(p: &FacePoset, signs: &CoverSigns) -> Result<Option<SignWitness>, HomologyError> {
    let name = |(a, b): (Face, Face)| format!("{a:?} ⋖ {b:?}");
    for &(lo, hi) in &p.covers {
        let key = (Face::Construct(lo), Face::Construct(hi));
        if !signs.contains_key(&key) {
            return Err(HomologyError::MissingSign(name(key)));
        }
    }
    let bottom_covers = p.upper_covers(Face::Bottom);
    let present = bottom_covers.iter().filter(|c| signs.contains_key(&(Face::Bottom, **c))).count();
    if present != 0 && present != bottom_covers.len() {
        let missing = bottom_covers.iter().find(|c| !signs.contains_key(&(Face::Bottom, **c))).unwrap();
        return Err(HomologyError::MissingSign(name((Face::Bottom, *missing))));
    }
    let mut lowers: Vec<Face> = (0..p.constructs.len()).map(Face::Construct).collect();
    if present > 0 {
        lowers.insert(0, Face::Bottom);
    }
    for f in lowers {
        let ups = p.upper_covers(f);
        let mut tops: BTreeMap<Face, Vec<Face>> = BTreeMap::new();
        for &m in &ups {
            for d in p.upper_covers(m) {
                tops.entry(d).or_default().push(m);
            }
        }
        for (d, mids) in tops {
            if mids.len() != 2 {
                continue;
            }
            let sum: i32 = mids.iter().map(|&m| (signs[&(m, d)] * signs[&(f, m)]) as i32).sum();
            if sum != 0 {
                return Ok(Some(SignWitness { lower: f, upper: d, middles: (mids[0], mids[1]), sum }));
            }
        }
    }
    Ok(None)
}

/// The complex of constructs whose boundary matrices carry `signs`.
pub fn induced_complex(p: &FacePoset, signs: &CoverSigns) -> Result<ChainComplex, HomologyError> {
    let top = p.top_rank().max(0) as usize;
    let mut bases = vec![vec![]; top + 1];
    let mut slot = vec![0; p.constructs.len()];
    for (i, c) in p.constructs.iter().enumerate() {
        let r = c.rank() as usize;
        slot[i] = bases[r].len();
        bases[r].push(c.display(&p.hypergraph));
    }
    let mut cols: Vec<Vec<BTreeMap<usize, BigRational>>> = (0..=top).map(|k| vec![BTreeMap::new(); bases[k].len()]).collect();
    for &(lo, hi) in &p.covers {
        let s = *signs
            .get(&(Face::Construct(lo), Face::Construct(hi)))
            .ok_or_else(|| HomologyError::MissingSign(format!("{lo} ⋖ {hi}")))?;
        let k = p.constructs[hi].rank() as usize;
        cols[k][slot[hi]].insert(slot[lo], BigRational::from_integer(s.into()));
    }
    let boundaries = (1..=top)
        .map(|k| SparseMatrix::from_columns(bases[k - 1].len(), std::mem::take(&mut cols[k])))
        .collect();
    Ok(ChainComplex { bases, boundaries })
}
