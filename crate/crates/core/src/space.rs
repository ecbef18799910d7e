//! CL-spaces built from graphs.
//!
//! A graph on `{0,…,n−1}` that is perfect and has the unique clique/stable
//! intersection property determines an n-dimensional CL-space with an
//! absolute norm. The norm of record is the clique maximum
//! `‖x‖ = max over maximal cliques J of Σ_{j∈J} |x_j|`; its dual is the same
//! maximum over maximal stable sets. For the complete graph this is the
//! ℓ1 norm, for the edgeless graph the ℓ∞ norm.
//!
//! Extreme points of the unit ball are the unimodular sign patterns on
//! maximal stable sets; extreme points of the dual ball are the sign
//! patterns on maximal cliques. In complex mode the enumeration returns the
//! nonnegative 0/1 indicator of each support, and the full extreme set is
//! the coordinatewise unimodular orbit of those representatives.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{ExactComplex, Moduli, Rat, Value, Vector, FLOAT_EQ_TOL};

use num_traits::{One, Zero};

/// Float tolerance for the strict `‖e_i + e_j‖ > 1` test when the norm
/// oracle is float-valued.
pub const GRAPH_OF_NORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Outcome of the CL-space test on a graph: perfectness plus the unique
/// intersection property between maximal cliques and maximal stable sets.
#[derive(Clone, Debug, Serialize)]
pub struct ClReport {
    pub perfect: bool,
    pub perfect_witness: Option<VertexSet>,
    pub intersection_ok: bool,
    pub violating_pair: Option<ViolatingPair>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolatingPair {
    pub clique: VertexSet,
    pub stable: VertexSet,
    pub intersection_size: usize,
}

impl ClReport {
    pub fn passes(&self) -> bool {
        self.perfect && self.intersection_ok
    }
}

/// Checks whether `g` is the graph of a CL-space. Limited to n <= 12 by the
/// exhaustive perfectness scan. Both conditions are always evaluated, so a
/// failing report shows every reason it fails.
pub fn reisner_check(g: &Graph) -> Result<ClReport> {
    let perfectness = g.is_perfect()?;
    let cliques = g.maximal_cliques();
    let stables = g.maximal_stable_sets();
    let mut violating_pair = None;
    'outer: for &clique in &cliques {
        for &stable in &stables {
            let size = clique.intersect(stable).len();
            if size != 1 {
                violating_pair = Some(ViolatingPair {
                    clique,
                    stable,
                    intersection_size: size,
                });
                break 'outer;
            }
        }
    }
    Ok(ClReport {
        perfect: perfectness.perfect,
        perfect_witness: perfectness.witness,
        intersection_ok: violating_pair.is_none(),
        violating_pair,
    })
}

/// A validated CL-space: the graph, the scalar field, and the cached clique
/// and stable-set enumerations that define the norm and the extreme points.
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct Space {
    graph: Graph,
    field: Field,
    max_cliques: Vec<VertexSet>,
    max_stables: Vec<VertexSet>,
}

/// Extreme point representative: a support set with one unimodular sign per
/// support vertex. Real signs are ±1; complex representatives are the
/// all-plus indicator and stand for their whole unimodular orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedSupport {
    pub support: VertexSet,
    /// Aligned with `support.iter()` (ascending vertex order).
    pub signs: Vec<i8>,
}

impl SignedSupport {
    pub fn indicator(support: VertexSet) -> Self {
        SignedSupport {
            support,
            signs: vec![1; support.len()],
        }
    }

    pub fn to_vector(&self, n: usize) -> Vector {
        let mut coords = vec![ExactComplex::zero(); n];
        for (v, &s) in self.support.iter().zip(&self.signs) {
            coords[v] = ExactComplex::from_int(s as i64);
        }
        Vector::Exact(coords)
    }
}

/// Enumerated extreme points. When `unimodular_orbits` is set the list holds
/// one nonnegative representative per orbit rather than a continuum.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremePoints {
    pub representatives: Vec<SignedSupport>,
    pub unimodular_orbits: bool,
}

impl Space {
    /// Validates the graph and builds the space. The error carries the full
    /// report when the graph fails either CL condition.
    pub fn from_graph(graph: Graph, field: Field) -> Result<Self> {
        let report = reisner_check(&graph)?;
        if !report.passes() {
            return Err(Error::NotClSpace(Box::new(report)));
        }
        let max_cliques = graph.maximal_cliques();
        let max_stables = graph.maximal_stable_sets();
        Ok(Space {
            graph,
            field,
            max_cliques,
            max_stables,
        })
    }

    pub fn dim(&self) -> usize {
        self.graph.n()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn max_cliques(&self) -> &[VertexSet] {
        &self.max_cliques
    }

    pub fn max_stables(&self) -> &[VertexSet] {
        &self.max_stables
    }

    fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// `‖x‖ = max over maximal cliques J of Σ_{j∈J} |x_j|`. Exact whenever
    /// every coordinate has a rational modulus; otherwise the documented
    /// float fallback.
    pub fn norm(&self, v: &Vector) -> Result<Value> {
        self.check_dim(v)?;
        Ok(support_max_norm(&self.max_cliques, v))
    }

    /// Dual norm: same maximum taken over maximal stable sets.
    pub fn dual_norm(&self, f: &Vector) -> Result<Value> {
        self.check_dim(f)?;
        Ok(support_max_norm(&self.max_stables, f))
    }

    /// Float norm kernel on precomputed coordinate moduli.
    pub fn norm_f64(&self, moduli: &[f64]) -> f64 {
        sets_max_f64(&self.max_cliques, moduli)
    }

    pub fn dual_norm_f64(&self, moduli: &[f64]) -> f64 {
        sets_max_f64(&self.max_stables, moduli)
    }

    /// Extreme points of the unit ball: sign patterns on maximal stable
    /// sets. Real mode enumerates all ±1 patterns; complex mode returns one
    /// indicator per stable set flagged as an orbit representative.
    pub fn extreme_points(&self) -> ExtremePoints {
        sign_patterns(&self.max_stables, self.field)
    }

    /// Extreme points of the dual ball: sign patterns on maximal cliques.
    pub fn dual_extreme_points(&self) -> ExtremePoints {
        sign_patterns(&self.max_cliques, self.field)
    }

    /// Whether `v` is an extreme point of the unit ball: every coordinate
    /// modulus in {0,1} and the support a maximal stable set.
    pub fn is_extreme(&self, v: &Vector) -> Result<bool> {
        self.check_dim(v)?;
        let support = match v.moduli() {
            Moduli::Exact(ms) => {
                let mut mask = VertexSet::EMPTY;
                for (j, m) in ms.iter().enumerate() {
                    if m.is_zero() {
                        continue;
                    }
                    if !m.is_one() {
                        return Ok(false);
                    }
                    mask.insert(j);
                }
                mask
            }
            Moduli::Float(ms) => {
                let mut mask = VertexSet::EMPTY;
                for (j, m) in ms.iter().enumerate() {
                    if m.abs() <= FLOAT_EQ_TOL {
                        continue;
                    }
                    if (m - 1.0).abs() > FLOAT_EQ_TOL {
                        return Ok(false);
                    }
                    mask.insert(j);
                }
                mask
            }
        };
        Ok(self.max_stables.contains(&support))
    }

    /// The nonnegative extreme points: 0/1 indicators of the maximal stable
    /// sets, as exact vectors, in canonical (ascending mask) order.
    pub fn nonneg_extreme_indicators(&self) -> Vec<Vector> {
        self.max_stables
            .iter()
            .map(|s| SignedSupport::indicator(*s).to_vector(self.dim()))
            .collect()
    }
}

fn support_max_norm(sets: &[VertexSet], v: &Vector) -> Value {
    match v.moduli() {
        Moduli::Exact(ms) => {
            let mut best = Rat::zero();
            for set in sets {
                let mut sum = Rat::zero();
                for j in set.iter() {
                    sum += &ms[j];
                }
                if sum > best {
                    best = sum;
                }
            }
            Value::Exact(best)
        }
        Moduli::Float(ms) => Value::Float(sets_max_f64(sets, &ms)),
    }
}

fn sets_max_f64(sets: &[VertexSet], moduli: &[f64]) -> f64 {
    sets.iter()
        .map(|set| set.iter().map(|j| moduli[j]).sum::<f64>())
        .fold(0.0, f64::max)
}

fn sign_patterns(sets: &[VertexSet], field: Field) -> ExtremePoints {
    match field {
        Field::Complex => ExtremePoints {
            representatives: sets.iter().map(|&s| SignedSupport::indicator(s)).collect(),
            unimodular_orbits: true,
        },
        Field::Real => {
            let mut reps = Vec::new();
            for &set in sets {
                let k = set.len();
                for pattern in 0..(1u32 << k) {
                    let signs = (0..k)
                        .map(|b| if pattern & (1 << b) != 0 { -1 } else { 1 })
                        .collect();
                    reps.push(SignedSupport { support: set, signs });
                }
            }
            ExtremePoints {
                representatives: reps,
                unimodular_orbits: false,
            }
        }
    }
}

/// Recovers the graph of an absolute normalized norm from a norm oracle:
/// edge `(i,j)` present exactly when `‖e_i + e_j‖ > 1`. Exact oracles use
/// the exact strict comparison; float oracles use a `1e-9` tolerance.
pub fn graph_of_norm<F>(n: usize, oracle: F) -> Result<Graph>
where
    F: Fn(&Vector) -> Result<Value>,
{
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = Vector::basis(n, i).add(&Vector::basis(n, j))?;
            if oracle(&v)?.exceeds_one(GRAPH_OF_NORM_TOL) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges)
}
