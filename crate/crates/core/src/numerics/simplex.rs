//! Exact convex-hull membership by phase-one simplex on rationals.
//!
//! Decides whether a point is a convex combination of the given generators,
//! and produces the weights when it is. Everything is arbitrary-precision
//! rational: the verdict is a theorem about the inputs, never a tolerance
//! call. Bland's rule (lowest eligible index enters, lowest basic index
//! breaks ratio ties) guarantees termination.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::report::rat_to_json;
use crate::scalar::Rat;

/// Certified convex combination: `Σ weights[i] · generators[i] = point`,
/// weights nonnegative and summing to one, all exact.
#[derive(Clone, Debug, Serialize)]
pub struct ConvexCombination {
    #[serde(serialize_with = "serialize_weights")]
    pub weights: Vec<Rat>,
}

fn serialize_weights<S: serde::Serializer>(
    weights: &[Rat],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(weights.len()))?;
    for w in weights {
        seq.serialize_element(&rat_to_json(w))?;
    }
    seq.end()
}

impl ConvexCombination {
    pub fn to_json(&self) -> Json {
        json!({ "weights": self.weights.iter().map(rat_to_json).collect::<Vec<_>>() })
    }
}

/// Decides exactly whether `point ∈ conv(generators)`.
///
/// Feasibility of `Σ λ_i g_i = point, Σ λ_i = 1, λ ≥ 0` is settled by a
/// phase-one simplex: artificial variables start basic and their sum is
/// driven to zero exactly when the system is feasible.
pub fn conv_membership(
    point: &[Rat],
    generators: &[Vec<Rat>],
) -> Result<Option<ConvexCombination>> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("no generators given".into()));
    }
    let dim = point.len();
    for g in generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
    }
    let k = generators.len();
    let rows = dim + 1;
    let cols = k + rows; // lambdas then artificials

    // rows: coordinates, then the convexity row; flip signs so rhs >= 0
    let mut table = vec![vec![Rat::zero(); cols + 1]; rows];
    for r in 0..rows {
        let rhs = if r < dim { point[r].clone() } else { Rat::one() };
        let flip = rhs.is_negative();
        for (i, g) in generators.iter().enumerate() {
            let a = if r < dim { g[r].clone() } else { Rat::one() };
            table[r][i] = if flip { -a } else { a };
        }
        table[r][k + r] = Rat::one();
        table[r][cols] = if flip { -rhs } else { rhs };
    }

    // phase-one objective row: maximize -(sum of artificials);
    // with the artificial basis this is obj[j] = -Σ_r table[r][j]
    let mut obj = vec![Rat::zero(); cols + 1];
    for j in (0..cols).chain([cols]) {
        if j >= k && j < cols {
            continue; // artificial columns start basic with zero reduced cost
        }
        let mut s = Rat::zero();
        for row in table.iter() {
            s += &row[j];
        }
        obj[j] = -s;
    }

    let mut basis: Vec<usize> = (k..cols).collect();
    // Bland: lowest-index column with a negative reduced cost enters
    while let Some(entering) = (0..cols).find(|&j| obj[j].is_negative()) {
        // ratio test; ties go to the lowest basic variable index
        let mut pivot_row: Option<usize> = None;
        let mut best_ratio: Option<Rat> = None;
        for r in 0..rows {
            if table[r][entering].is_positive() {
                let ratio = &table[r][cols] / &table[r][entering];
                let better = match &best_ratio {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[r] < basis[pivot_row.unwrap()])
                    }
                };
                if better {
                    best_ratio = Some(ratio);
                    pivot_row = Some(r);
                }
            }
        }
        let r = pivot_row.ok_or_else(|| {
            Error::Internal("phase-one simplex column unbounded".into())
        })?;

        // pivot on (r, entering)
        let inv = Rat::one() / &table[r][entering];
        for j in 0..=cols {
            table[r][j] *= &inv;
        }
        for rr in 0..rows {
            if rr != r && !table[rr][entering].is_zero() {
                let factor = table[rr][entering].clone();
                for j in 0..=cols {
                    let delta = &factor * &table[r][j];
                    table[rr][j] -= delta;
                }
            }
        }
        if !obj[entering].is_zero() {
            let factor = obj[entering].clone();
            for j in 0..=cols {
                let delta = &factor * &table[r][j];
                obj[j] -= delta;
            }
        }
        basis[r] = entering;
    }

    // optimum of the artificial sum is -obj[cols]; nonzero means infeasible
    if !obj[cols].is_zero() {
        return Ok(None);
    }

    let mut weights = vec![Rat::zero(); k];
    for (r, &b) in basis.iter().enumerate() {
        if b < k {
            weights[b] = table[r][cols].clone();
        }
    }

    // exact post-check; any failure here is a bug, not an input problem
    let mut sum = Rat::zero();
    for w in &weights {
        if w.is_negative() {
            return Err(Error::Internal("negative weight from simplex".into()));
        }
        sum += w;
    }
    if !sum.is_one() {
        return Err(Error::Internal("weights do not sum to one".into()));
    }
    for d in 0..dim {
        let mut acc = Rat::zero();
        for (i, g) in generators.iter().enumerate() {
            acc += &weights[i] * &g[d];
        }
        if acc != point[d] {
            return Err(Error::Internal("weights do not reproduce the point".into()));
        }
    }

    Ok(Some(ConvexCombination { weights }))
}
