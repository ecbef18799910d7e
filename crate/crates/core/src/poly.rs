//! Sparse homogeneous polynomials and the explicit peak constructions.
//!
//! A degree-m polynomial is stored as a map from exponent vectors (length n,
//! entries summing to m) to exact complex rational coefficients. The peak
//! constructions live on top:
//!
//! * [`ell1_peak_poly`] builds `Π_k x_{j_k} + (Σ_{j distinct} x_j)^m` on
//!   ℓ1, which attains its norm only at the scaled multiplicity point
//!   `(1/m) Σ_k e_{j_k}` up to a unimodular factor;
//! * [`build_peak_poly`] assembles, for a CL-space and m nonnegative extreme
//!   points, the space-wide polynomial `Σ_J Q_J + (Σ_J L_J)^m` over the
//!   maximal cliques J, which strongly attains its norm at the average of
//!   the chosen extreme points.
//!
//! Both return an [`AttainmentPrediction`] whose norm value is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::report::{json_to_scalar, rat_to_json, ReportNum};
use crate::scalar::{ExactComplex, Rat, Vector};
use crate::space::Space;

#[derive(Clone, PartialEq, Debug)]
pub struct HomPoly {
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<u8>, ExactComplex>,
}

impl HomPoly {
    pub fn zero(n: usize, degree: usize) -> Self {
        HomPoly {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Single term `coeff · x^alpha`. The exponents must sum to the degree.
    pub fn monomial(n: usize, alpha: &[u8], coeff: ExactComplex) -> Result<Self> {
        if alpha.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: alpha.len(),
            });
        }
        let degree = alpha.iter().map(|&e| e as usize).sum();
        let mut p = HomPoly::zero(n, degree);
        p.add_term(alpha.to_vec(), coeff);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &ExactComplex)> {
        self.terms.iter().map(|(a, c)| (a.as_slice(), c))
    }

    fn add_term(&mut self, alpha: Vec<u8>, coeff: ExactComplex) {
        debug_assert_eq!(alpha.len(), self.n);
        debug_assert_eq!(alpha.iter().map(|&e| e as usize).sum::<usize>(), self.degree);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (alpha, coeff) in &other.terms {
            out.add_term(alpha.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, by: &ExactComplex) -> HomPoly {
        if by.is_zero() {
            return HomPoly::zero(self.n, self.degree);
        }
        HomPoly {
            n: self.n,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.mul(by)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.add(&other.scale(&ExactComplex::from_int(-1)))
    }

    /// Exact evaluation at an exact vector.
    pub fn eval_exact(&self, coords: &[ExactComplex]) -> Result<ExactComplex> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: coords.len(),
            });
        }
        let mut total = ExactComplex::zero();
        for (alpha, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (j, &e) in alpha.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&coords[j].pow(e as u32));
                }
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Float evaluation; coefficients convert on the fly.
    pub fn eval_f64(&self, coords: &[Complex64]) -> Complex64 {
        debug_assert_eq!(coords.len(), self.n);
        let mut total = Complex64::ZERO;
        for (alpha, coeff) in &self.terms {
            let mut term = coeff.to_c64();
            for (j, &e) in alpha.iter().enumerate() {
                if e > 0 {
                    term *= coords[j].powi(e as i32);
                }
            }
            total += term;
        }
        total
    }

    pub fn eval(&self, v: &Vector) -> Result<ExactOrFloat> {
        match v {
            Vector::Exact(coords) => Ok(ExactOrFloat::Exact(self.eval_exact(coords)?)),
            Vector::Float(coords) => {
                if coords.len() != self.n {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        got: coords.len(),
                    });
                }
                Ok(ExactOrFloat::Float(self.eval_f64(coords)))
            }
        }
    }

    pub fn to_json(&self) -> Json {
        let terms: Vec<Json> = self
            .terms
            .iter()
            .map(|(alpha, coeff)| {
                json!({
                    "alpha": alpha,
                    "coeff": [rat_to_json(&coeff.re), rat_to_json(&coeff.im)],
                })
            })
            .collect();
        json!({ "n": self.n, "m": self.degree, "terms": terms })
    }

    pub fn from_json(v: &Json) -> Result<HomPoly> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("polynomial must be a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(Json::as_u64)
            .ok_or_else(|| Error::Json("polynomial needs integer \"n\"".into()))? as usize;
        let degree = obj
            .get("m")
            .and_then(Json::as_u64)
            .ok_or_else(|| Error::Json("polynomial needs integer \"m\"".into()))? as usize;
        let mut p = HomPoly::zero(n, degree);
        let terms = obj
            .get("terms")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Json("polynomial needs \"terms\" array".into()))?;
        for t in terms {
            let alpha: Vec<u8> = t
                .get("alpha")
                .and_then(Json::as_array)
                .ok_or_else(|| Error::Json("term needs \"alpha\"".into()))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .filter(|&x| x <= u8::MAX as u64)
                        .map(|x| x as u8)
                        .ok_or_else(|| Error::Json(format!("bad exponent {e}")))
                })
                .collect::<Result<_>>()?;
            if alpha.len() != n {
                return Err(Error::Json(format!(
                    "alpha length {} does not match n = {n}",
                    alpha.len()
                )));
            }
            if alpha.iter().map(|&e| e as usize).sum::<usize>() != degree {
                return Err(Error::Json(format!(
                    "alpha {alpha:?} does not sum to the degree {degree}"
                )));
            }
            let coeff = json_to_scalar(
                t.get("coeff")
                    .ok_or_else(|| Error::Json("term needs \"coeff\"".into()))?,
            )?;
            p.add_term(alpha, coeff);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug)]
pub enum ExactOrFloat {
    Exact(ExactComplex),
    Float(Complex64),
}

impl ExactOrFloat {
    pub fn abs_f64(&self) -> f64 {
        match self {
            ExactOrFloat::Exact(z) => z.to_c64().norm(),
            ExactOrFloat::Float(z) => z.norm(),
        }
    }
}

/// Vector-valued homogeneous polynomial: one component per coordinate of the
/// target space, all of the same degree.
#[derive(Clone, Debug)]
pub struct PolyVec {
    pub components: Vec<HomPoly>,
}

impl PolyVec {
    pub fn new(components: Vec<HomPoly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput("polynomial vector is empty".into()));
        }
        let n = components[0].n();
        let degree = components[0].degree();
        for c in &components {
            if c.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.n(),
                });
            }
            if c.degree() != degree {
                return Err(Error::DegreeMismatch(degree, c.degree()));
            }
        }
        Ok(PolyVec { components })
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    pub fn eval_f64(&self, coords: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval_f64(coords)).collect()
    }

    pub fn to_json(&self) -> Json {
        json!({ "components": self.components.iter().map(HomPoly::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Json) -> Result<PolyVec> {
        let comps = v
            .get("components")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Json("polynomial vector needs \"components\"".into()))?;
        PolyVec::new(comps.iter().map(HomPoly::from_json).collect::<Result<_>>()?)
    }
}

/// Where a peak polynomial attains its norm and the exact value there.
#[derive(Clone, Debug)]
pub struct AttainmentPrediction {
    /// Nonnegative rational point of norm one where the norm is attained.
    pub point: Vector,
    pub predicted_norm: Rat,
    pub per_clique: Vec<CliqueContribution>,
}

/// For one maximal clique J: the vertex hit by each chosen extreme point
/// and the resulting multiplicities.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueContribution {
    pub clique: VertexSet,
    /// `hits[k]` = the unique vertex of J in the support of the k-th point.
    pub hits: Vec<usize>,
    /// Vertex → multiplicity, ascending by vertex.
    pub multiplicities: Vec<(usize, u32)>,
}

impl AttainmentPrediction {
    pub fn to_json(&self) -> Json {
        json!({
            "point": crate::report::vector_to_json(&self.point),
            "predicted_norm": ReportNum::exact(&self.predicted_norm),
            "per_clique": self.per_clique,
        })
    }
}

fn multiplicities(indices: &[usize]) -> Vec<(usize, u32)> {
    let mut mult: BTreeMap<usize, u32> = BTreeMap::new();
    for &j in indices {
        *mult.entry(j).or_insert(0) += 1;
    }
    mult.into_iter().collect()
}

/// `(Σ_v coeffs_v · x_v)^m` expanded by the multinomial theorem.
fn power_of_linear(coeffs: &[ExactComplex], m: usize) -> HomPoly {
    let n = coeffs.len();
    let support: Vec<usize> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(v, _)| v)
        .collect();
    let mut out = HomPoly::zero(n, m);
    if support.is_empty() {
        return out;
    }
    let mut exponents = vec![0u8; support.len()];
    distribute(m, 0, &mut exponents, &mut |exps| {
        let mut alpha = vec![0u8; n];
        let mut coeff = ExactComplex::from_real(multinomial(m, exps));
        for (slot, &e) in exps.iter().enumerate() {
            if e > 0 {
                let v = support[slot];
                alpha[v] = e;
                coeff = coeff.mul(&coeffs[v].pow(e as u32));
            }
        }
        out.add_term(alpha, coeff);
    });
    out
}

/// Calls `emit` for every way to write `remaining` as an ordered sum over
/// `exponents[slot..]`.
fn distribute(remaining: usize, slot: usize, exponents: &mut [u8], emit: &mut impl FnMut(&[u8])) {
    if slot + 1 == exponents.len() {
        exponents[slot] = remaining as u8;
        emit(exponents);
        return;
    }
    for e in 0..=remaining {
        exponents[slot] = e as u8;
        distribute(remaining - e, slot + 1, exponents, emit);
    }
}

fn multinomial(m: usize, parts: &[u8]) -> Rat {
    let mut num = BigInt::one();
    for k in 2..=m {
        num *= k;
    }
    let mut den = BigInt::one();
    for &p in parts {
        for k in 2..=(p as usize) {
            den *= k;
        }
    }
    Rat::new(num, den)
}

/// The ℓ1 peak polynomial `Π_{k} x_{j_k} + (Σ_{j ∈ {j_1,…,j_m}} x_j)^m` in
/// `n` ambient variables. Repeated indices are allowed; the product picks up
/// their multiplicities while the linear sum runs over distinct indices.
pub fn ell1_peak_poly(n: usize, indices: &[usize]) -> Result<HomPoly> {
    let m = indices.len();
    if m == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    if m > u8::MAX as usize {
        return Err(Error::InvalidInput(format!("degree {m} out of range")));
    }
    for &j in indices {
        if j >= n {
            return Err(Error::VertexOutOfRange { index: j, n });
        }
    }
    let mut alpha = vec![0u8; n];
    for &j in indices {
        alpha[j] += 1;
    }
    let product = HomPoly::monomial(n, &alpha, ExactComplex::one())?;

    let mut lin = vec![ExactComplex::zero(); n];
    for &j in indices {
        lin[j] = ExactComplex::one();
    }
    product.add(&power_of_linear(&lin, m))
}

/// Predicted attainment for [`ell1_peak_poly`] on ℓ1: the point
/// `(1/m) Σ_k e_{j_k}` and the exact norm `Π_j (m_j/m)^{m_j} + 1`.
pub fn ell1_peak_prediction(n: usize, indices: &[usize]) -> Result<AttainmentPrediction> {
    let m = indices.len();
    if m == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    for &j in indices {
        if j >= n {
            return Err(Error::VertexOutOfRange { index: j, n });
        }
    }
    let mult = multiplicities(indices);
    let m_rat = Rat::from_integer(BigInt::from(m));
    let mut coords = vec![Rat::zero(); n];
    let mut product = Rat::one();
    for &(j, mj) in &mult {
        let w = Rat::from_integer(BigInt::from(mj)) / &m_rat;
        coords[j] = w.clone();
        for _ in 0..mj {
            product *= &w;
        }
    }
    Ok(AttainmentPrediction {
        point: Vector::from_rationals(coords),
        predicted_norm: product + Rat::one(),
        per_clique: vec![CliqueContribution {
            clique: VertexSet::full(n),
            hits: indices.to_vec(),
            multiplicities: mult,
        }],
    })
}

/// Assembles the space-wide peak polynomial for m nonnegative extreme points
/// `ys` (each a 0/1 indicator of a maximal stable set):
/// `Q = Σ_J Q_J + (Σ_J L_J)^m` over the maximal cliques J, where the k-th
/// index fed to `Q_J` is the unique vertex of J in the support of `ys[k]`.
/// Returns Q together with the prediction that it attains its norm at
/// `(1/m) Σ ys` with exact value `Σ_J (1 + Π_j (m_j/m)^{m_j}) + |M(G)|^m`.
///
/// Requires `m >= 2`; the degree-one case degenerates.
pub fn build_peak_poly(space: &Space, ys: &[Vector]) -> Result<(HomPoly, AttainmentPrediction)> {
    let m = ys.len();
    if m < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: m });
    }
    if m > u8::MAX as usize {
        return Err(Error::InvalidInput(format!("degree {m} out of range")));
    }
    let n = space.dim();
    let mut supports = Vec::with_capacity(m);
    for y in ys {
        if y.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: y.dim(),
            });
        }
        if !y.is_nonnegative_exact() {
            return Err(Error::InvalidInput(
                "each peak generator must be an exact nonnegative vector".into(),
            ));
        }
        if !space.is_extreme(y)? {
            return Err(Error::InvalidInput(
                "each peak generator must be an extreme point (0/1 indicator of a maximal stable set)"
                    .into(),
            ));
        }
        supports.push(y.support().into_iter().collect::<VertexSet>());
    }

    let m_rat = Rat::from_integer(BigInt::from(m));
    let mut q = HomPoly::zero(n, m);
    let mut lin_total = vec![ExactComplex::zero(); n];
    let mut per_clique = Vec::new();
    let mut predicted = Rat::zero();

    for &clique in space.max_cliques() {
        let mut hits = Vec::with_capacity(m);
        for support in &supports {
            let common = clique.intersect(*support);
            match (common.len(), common.lowest()) {
                (1, Some(v)) => hits.push(v),
                _ => {
                    return Err(Error::Internal(format!(
                        "clique {clique} meets stable support {support} in {} vertices",
                        common.len()
                    )))
                }
            }
        }
        q = q.add(&ell1_peak_poly(n, &hits)?)?;

        let mult = multiplicities(&hits);
        let mut product = Rat::one();
        for &(j, mj) in &mult {
            let w = Rat::from_integer(BigInt::from(mj)) / &m_rat;
            for _ in 0..mj {
                product *= &w;
            }
            // L_J counts each distinct hit vertex once
            lin_total[j] = lin_total[j].add(&ExactComplex::one());
        }
        predicted += Rat::one() + product;
        per_clique.push(CliqueContribution {
            clique,
            hits,
            multiplicities: mult,
        });
    }

    q = q.add(&power_of_linear(&lin_total, m))?;
    let clique_count = Rat::from_integer(BigInt::from(space.max_cliques().len()));
    let mut clique_power = Rat::one();
    for _ in 0..m {
        clique_power *= &clique_count;
    }
    predicted += clique_power;

    let mut point = Vector::zero_exact(n);
    for y in ys {
        point = point.add(y)?;
    }
    let point = point.scale_rational(&(Rat::one() / &m_rat));

    Ok((
        q,
        AttainmentPrediction {
            point,
            predicted_norm: predicted,
            per_clique,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::scalar::rat;
    use crate::space::Field;

    fn exact(v: &Vector) -> &[ExactComplex] {
        v.exact_coords().unwrap()
    }

    #[test]
    fn monomial_eval() {
        // x0·x1 at (1/2, 1/2) = 1/4
        let p = HomPoly::monomial(2, &[1, 1], ExactComplex::one()).unwrap();
        let x = Vector::from_rationals(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(p.eval_exact(exact(&x)).unwrap().re, rat(1, 4));

        let zero = HomPoly::zero(2, 3);
        assert!(zero.eval_exact(exact(&x)).unwrap().is_zero());

        assert!(matches!(
            p.eval_exact(exact(&Vector::from_ints(&[1, 2, 3]))),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn add_scale_cancel() {
        let p = HomPoly::monomial(2, &[2, 0], ExactComplex::one()).unwrap();
        let sum = p.add(&p.scale(&ExactComplex::from_int(-1))).unwrap();
        assert!(sum.is_zero());

        let doubled = p.add(&p).unwrap();
        assert_eq!(
            doubled.terms().next().unwrap().1.re,
            rat(2, 1)
        );

        let q = HomPoly::monomial(2, &[1, 0], ExactComplex::one()).unwrap();
        assert!(matches!(p.add(&q), Err(Error::DegreeMismatch(2, 1))));
    }

    #[test]
    fn peak_poly_shapes() {
        // (0,1) in 3 variables: x0x1 + (x0+x1)^2 = x0^2 + 3 x0x1 + x1^2
        let p = ell1_peak_poly(3, &[0, 1]).unwrap();
        assert_eq!(p.degree(), 2);
        let coeffs: Vec<(Vec<u8>, Rat)> = p
            .terms()
            .map(|(a, c)| (a.to_vec(), c.re.clone()))
            .collect();
        assert_eq!(
            coeffs,
            vec![
                (vec![0, 2, 0], rat(1, 1)),
                (vec![1, 1, 0], rat(3, 1)),
                (vec![2, 0, 0], rat(1, 1)),
            ]
        );

        // m = 1 collapses: x0 + x0 = 2 x0
        let p = ell1_peak_poly(2, &[0]).unwrap();
        let terms: Vec<_> = p.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].1.re, rat(2, 1));

        // repeated index: x0^2 + x0^2 = 2 x0^2
        let p = ell1_peak_poly(3, &[0, 0]).unwrap();
        let terms: Vec<_> = p.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, &[2, 0, 0]);
        assert_eq!(terms[0].1.re, rat(2, 1));

        assert!(ell1_peak_poly(2, &[2]).is_err());
        assert!(ell1_peak_poly(2, &[]).is_err());
    }

    #[test]
    fn peak_poly_value_at_quarter() {
        // Q_{0,1} at (1/2, 1/2): 1/4 + 1 = 5/4
        let p = ell1_peak_poly(2, &[0, 1]).unwrap();
        let x = Vector::from_rationals(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(p.eval_exact(exact(&x)).unwrap().re, rat(5, 4));
    }

    #[test]
    fn peak_predictions() {
        let pred = ell1_peak_prediction(3, &[0, 1]).unwrap();
        assert_eq!(
            exact(&pred.point)[0].re,
            rat(1, 2)
        );
        assert_eq!(pred.predicted_norm, rat(5, 4));

        let pred = ell1_peak_prediction(2, &[0]).unwrap();
        assert_eq!(pred.predicted_norm, rat(2, 1));
        assert_eq!(exact(&pred.point)[0].re, rat(1, 1));

        let pred = ell1_peak_prediction(2, &[0, 0]).unwrap();
        assert_eq!(pred.predicted_norm, rat(2, 1));
        assert_eq!(exact(&pred.point)[0].re, rat(1, 1));
    }

    #[test]
    fn prediction_matches_eval_exactly() {
        for n in 1..=4usize {
            for m in 1..=3usize {
                let mut tuple = vec![0usize; m];
                loop {
                    let p = ell1_peak_poly(n, &tuple).unwrap();
                    let pred = ell1_peak_prediction(n, &tuple).unwrap();
                    let at = p.eval_exact(exact(&pred.point)).unwrap();
                    assert!(at.im.is_zero());
                    assert_eq!(at.re, pred.predicted_norm, "tuple {tuple:?}");
                    // advance the odometer
                    let mut k = 0;
                    loop {
                        if k == m {
                            break;
                        }
                        tuple[k] += 1;
                        if tuple[k] < n {
                            break;
                        }
                        tuple[k] = 0;
                        k += 1;
                    }
                    if k == m {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn build_peak_on_ell1_3() {
        let s = Space::from_graph(Graph::complete(3).unwrap(), Field::Real).unwrap();
        let ys = vec![Vector::basis(3, 0), Vector::basis(3, 1)];
        let (q, pred) = build_peak_poly(&s, &ys).unwrap();
        assert_eq!(pred.predicted_norm, rat(9, 4));
        assert_eq!(exact(&pred.point)[0].re, rat(1, 2));
        assert_eq!(exact(&pred.point)[2].re, rat(0, 1));
        let at = q.eval_exact(exact(&pred.point)).unwrap();
        assert_eq!(at.re, rat(9, 4));
        assert_eq!(pred.per_clique.len(), 1);
        assert_eq!(pred.per_clique[0].hits, vec![0, 1]);
    }

    #[test]
    fn build_peak_on_path_space() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = Space::from_graph(g, Field::Real).unwrap();
        let ys = vec![
            Vector::from_ints(&[1, 0, 1]),
            Vector::from_ints(&[0, 1, 0]),
        ];
        let (q, pred) = build_peak_poly(&s, &ys).unwrap();
        assert_eq!(pred.predicted_norm, rat(13, 2));
        for z in exact(&pred.point) {
            assert_eq!(z.re, rat(1, 2));
        }
        assert_eq!(q.eval_exact(exact(&pred.point)).unwrap().re, rat(13, 2));
    }

    #[test]
    fn build_peak_rejections() {
        let s = Space::from_graph(Graph::edgeless(2).unwrap(), Field::Real).unwrap();
        let ones = Vector::from_ints(&[1, 1]);
        // m = 1 is rejected
        assert!(matches!(
            build_peak_poly(&s, std::slice::from_ref(&ones)),
            Err(Error::DegreeTooSmall { min: 2, got: 1 })
        ));
        // non-extreme input is rejected
        let bad = Vector::from_ints(&[1, 0]);
        assert!(build_peak_poly(&s, &[bad, ones]).is_err());
    }

    #[test]
    fn homogeneity() {
        let p = ell1_peak_poly(3, &[0, 1, 1]).unwrap();
        let x = Vector::from_rationals(vec![rat(1, 3), rat(2, 5), rat(-1, 7)]);
        let t = rat(3, 4);
        let scaled = x.scale_rational(&t);
        let lhs = p.eval_exact(exact(&scaled)).unwrap();
        let mut t_pow = Rat::one();
        for _ in 0..3 {
            t_pow *= &t;
        }
        let rhs = p.eval_exact(exact(&x)).unwrap().scale(&t_pow);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_roundtrip() {
        let p = ell1_peak_poly(3, &[0, 1]).unwrap();
        let j = p.to_json();
        let q = HomPoly::from_json(&j).unwrap();
        assert_eq!(p, q);
        // rational coefficients survive via strings
        let half = HomPoly::monomial(2, &[1, 1], ExactComplex::from_real(rat(1, 2))).unwrap();
        let back = HomPoly::from_json(&half.to_json()).unwrap();
        assert_eq!(half, back);
    }
}
