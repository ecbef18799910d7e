//! Seeded multi-start projected ascent over regions of a CL-space ball.
//!
//! The contract is a certified lower bound: every iterate is kept feasible,
//! the returned value is the objective at a feasible point, and nothing here
//! is ever claimed to be the supremum. Runs are reproducible bit for bit
//! from `(seed, restarts)`: restart `i` draws from its own ChaCha stream, so
//! growing the restart budget only appends new starts, and results are
//! reduced in restart order regardless of the execution strategy.
//!
//! Real-mode states are the coordinates themselves; complex-mode states hold
//! a radius and a phase per coordinate, and both are ascended.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::space::{Field, Space};

/// How far beyond the unit ball a returned argmax may sit.
pub const BALL_FEASIBILITY_TOL: f64 = 1e-12;
/// Largest allowed residual of an affine slice constraint.
pub const SLICE_RESIDUAL_TOL: f64 = 1e-9;
/// Deepest backtracking index tried before a gradient step is abandoned
/// (`0.1 · 0.9^120 ≈ 3e−7`).
const BACKTRACK_LIMIT: usize = 120;
/// Deepest step index for the compass phase. Walking the intersection of
/// two norm facets can require steps below the width of the currently
/// inactive facet's slack, so the pattern search shrinks much further
/// (`0.1 · 0.9^200 ≈ 7e−11`).
const COMPASS_LIMIT: usize = 200;

#[derive(Clone, Debug)]
pub struct MaximizeOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Ascent iterations per restart; each one takes the first improving
    /// step on the ladder `step0 · decay^k`.
    pub iters: usize,
    pub step0: f64,
    pub decay: f64,
    pub execution: Execution,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            seed: 0,
            restarts: 64,
            iters: 200,
            step0: 0.1,
            decay: 0.9,
            execution: Execution::default(),
        }
    }
}

impl MaximizeOptions {
    pub fn seeded(seed: u64, restarts: usize) -> Self {
        MaximizeOptions {
            seed,
            restarts,
            ..Default::default()
        }
    }
}

/// Feasible region, always intersected with the unit ball of the space.
#[derive(Clone, Debug)]
pub enum Region {
    /// The unit ball itself.
    Ball,
    /// Ball ∩ nonnegative reals, coordinatewise.
    NonnegFace,
    /// Ball ∩ `{x : f(x) = 1}` for the linear functional with these
    /// coefficients. Must be real in a real-mode space.
    Slice(Vec<Complex64>),
}

/// Excludes the set of points within `radius` (in the space norm) of the
/// unimodular orbit `{λ·e_w : |λ|=1}` of a basis vector.
#[derive(Clone, Copy, Debug)]
pub struct OrbitTube {
    pub basis_index: usize,
    pub radius: f64,
}

pub struct Domain<'a> {
    pub space: &'a Space,
    pub region: Region,
    pub exclude: Option<OrbitTube>,
    /// For objectives that are the modulus of a homogeneous function: the
    /// objective is evaluated at the radially normalized representative of
    /// each iterate and the argmax is reported on the sphere. Ascent then
    /// happens on a ray-constant function, so the radial ball projection
    /// can never cancel a gradient step. Ball region only, no tube.
    pub homogeneous: bool,
}

impl<'a> Domain<'a> {
    pub fn ball(space: &'a Space) -> Self {
        Domain {
            space,
            region: Region::Ball,
            exclude: None,
            homogeneous: false,
        }
    }

    /// Ball domain for `|homogeneous|` objectives; see [`Domain::homogeneous`].
    pub fn ball_homogeneous(space: &'a Space) -> Self {
        Domain {
            space,
            region: Region::Ball,
            exclude: None,
            homogeneous: true,
        }
    }

    pub fn slice(space: &'a Space, functional: Vec<Complex64>) -> Self {
        Domain {
            space,
            region: Region::Slice(functional),
            exclude: None,
            homogeneous: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RestartOutcome {
    pub value: f64,
    pub argmax: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct MaximizeOutcome {
    pub value: f64,
    pub argmax: Vec<Complex64>,
    /// One record per restart, in restart order.
    pub trace: Vec<RestartOutcome>,
}

/// Multi-start projected gradient ascent of `objective` over the domain.
///
/// Deterministic given `(seed, restarts)`; the value is a lower bound on the
/// true supremum because every reported point is feasible.
pub fn maximize<F>(domain: &Domain, objective: F, opts: &MaximizeOptions) -> Result<MaximizeOutcome>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    if opts.restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    let engine = Engine::new(domain)?;
    let outcomes: Vec<RestartOutcome> = map_indexed(opts.execution, opts.restarts, |restart| {
        engine.run_restart(&objective, opts, restart as u64)
    });
    let mut best = 0usize;
    for (i, o) in outcomes.iter().enumerate() {
        if o.value > outcomes[best].value {
            best = i;
        }
    }
    Ok(MaximizeOutcome {
        value: outcomes[best].value,
        argmax: outcomes[best].argmax.clone(),
        trace: outcomes,
    })
}

struct Engine<'a> {
    space: &'a Space,
    region: &'a Region,
    exclude: Option<OrbitTube>,
    complex: bool,
    homogeneous: bool,
    n: usize,
    /// A feasible point of the slice, when the region is a slice.
    anchor: Option<Vec<Complex64>>,
}

impl<'a> Engine<'a> {
    fn new(domain: &'a Domain) -> Result<Self> {
        let complex = domain.space.field() == Field::Complex;
        let n = domain.space.dim();
        let anchor = match &domain.region {
            Region::Slice(f) => {
                if f.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: f.len(),
                    });
                }
                if !complex && f.iter().any(|z| z.im != 0.0) {
                    return Err(Error::InvalidInput(
                        "slice functional must be real in a real-mode space".into(),
                    ));
                }
                Some(slice_anchor(domain.space, f)?)
            }
            _ => None,
        };
        if let Some(tube) = domain.exclude {
            if tube.basis_index >= n {
                return Err(Error::VertexOutOfRange {
                    index: tube.basis_index,
                    n,
                });
            }
            let in_range = tube.radius > 0.0 && tube.radius < 1.0;
            if !in_range {
                return Err(Error::InvalidInput(format!(
                    "orbit tube radius must lie in (0, 1), got {}",
                    tube.radius
                )));
            }
        }
        if domain.homogeneous && (!matches!(domain.region, Region::Ball) || domain.exclude.is_some())
        {
            return Err(Error::InvalidInput(
                "homogeneous normalization applies to plain ball domains only".into(),
            ));
        }
        Ok(Engine {
            space: domain.space,
            region: &domain.region,
            exclude: domain.exclude,
            complex,
            homogeneous: domain.homogeneous,
            n,
            anchor,
        })
    }

    /// Radially normalized representative: coordinates scaled onto the unit
    /// sphere (left alone near the origin).
    fn normalized(&self, coords: &mut [Complex64]) {
        let m: Vec<f64> = coords.iter().map(|z| z.norm()).collect();
        let norm = self.space.norm_f64(&m);
        if norm > 1e-9 {
            for z in coords.iter_mut() {
                *z /= norm;
            }
        }
    }

    fn state_len(&self) -> usize {
        if self.complex {
            2 * self.n
        } else {
            self.n
        }
    }

    fn coords(&self, state: &[f64]) -> Vec<Complex64> {
        if self.complex {
            (0..self.n)
                .map(|j| Complex64::from_polar(state[2 * j], state[2 * j + 1]))
                .collect()
        } else {
            state.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        }
    }

    fn state_of(&self, coords: &[Complex64]) -> Vec<f64> {
        if self.complex {
            let mut s = Vec::with_capacity(2 * self.n);
            for z in coords {
                s.push(z.norm());
                s.push(if z.norm() == 0.0 { 0.0 } else { z.arg() });
            }
            s
        } else {
            coords.iter().map(|z| z.re).collect()
        }
    }

    fn moduli(&self, state: &[f64]) -> Vec<f64> {
        if self.complex {
            (0..self.n).map(|j| state[2 * j].abs()).collect()
        } else {
            state.iter().map(|x| x.abs()).collect()
        }
    }

    /// Projects the state into the region (ball scaling, face clamping,
    /// slice correction). Tube exclusion is checked separately.
    fn project(&self, state: &mut Vec<f64>) {
        match self.region {
            Region::Ball => self.scale_into_ball(state),
            Region::NonnegFace => {
                if self.complex {
                    for j in 0..self.n {
                        state[2 * j] = state[2 * j].max(0.0);
                        state[2 * j + 1] = 0.0;
                    }
                } else {
                    for x in state.iter_mut() {
                        *x = x.max(0.0);
                    }
                }
                self.scale_into_ball(state);
            }
            Region::Slice(f) => {
                let mut x = self.coords(state);
                slice_correct(&mut x, f);
                let norm = self.space.norm_f64(&x.iter().map(|z| z.norm()).collect::<Vec<_>>());
                if norm > 1.0 + BALL_FEASIBILITY_TOL {
                    let anchor = self.anchor.as_ref().expect("slice has an anchor");
                    // largest t with anchor + t(x - anchor) inside the ball;
                    // the constraint survives because the blend is affine
                    let mut lo = 0.0f64;
                    let mut hi = 1.0f64;
                    for _ in 0..30 {
                        let mid = 0.5 * (lo + hi);
                        let y: Vec<Complex64> = anchor
                            .iter()
                            .zip(&x)
                            .map(|(a, b)| a + (b - a) * mid)
                            .collect();
                        let m: Vec<f64> = y.iter().map(|z| z.norm()).collect();
                        if self.space.norm_f64(&m) <= 1.0 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    for (i, (a, b)) in anchor.iter().zip(&x.clone()).enumerate() {
                        x[i] = a + (b - a) * lo;
                    }
                    slice_correct(&mut x, f);
                }
                *state = self.state_of(&x);
            }
        }
    }

    fn scale_into_ball(&self, state: &mut [f64]) {
        let norm = self.space.norm_f64(&self.moduli(state));
        if norm > 1.0 {
            let inv = 1.0 / norm;
            if self.complex {
                for j in 0..self.n {
                    state[2 * j] *= inv;
                }
            } else {
                for x in state.iter_mut() {
                    *x *= inv;
                }
            }
        }
    }

    /// Distance from the excluded orbit, `min over |λ|=1 of ‖x − λ·e_w‖`,
    /// which for an absolute norm is the norm at moduli with the w-th
    /// coordinate replaced by `|1 − |x_w||`.
    fn tube_distance(&self, state: &[f64], tube: &OrbitTube) -> f64 {
        let mut m = self.moduli(state);
        m[tube.basis_index] = (1.0 - m[tube.basis_index]).abs();
        self.space.norm_f64(&m)
    }

    fn tube_ok(&self, state: &[f64]) -> bool {
        match &self.exclude {
            None => true,
            Some(tube) => self.tube_distance(state, tube) > tube.radius,
        }
    }

    /// Canonical sphere points used as deterministic warm starts for the
    /// first few restarts: the normalized all-ones vector, then each basis
    /// vector. They are distinguished points of any absolute-norm ball and
    /// carry no knowledge of the objective.
    fn canonical_start(&self, index: usize) -> Option<Vec<f64>> {
        let mut coords = vec![Complex64::ZERO; self.n];
        if index == 0 {
            let scale = 1.0 / self.space.norm_f64(&vec![1.0; self.n]);
            for c in coords.iter_mut() {
                *c = Complex64::new(scale, 0.0);
            }
        } else if index <= self.n {
            coords[index - 1] = Complex64::new(1.0, 0.0);
        } else {
            return None;
        }
        let mut state = self.state_of(&coords);
        self.project(&mut state);
        self.tube_ok(&state).then_some(state)
    }

    fn sample_start(&self, rng: &mut ChaCha8Rng, restart: u64) -> Vec<f64> {
        if let Some(state) = usize::try_from(restart)
            .ok()
            .and_then(|i| self.canonical_start(i))
        {
            return state;
        }
        let mut state = vec![0.0; self.state_len()];
        for _ in 0..64 {
            if self.complex {
                for j in 0..self.n {
                    state[2 * j] = rng.random_range(0.0..=1.0);
                    state[2 * j + 1] = rng.random_range(0.0..std::f64::consts::TAU);
                }
            } else {
                for x in state.iter_mut() {
                    *x = rng.random_range(-1.0..=1.0);
                }
            }
            if let (Region::Slice(_), Some(anchor)) = (self.region, &self.anchor) {
                // random tangent wiggle around the anchor keeps starts spread
                // without leaving reach of the feasible blend
                let x: Vec<Complex64> = anchor
                    .iter()
                    .zip(self.coords(&state))
                    .map(|(a, r)| a + (r - a) * 0.5)
                    .collect();
                state = self.state_of(&x);
            }
            self.project(&mut state);
            if self.tube_ok(&state) {
                return state;
            }
        }
        // the origin is always clear of a tube with radius < 1
        let mut fallback = vec![0.0; self.state_len()];
        self.project(&mut fallback);
        fallback
    }

    fn run_restart<F>(&self, objective: &F, opts: &MaximizeOptions, restart: u64) -> RestartOutcome
    where
        F: Fn(&[Complex64]) -> f64 + Sync,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(restart + 1);

        let eval = |state: &[f64]| -> f64 {
            let mut coords = self.coords(state);
            if self.homogeneous {
                self.normalized(&mut coords);
            }
            let v = objective(&coords);
            if v.is_finite() {
                v
            } else {
                f64::NEG_INFINITY
            }
        };

        let mut state = self.sample_start(&mut rng, restart);
        let mut value = eval(&state);

        let d = self.state_len();
        let mut grad = vec![0.0; d];
        let mut iters = 0usize;

        // phase one: gradient ascent, backtracking the ladder step0·decay^k
        // along the finite-difference gradient
        'gradient: while iters < opts.iters {
            iters += 1;
            let mut norm2 = 0.0;
            for i in 0..d {
                let h = 1e-9 * (1.0 + state[i].abs());
                let keep = state[i];
                state[i] = keep + h;
                let up = eval(&state);
                state[i] = keep - h;
                let down = eval(&state);
                state[i] = keep;
                let g = (up - down) / (2.0 * h);
                let g = if g.is_finite() { g } else { 0.0 };
                grad[i] = g;
                norm2 += g * g;
            }
            if norm2 <= 1e-24 {
                break;
            }
            let mut step = opts.step0;
            for _ in 0..BACKTRACK_LIMIT {
                let mut cand: Vec<f64> = state
                    .iter()
                    .zip(&grad)
                    .map(|(x, g)| x + step * g)
                    .collect();
                self.project(&mut cand);
                if self.tube_ok(&cand) {
                    let v = eval(&cand);
                    if v > value {
                        state = cand;
                        value = v;
                        continue 'gradient;
                    }
                }
                step *= opts.decay;
            }
            break;
        }

        // phase two: compass search over coordinate and coordinate-exchange
        // directions. The radial ball projection can null the projected
        // gradient on a sphere ridge; single-coordinate moves recover from
        // that, and exchange moves e_i − e_j walk along a polyhedral ridge
        // at (nearly) constant norm. The first improving direction at the
        // current step wins and costs an iteration; a round where every
        // direction fails shrinks the step, like a backtracking trial.
        let mut step = opts.step0;
        let step_floor = opts.step0 * opts.decay.powi(COMPASS_LIMIT as i32);
        let mut directions: Vec<(usize, Option<usize>)> = Vec::with_capacity(d * d);
        for i in 0..d {
            directions.push((i, None));
        }
        for from in 0..d {
            for to in 0..d {
                if to != from {
                    directions.push((from, Some(to)));
                }
            }
        }
        while iters < opts.iters && step > step_floor {
            let mut moved = false;
            'directions: for &(i, exchange) in &directions {
                for sign in [1.0f64, -1.0] {
                    let mut cand = state.clone();
                    cand[i] += sign * step;
                    if let Some(j) = exchange {
                        cand[j] -= sign * step;
                    }
                    self.project(&mut cand);
                    if self.tube_ok(&cand) {
                        let v = eval(&cand);
                        if v > value {
                            state = cand;
                            value = v;
                            moved = true;
                            break 'directions;
                        }
                    }
                }
            }
            if moved {
                iters += 1;
            } else {
                step *= opts.decay;
            }
        }

        let mut argmax = self.coords(&state);
        if self.homogeneous {
            self.normalized(&mut argmax);
        }
        RestartOutcome { value, argmax }
    }
}

/// One exact Newton correction for the linear constraint `f(x) = 1`.
fn slice_correct(x: &mut [Complex64], f: &[Complex64]) {
    let fx: Complex64 = f.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
    let denom: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    if denom == 0.0 {
        return;
    }
    let residual = Complex64::new(1.0, 0.0) - fx;
    for (xi, fi) in x.iter_mut().zip(f) {
        *xi += fi.conj() * residual / denom;
    }
}

/// A deterministic feasible point of `{f(x) = 1} ∩ ball`, or the infeasible
/// slice error. Built on a maximal stable set where the dual norm of `f` is
/// attained: coordinates there can be phased against `f` and filled greedily
/// until the pairing reaches one, and a stable support keeps the norm at the
/// largest single coordinate.
fn slice_anchor(space: &Space, f: &[Complex64]) -> Result<Vec<Complex64>> {
    let moduli: Vec<f64> = f.iter().map(|z| z.norm()).collect();
    let dual = space.dual_norm_f64(&moduli);
    if dual < 1.0 - SLICE_RESIDUAL_TOL {
        return Err(Error::InfeasibleSlice(format!(
            "dual norm of the functional is {dual:.6} < 1"
        )));
    }
    let stable = space
        .max_stables()
        .iter()
        .max_by(|a, b| {
            let sa: f64 = a.iter().map(|j| moduli[j]).sum();
            let sb: f64 = b.iter().map(|j| moduli[j]).sum();
            sa.partial_cmp(&sb).unwrap()
        })
        .copied()
        .ok_or_else(|| Error::Internal("space has no stable sets".into()))?;

    let mut x = vec![Complex64::ZERO; f.len()];
    let mut remaining = 1.0f64;
    for j in stable.iter() {
        if moduli[j] <= 0.0 || remaining <= 0.0 {
            continue;
        }
        let u = (remaining / moduli[j]).min(1.0);
        x[j] = f[j].conj() / moduli[j] * u;
        remaining -= u * moduli[j];
    }
    slice_correct(&mut x, f);
    let m: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    if space.norm_f64(&m) > 1.0 + 1e-9 {
        return Err(Error::InfeasibleSlice(
            "could not place an anchor inside the ball".into(),
        ));
    }
    Ok(x)
}
