//! q-ary entropy, its inverse, and the distance and probability bounds for
//! random concatenated stabilizer codes.
//!
//! Everything is evaluated in `f64`. Tolerances used by checks live in [`TOL`].

use serde::Serialize;

use crate::error::{Error, Result};

/// Numerical tolerances for the bound computations and their checks.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    /// Target `|H(x) − y|` for [`entropy_inv`].
    pub entropy_inv: f64,
    pub bisection_iterations: u32,
    /// Acceptable `|H(H⁻¹(y)) − y|` in round-trip checks.
    pub round_trip: f64,
    /// Slack allowed in the convexity inequality.
    pub lemma7: f64,
    /// Allowed gap between the numeric minimum and the endpoint value.
    pub rudra: f64,
    pub rudra_refine_iterations: u32,
    /// Agreement required with independently computed reference values.
    pub reference: f64,
}

pub const TOL: Tolerances = Tolerances {
    entropy_inv: 1e-12,
    bisection_iterations: 100,
    round_trip: 1e-10,
    lemma7: 1e-12,
    rudra: 1e-9,
    rudra_refine_iterations: 200,
    reference: 1e-6,
};

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::DomainError(format!("alphabet size {q} < 2")));
    }
    Ok(())
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

/// `x log_Q(Q−1) − x log_Q x − (1−x) log_Q(1−x)`, with `0 log 0 = 0`.
pub fn entropy(q: u64, x: f64) -> Result<f64> {
    check_q(q)?;
    check_unit("x", x)?;
    Ok(entropy_raw(q as f64, x))
}

fn entropy_raw(q: f64, x: f64) -> f64 {
    let xlogx = |t: f64| if t <= 0.0 { 0.0 } else { t * t.ln() };
    (x * (q - 1.0).ln() - xlogx(x) - xlogx(1.0 - x)) / q.ln()
}

/// Inverse of [`entropy`] on `[0, 1 − 1/Q]`, by bisection.
pub fn entropy_inv(q: u64, y: f64) -> Result<f64> {
    check_q(q)?;
    check_unit("y", y)?;
    Ok(entropy_inv_raw(q as f64, y))
}

fn entropy_inv_raw(q: f64, y: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0 - 1.0 / q);
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return hi;
    }
    for _ in 0..TOL.bisection_iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entropy_raw(q, mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (elo, ehi) = (y - entropy_raw(q, lo), entropy_raw(q, hi) - y);
    if elo <= ehi {
        lo
    } else {
        hi
    }
}

fn log_base(b: f64, x: f64) -> f64 {
    x.ln() / b.ln()
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Lemma7 {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates `H⁻¹(y−ε) ≤ H⁻¹(y) − ε / log_Q[(Q−1)(2/H⁻¹(y−ε) − 1)]`.
pub fn lemma7_check(q: u64, y: f64, eps: f64) -> Result<Lemma7> {
    check_q(q)?;
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::DomainError(format!("y = {y} outside (0, 1)")));
    }
    if !(eps > 0.0 && eps < y) {
        return Err(Error::DomainError(format!("eps = {eps} outside (0, {y})")));
    }
    let qf = q as f64;
    let lhs = entropy_inv_raw(qf, y - eps);
    let rhs = entropy_inv_raw(qf, y) - eps / log_base(qf, (qf - 1.0) * (2.0 / lhs - 1.0));
    Ok(Lemma7 { lhs, rhs, holds: lhs <= rhs + TOL.lemma7 })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RudraMin {
    pub theta: f64,
    pub value: f64,
    /// Objective at `θ = y`.
    pub endpoint: f64,
    /// `|value − endpoint| ≤ TOL.rudra`.
    pub identity_holds: bool,
}

/// `H⁻¹(1−θ) / (1−θ)`, extended by its limit 0 at `θ = 1`.
pub fn rudra_objective(q: u64, theta: f64) -> Result<f64> {
    check_q(q)?;
    check_unit("theta", theta)?;
    Ok(rudra_raw(q as f64, theta))
}

fn rudra_raw(q: f64, theta: f64) -> f64 {
    if theta >= 1.0 {
        0.0
    } else {
        entropy_inv_raw(q, 1.0 - theta) / (1.0 - theta)
    }
}

/// Numerically minimizes [`rudra_objective`] over `θ ∈ [0, y]`: grid search
/// followed by ternary refinement around the best grid cell.
pub fn rudra_min(q: u64, y: f64, grid_points: usize) -> Result<RudraMin> {
    check_q(q)?;
    check_unit("y", y)?;
    if grid_points < 100 {
        return Err(Error::DomainError(format!("grid_points = {grid_points} < 100")));
    }
    let qf = q as f64;
    let g = |t: f64| rudra_raw(qf, t);
    let step = y / grid_points as f64;
    let (best_i, _) = (0..=grid_points)
        .map(|i| (i, g(i as f64 * step)))
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    let mut lo = best_i.saturating_sub(1) as f64 * step;
    let mut hi = ((best_i + 1).min(grid_points) as f64 * step).min(y);
    for _ in 0..TOL.rudra_refine_iterations {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) <= g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mut theta = 0.5 * (lo + hi);
    let mut value = g(theta);
    for cand in [best_i as f64 * step, y] {
        if g(cand) < value {
            theta = cand;
            value = g(cand);
        }
    }
    let endpoint = g(y);
    Ok(RudraMin { theta, value, endpoint, identity_holds: (value - endpoint).abs() <= TOL.rudra })
}

/// `log_{q²}[(q²−1)(2/H⁻¹_{q²}(1/2) − 1)]`.
fn f_denominator(q: u64) -> Result<f64> {
    check_q(q)?;
    let q2 = (q * q) as f64;
    Ok(log_base(q2, (q2 - 1.0) * (2.0 / entropy_inv_raw(q2, 0.5) - 1.0)))
}

/// `f(q) = 1 / log_{q²}[(q²−1)(2/H⁻¹_{q²}(1/2) − 1)]`.
pub fn f_of_q(q: u64) -> Result<f64> {
    Ok(1.0 / f_denominator(q)?)
}

/// `f̄(q) = f(q) · log_q 2`.
pub fn fbar_of_q(q: u64) -> Result<f64> {
    Ok(f_of_q(q)? * log_base(q as f64, 2.0))
}

/// Quantum Gilbert–Varshamov relative distance `H⁻¹_{q²}((1−R)/2)`.
pub fn qgvb(q: u64, r: f64) -> Result<f64> {
    check_q(q)?;
    check_unit("R", r)?;
    entropy_inv(q * q, (1.0 - r) / 2.0)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Theorem2Bounds {
    /// `H⁻¹_{q²}((1−R)/2) − 4 f̄(q) / (n(1−R))`.
    pub relative_distance: f64,
    /// `1 − q^{n − (1−R) q^n f̄(q)}`.
    pub success_probability: f64,
    /// `log_q` of the failure probability, `n − (1−R) q^n f̄(q)`.
    pub failure_exponent: f64,
    /// The distance bound is not positive.
    pub vacuous: bool,
    /// The probability bound is not positive.
    pub probability_vacuous: bool,
}

pub fn theorem2_bounds(q: u64, n: u32, r: f64) -> Result<Theorem2Bounds> {
    check_q(q)?;
    if n < 2 {
        return Err(Error::DomainError(format!("n = {n} < 2")));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::DomainError(format!("R = {r} outside [0, 1)")));
    }
    let fbar = fbar_of_q(q)?;
    let relative_distance = qgvb(q, r)? - 4.0 * fbar / (n as f64 * (1.0 - r));
    let qn = (q as f64).powf(n as f64);
    let failure_exponent = n as f64 - (1.0 - r) * qn * fbar;
    let success_probability = 1.0 - (q as f64).powf(failure_exponent);
    Ok(Theorem2Bounds {
        relative_distance,
        success_probability,
        failure_exponent,
        vacuous: relative_distance <= 0.0,
        probability_vacuous: success_probability <= 0.0,
    })
}

/// Bound `(q²)^{nw·H_{q²}(h/(nw)) − nw}` on `Pr[wt(ũ) ≤ h]` for an outer
/// word of weight `w`. Returns 1 when `h/(nw) ≥ 1 − 1/q²`, where the
/// entropy form stops being monotone and the trivial bound is better.
pub fn lemma6_tail(q: u64, n: u32, w: u64, h: u64) -> Result<f64> {
    Ok(lemma6_log_tail(q, n, w, h)?.exp2())
}

/// `log₂` of [`lemma6_tail`].
pub fn lemma6_log_tail(q: u64, n: u32, w: u64, h: u64) -> Result<f64> {
    check_q(q)?;
    if w == 0 || n == 0 {
        return Err(Error::DomainError("w and n must be positive".into()));
    }
    let q2 = (q * q) as f64;
    let nw = n as f64 * w as f64;
    let x = h as f64 / nw;
    if x >= 1.0 - 1.0 / q2 {
        return Ok(0.0);
    }
    Ok((nw * entropy_raw(q2, x) - nw) * q2.log2())
}

/// One term of the union bound over outer weights.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct UnionTerm {
    pub w: u64,
    /// `log₂(binom(N,w) · (q^{2n})^{w−D+1})`.
    pub log2_count: f64,
    pub log2_tail: f64,
    pub log2_term: f64,
}

/// Union bound on `Pr[d ≤ h]` for a random concatenation with outer MDS
/// code of length `N` and distance `D`: the per-`w` terms and the total.
pub fn union_bound(q: u64, n: u32, big_n: u64, d: u64, h: u64) -> Result<(Vec<UnionTerm>, f64)> {
    check_q(q)?;
    if d == 0 || d > big_n {
        return Err(Error::DomainError(format!("D = {d} outside [1, {big_n}]")));
    }
    let log2_q2n = 2.0 * n as f64 * (q as f64).log2();
    let mut terms = Vec::new();
    for w in d..=big_n {
        let log2_count = log2_binomial(big_n, w) + (w - d + 1) as f64 * log2_q2n;
        let log2_tail = lemma6_log_tail(q, n, w, h)?;
        terms.push(UnionTerm { w, log2_count, log2_tail, log2_term: log2_count + log2_tail });
    }
    let max = terms.iter().map(|t| t.log2_term).fold(f64::NEG_INFINITY, f64::max);
    let total = max.exp2() * terms.iter().map(|t| (t.log2_term - max).exp2()).sum::<f64>();
    Ok((terms, total))
}

fn log2_binomial(n: u64, k: u64) -> f64 {
    (0..k.min(n - k)).map(|i| ((n - i) as f64 / (i + 1) as f64).log2()).sum()
}

/// Parameters of the random concatenated construction at outer rate `R`
/// with `N = q^n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundParams {
    pub q: u64,
    pub n: u32,
    pub r: f64,
    /// `N = q^n`, as a float since it overflows quickly.
    pub big_n: f64,
    /// Rate of the outer normalizer code, `(1+R)/2`.
    pub r_n: f64,
    /// Outer distance `N(1−R)/2 + 1`.
    pub d: f64,
    pub f: f64,
    pub fbar: f64,
    /// Whether `NR − q` is even, when `NR` is an integer.
    pub parity_ok: Option<bool>,
}

/// Per-weight quantities for outer weight `w`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeightParams {
    pub w: f64,
    /// `N log_q 2 / (n w)`.
    pub eps: f64,
    /// `1 − D/w + 1/w`.
    pub theta: f64,
    /// `ε f(q)`.
    pub delta: f64,
    /// `nN (H⁻¹_{q²}((1−R)/2) − 2ε f(q))`.
    pub h: f64,
}

impl BoundParams {
    pub fn new(q: u64, n: u32, r: f64) -> Result<Self> {
        check_q(q)?;
        check_unit("R", r)?;
        let big_n = (q as f64).powf(n as f64);
        let nr = big_n * r;
        let parity_ok = (big_n < 2f64.powi(53) && nr.fract() == 0.0).then(|| ((nr as i128) - q as i128) % 2 == 0);
        Ok(BoundParams {
            q,
            n,
            r,
            big_n,
            r_n: (1.0 + r) / 2.0,
            d: big_n * (1.0 - r) / 2.0 + 1.0,
            f: f_of_q(q)?,
            fbar: fbar_of_q(q)?,
            parity_ok,
        })
    }

    pub fn at_weight(&self, w: f64) -> Result<WeightParams> {
        if !(w >= self.d && w <= self.big_n) {
            return Err(Error::DomainError(format!("w = {w} outside [D, N]")));
        }
        let eps = self.big_n * log_base(self.q as f64, 2.0) / (self.n as f64 * w);
        let delta = eps * self.f;
        let h = self.n as f64 * self.big_n * (qgvb(self.q, self.r)? - 2.0 * eps * self.f);
        Ok(WeightParams { w, eps, theta: 1.0 - self.d / w + 1.0 / w, delta, h })
    }
}
