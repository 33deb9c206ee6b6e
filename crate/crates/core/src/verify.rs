//! Exhaustive and Monte Carlo checks of the counting lemmas, sampler
//! uniformity and the concatenated distance experiment.
//!
//! Exhaustive oracles scan all Paulis and filter by the symplectic form
//! directly; they never call the samplers. Monte Carlo work is split into
//! fixed chunks of [`STREAM_CHUNK`] trials, each with its own random stream
//! derived from `(seed, name, chunk index)`, so results do not depend on the
//! number of worker threads.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::bounds;
use crate::concat::{self, encode_symbol};
use crate::error::{Error, Result};
use crate::gf::{Elem, Tower};
use crate::pauli::{PauliSpace, PauliVec};
use crate::stab::{self, in_span, span_elements, Stabilizer, StabilizerCode};

/// Trials per random stream.
pub const STREAM_CHUNK: u64 = 1 << 12;
/// Limit on ordered tuples visited by exhaustive enumerations.
pub const TUPLE_LIMIT: u128 = 1 << 22;
/// Chi-square uniformity threshold.
pub const UNIFORMITY_P: f64 = 1e-3;
/// Monte Carlo agreement threshold in standard errors.
pub const SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Reported,
}

/// One line of verification output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub estimate: Option<f64>,
    /// Binomial standard error; Monte Carlo only.
    pub std_error: Option<f64>,
    /// Exact rational value; exhaustive only.
    pub exact: Option<String>,
    pub exact_value: Option<f64>,
    pub bound: Option<f64>,
    pub ratio: Option<f64>,
    pub verdict: Verdict,
    pub details: BTreeMap<String, Value>,
}

impl ExperimentResult {
    pub fn new(experiment: &str) -> Self {
        ExperimentResult {
            experiment: experiment.to_string(),
            params: BTreeMap::new(),
            seed: None,
            trials: None,
            estimate: None,
            std_error: None,
            exact: None,
            exact_value: None,
            bound: None,
            ratio: None,
            verdict: Verdict::Reported,
            details: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn detail(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), v.into());
        self
    }

    fn with_exact(mut self, r: &BigRational) -> Self {
        self.exact = Some(r.to_string());
        self.exact_value = r.to_f64();
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Deterministic random stream for `(seed, name, index)`.
pub fn stream(seed: u64, name: &str, index: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(b"stabforge-stream");
    h.update(seed.to_le_bytes());
    h.update((name.len() as u64).to_le_bytes());
    h.update(name.as_bytes());
    h.update(index.to_le_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// Runs `trials` Bernoulli trials across fixed streams and counts successes.
pub fn mc_count<F>(seed: u64, name: &str, trials: u64, f: F) -> Result<u64>
where
    F: Fn(&mut ChaCha8Rng) -> Result<bool> + Sync,
{
    let chunks = trials.div_ceil(STREAM_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, name, c);
            let len = STREAM_CHUNK.min(trials - c * STREAM_CHUNK);
            let mut hits = 0;
            for _ in 0..len {
                hits += f(&mut rng)? as u64;
            }
            Ok(hits)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

fn rational(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn pow_u128(q: u64, e: usize) -> u128 {
    (q as u128).pow(e as u32)
}

fn rational_pow(q: u64, e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(q)).pow(e.unsigned_abs() as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn ratio_f64(a: &BigRational, b: &BigRational) -> Option<f64> {
    if b.is_zero() {
        None
    } else {
        (a / b).to_f64()
    }
}

/// `X` on the first `w` qudits.
pub fn weight_class_rep(n: usize, w: usize) -> PauliVec {
    let x = (0..n).map(|i| Elem::from(i < w)).collect();
    PauliVec::new(x, vec![0; n]).expect("equal lengths")
}

fn space_for(q: u64, n: usize) -> Result<PauliSpace> {
    if n == 0 {
        return Err(Error::BadParameters("n must be positive".into()));
    }
    PauliSpace::with_q(q, n)
}

// ---------------------------------------------------------------------------
// exhaustive enumeration helpers

/// Depth-first enumeration of ordered tuples extending `list` by `steps`
/// Paulis, where the pick at step `s` must satisfy
/// `symp(t, list[j]) = want(s, j)` against every earlier entry `j` of the
/// running list and lie outside its span.
fn extend_all<W, F>(space: &PauliSpace, all: &[PauliVec], list: &mut Vec<PauliVec>, steps: usize, want: &W, out: &mut F)
where
    W: Fn(usize, usize) -> Elem,
    F: FnMut(&[PauliVec]),
{
    if steps == 0 {
        out(list);
        return;
    }
    let step = list.len();
    let candidates: Vec<PauliVec> = all
        .iter()
        .filter(|t| list.iter().enumerate().all(|(j, g)| space.symp_unchecked(t, g) == want(step, j)))
        .filter(|t| !in_span(space, list, t))
        .cloned()
        .collect();
    for t in candidates {
        list.push(t);
        extend_all(space, all, list, steps - 1, want, out);
        list.pop();
    }
}

fn stabilizer_key(space: &PauliSpace, gens: &[PauliVec]) -> Vec<u64> {
    let mut v: Vec<u64> = span_elements(space, gens).iter().map(|p| space.index(p)).collect();
    v.sort_unstable();
    v
}

fn coset_key(space: &PauliSpace, elements: &[PauliVec], rep: &PauliVec) -> u64 {
    elements.iter().map(|s| space.index(&space.star_unchecked(rep, s))).min().expect("nonempty group")
}

/// Canonical identity of a code: its stabilizer and the cosets of its logicals.
fn code_key(code: &StabilizerCode) -> (Vec<u64>, Vec<u64>) {
    let sp = code.space();
    let elems = code.stabilizer().elements();
    let logicals = code.logical_x().iter().chain(code.logical_z()).map(|l| coset_key(sp, &elems, l)).collect();
    (stabilizer_key(sp, code.stabilizer().gens()), logicals)
}

fn stabilizer_tuple_count(q: u64, n: usize, ell: usize) -> u128 {
    (0..ell).map(|i| pow_u128(q, 2 * n - i) - pow_u128(q, i)).product()
}

fn code_tuple_count(q: u64, n: usize, k: usize) -> u128 {
    let ell = n - k;
    let z: u128 = (0..k).map(|i| pow_u128(q, 2 * n - ell - i) - pow_u128(q, ell + i)).product();
    let x: u128 = (0..k).map(|i| pow_u128(q, n - i)).product();
    stabilizer_tuple_count(q, n, ell).saturating_mul(z).saturating_mul(x)
}

fn guard(count: u128) -> Result<()> {
    if count > TUPLE_LIMIT {
        return Err(Error::TooLarge { what: "exhaustive tuple enumeration", size: count, limit: TUPLE_LIMIT });
    }
    Ok(())
}

/// All distinct stabilizers with `ell` generators, each with one generating tuple.
pub fn enumerate_stabilizers(space: &PauliSpace, ell: usize) -> Result<Vec<Stabilizer>> {
    if ell > space.n() {
        return Err(Error::InvalidDimension(format!("{ell} > n = {}", space.n())));
    }
    guard(stabilizer_tuple_count(space.q() as u64, space.n(), ell))?;
    let all: Vec<PauliVec> = space.all().collect();
    let mut seen: BTreeMap<Vec<u64>, Vec<PauliVec>> = BTreeMap::new();
    extend_all(space, &all, &mut Vec::new(), ell, &|_, _| 0, &mut |t: &[PauliVec]| {
        seen.entry(stabilizer_key(space, t)).or_insert_with(|| t.to_vec());
    });
    seen.into_values().map(|g| Stabilizer::validate(space, g)).collect()
}

/// All distinct `[[n, k]]` codes (stabilizer plus logical cosets).
pub fn enumerate_codes(space: &PauliSpace, k: usize) -> Result<Vec<StabilizerCode>> {
    let n = space.n();
    if k > n {
        return Err(Error::InvalidDimension(format!("k = {k} > n = {n}")));
    }
    guard(code_tuple_count(space.q() as u64, n, k))?;
    let ell = n - k;
    let all: Vec<PauliVec> = space.all().collect();
    let mut codes = BTreeMap::new();
    for s in enumerate_stabilizers(space, ell)? {
        // list layout: stabilizer gens, Z̄_1..Z̄_k, X̄_1..X̄_k
        let want = |step: usize, j: usize| -> Elem {
            if step < ell + k || j < ell {
                0
            } else {
                let xi = step - ell - k;
                Elem::from(j >= ell && j < ell + k && j - ell == xi)
            }
        };
        let mut list = s.gens().to_vec();
        extend_all(space, &all, &mut list, 2 * k, &want, &mut |t: &[PauliVec]| {
            let z = t[ell..ell + k].to_vec();
            let x = t[ell + k..].to_vec();
            let code = StabilizerCode::new(s.clone(), x, z).expect("enumerated tuples are codes");
            codes.entry(code_key(&code)).or_insert(code);
        });
    }
    Ok(codes.into_values().collect())
}

// ---------------------------------------------------------------------------
// constraint-set cosets

/// For random independent tuples, checks `|Ω_{A,b}| = q^{2n−ℓ}` for every
/// `b` and that the sets partition the Pauli space.
pub fn lemma2_check(q: u64, n: usize, tuples_per_ell: usize, seed: u64) -> Result<ExperimentResult> {
    let space = space_for(q, n)?;
    if space.size() > stab::ENUMERATION_LIMIT {
        return Err(Error::TooLarge { what: "Pauli set", size: space.size(), limit: stab::ENUMERATION_LIMIT });
    }
    let name = "lemma2";
    let per_ell: Vec<(usize, u64, u64)> = (1..=2 * n)
        .into_par_iter()
        .map(|ell| {
            let mut rng = stream(seed, name, ell as u64);
            let mut sets = 0u64;
            let mut failures = 0u64;
            for _ in 0..tuples_per_ell {
                let gens = stab::sample_independent(&space, ell, &mut rng)?;
                let mut owner = vec![false; space.size() as usize];
                let mut total = 0u128;
                let mut ok = true;
                let count = pow_u128(q, ell);
                for mut idx in 0..count {
                    let b: Vec<Elem> = (0..ell)
                        .map(|_| {
                            let d = (idx % q as u128) as Elem;
                            idx /= q as u128;
                            d
                        })
                        .collect();
                    let set = stab::omega_enumerate(&space, &gens, &b)?;
                    sets += 1;
                    ok &= set.len() as u128 == pow_u128(q, 2 * n - ell);
                    total += set.len() as u128;
                    for y in &set {
                        let i = space.index(y) as usize;
                        ok &= !owner[i];
                        owner[i] = true;
                    }
                }
                ok &= total == space.size() && owner.iter().all(|&o| o);
                failures += u64::from(!ok);
            }
            Ok((ell, sets, failures))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: u64 = per_ell.iter().map(|t| t.2).sum();
    let sets: u64 = per_ell.iter().map(|t| t.1).sum();
    let mut r = ExperimentResult::new(name)
        .param("q", q)
        .param("n", n)
        .param("tuples_per_ell", tuples_per_ell)
        .detail("sets_checked", sets)
        .detail("failing_tuples", failures)
        .detail(
            "per_ell",
            per_ell.iter().map(|&(l, s, f)| json!({"ell": l, "sets": s, "failing_tuples": f})).collect::<Vec<_>>(),
        );
    r.seed = Some(seed);
    r.trials = Some((tuples_per_ell * 2 * n) as u64);
    r.verdict = if failures == 0 { Verdict::Holds } else { Verdict::Violated };
    Ok(r)
}

// ---------------------------------------------------------------------------
// normalizer membership

/// Exact `Pr[σ ∈ N(S)]` over uniformly random stabilizers with `ell`
/// generators, by full enumeration, against the bound `q^{−ℓ}` and the
/// product-formula ratio `B/A`.
pub fn exact_normalizer_prob(q: u64, n: usize, ell: usize, sigma: &PauliVec) -> Result<ExperimentResult> {
    let space = space_for(q, n)?;
    space.check(sigma)?;
    if sigma.is_trivial() {
        return Err(Error::BadParameters("sigma must be nontrivial".into()));
    }
    if ell > n {
        return Err(Error::InvalidDimension(format!("{ell} > n = {n}")));
    }
    guard(stabilizer_tuple_count(q, n, ell))?;
    let all: Vec<PauliVec> = space.all().collect();

    let mut per_stab: BTreeMap<Vec<u64>, (u64, bool)> = BTreeMap::new();
    let mut tuples = 0u128;
    let mut tuples_in_n = 0u128;
    extend_all(&space, &all, &mut Vec::new(), ell, &|_, _| 0, &mut |t: &[PauliVec]| {
        let in_n = t.iter().all(|g| space.symp_unchecked(sigma, g) == 0);
        tuples += 1;
        tuples_in_n += in_n as u128;
        per_stab.entry(stabilizer_key(&space, t)).or_insert((0, in_n)).0 += 1;
    });
    let stabilizers = per_stab.len() as u128;
    let in_n = per_stab.values().filter(|v| v.1).count() as u128;
    let multiplicities: Vec<u64> = per_stab.values().map(|v| v.0).collect();
    let uniform_multiplicity = multiplicities.windows(2).all(|w| w[0] == w[1]);
    let exact = rational(in_n, stabilizers);
    let bound = rational_pow(q, -(ell as i64));

    let a_tuples = stabilizer_tuple_count(q, n, ell);
    let b_tuples: u128 = (0..ell).map(|i| pow_u128(q, 2 * n - i - 1) - pow_u128(q, i)).product();
    let factorial: u128 = (1..=ell as u128).product();
    let product_ratio = rational(b_tuples, a_tuples);
    let matches_product = exact == product_ratio;

    let mut r = ExperimentResult::new("lemma3")
        .param("q", q)
        .param("n", n)
        .param("ell", ell)
        .param("sigma", sigma.to_string())
        .param("sigma_weight", sigma.weight())
        .with_exact(&exact)
        .detail("stabilizers", stabilizers.to_string())
        .detail("stabilizers_with_sigma_in_normalizer", in_n.to_string())
        .detail("ordered_tuples", tuples.to_string())
        .detail("ordered_tuples_with_sigma_in_normalizer", tuples_in_n.to_string())
        .detail("tuples_per_stabilizer_uniform", uniform_multiplicity)
        .detail("product_a_tuples", a_tuples.to_string())
        .detail("product_b_tuples", b_tuples.to_string())
        .detail("product_a_over_factorial", rational(a_tuples, factorial).to_string())
        .detail("product_b_over_factorial", rational(b_tuples, factorial).to_string())
        .detail("product_ratio_b_over_a", product_ratio.to_string())
        .detail("exact_equals_product_ratio", matches_product)
        .detail("tuple_count_matches_a", tuples == a_tuples)
        .detail("bound_exact", bound.to_string());
    r.bound = bound.to_f64();
    r.ratio = ratio_f64(&exact, &bound);
    r.verdict = if exact <= bound { Verdict::Holds } else { Verdict::Violated };
    Ok(r)
}

// ---------------------------------------------------------------------------
// logical coset membership

/// `q^{−(n+k)} · q^{2n} q^{2k} / ((q^{2n}−1)(q^{2k}−1))`.
pub fn coset_envelope(q: u64, n: usize, k: usize) -> BigRational {
    let q2n = pow_u128(q, 2 * n);
    let q2k = pow_u128(q, 2 * k);
    rational_pow(q, -((n + k) as i64)) * rational(q2n * q2k, (q2n - 1) * (q2k - 1))
}

/// Exact `Pr[σ ∈ S_c]` for every label `c`, from one enumeration of all codes.
pub fn exact_coset_table(q: u64, n: usize, k: usize, sigma: &PauliVec) -> Result<(u64, BTreeMap<Vec<Elem>, u64>)> {
    let space = space_for(q, n)?;
    space.check(sigma)?;
    let codes = enumerate_codes(&space, k)?;
    let mut table: BTreeMap<Vec<Elem>, u64> = BTreeMap::new();
    for code in &codes {
        if let Ok(c) = code.coset_label(sigma) {
            *table.entry(c).or_default() += 1;
        }
    }
    Ok((codes.len() as u64, table))
}

/// Exact `Pr[σ ∈ S_c]` over uniformly random `[[n, k]]` codes. The verdict
/// is `reported` when the derived envelope holds and `violated` otherwise.
pub fn exact_coset_prob(q: u64, n: usize, k: usize, sigma: &PauliVec, c: &[Elem]) -> Result<ExperimentResult> {
    if sigma.is_trivial() {
        return Err(Error::BadParameters("sigma must be nontrivial".into()));
    }
    if c.len() != 2 * k {
        return Err(Error::DimensionMismatch { expected: 2 * k, found: c.len() });
    }
    if c.iter().all(|&x| x == 0) {
        return Err(Error::BadParameters("label c must be nonzero".into()));
    }
    let (codes, table) = exact_coset_table(q, n, k, sigma)?;
    let hits = table.get(c).copied().unwrap_or(0);
    let exact = rational(hits as u128, codes as u128);
    let bound = rational_pow(q, -((n + k) as i64));
    let envelope = coset_envelope(q, n, k);
    let nonzero: Vec<u64> =
        table.iter().filter(|(label, _)| label.iter().any(|&x| x != 0)).map(|(_, &v)| v).collect();
    let all_labels = pow_u128(q, 2 * k) - 1;
    let symmetric = nonzero.len() as u128 == all_labels && nonzero.windows(2).all(|w| w[0] == w[1]);

    let a: u128 = pow_u128(q, k * (k + 1) / 2) * (0..k).map(|i| pow_u128(q, 2 * n - i) - pow_u128(q, i)).product::<u128>();
    let b: u128 =
        pow_u128(q, k * (k - 1) / 2) * (0..k).map(|i| pow_u128(q, 2 * n - i - 1) - pow_u128(q, i)).product::<u128>();

    let mut r = ExperimentResult::new("lemma4")
        .param("q", q)
        .param("n", n)
        .param("k", k)
        .param("sigma", sigma.to_string())
        .param("sigma_weight", sigma.weight())
        .param("c", c.to_vec())
        .with_exact(&exact)
        .detail("codes", codes)
        .detail("codes_with_sigma_in_coset", hits)
        .detail("bound_exact", bound.to_string())
        .detail("envelope", envelope.to_string())
        .detail("envelope_holds", exact <= envelope)
        .detail("bound_holds", exact <= bound)
        .detail("uniform_over_nonzero_labels", symmetric)
        .detail("product_ratio_b_over_a", rational(b, a).to_string());
    r.bound = bound.to_f64();
    r.ratio = ratio_f64(&exact, &bound);
    r.verdict = if exact <= envelope { Verdict::Reported } else { Verdict::Violated };
    Ok(r)
}

// ---------------------------------------------------------------------------
// Monte Carlo

#[derive(Debug, Clone, PartialEq)]
pub enum McKind {
    /// `Pr[σ ∈ N(S)]` for random stabilizers with `ell` generators.
    Normalizer { q: u64, n: usize, ell: usize, sigma: PauliVec },
    /// `Pr[σ ∈ S_c]` for random `[[n, k]]` codes.
    Coset { q: u64, n: usize, k: usize, sigma: PauliVec, c: Vec<Elem> },
    /// `Pr[ũ = y]` for a fixed outer symbol `u` and a random rate-one inner code.
    SymbolCollision { q: u64, n: usize, u: Elem, y: Vec<Elem> },
}

impl McKind {
    pub fn name(&self) -> &'static str {
        match self {
            McKind::Normalizer { .. } => "mc-normalizer",
            McKind::Coset { .. } => "mc-coset",
            McKind::SymbolCollision { .. } => "mc-symbol-collision",
        }
    }

    /// Default symbol-collision instance: `u = 1` and `y = phi(X ⊗ I ⊗ ...)`.
    pub fn default_collision(q: u64, n: usize) -> Result<Self> {
        let space = space_for(q, n)?;
        let y = space.phi(&weight_class_rep(n, 1))?;
        Ok(McKind::SymbolCollision { q, n, u: 1, y })
    }
}

fn binomial_se(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

pub fn mc_prob(kind: &McKind, trials: u64, seed: u64) -> Result<ExperimentResult> {
    if trials < 1000 {
        return Err(Error::BadParameters(format!("trials = {trials} < 1000")));
    }
    let name = kind.name();
    let mut r = ExperimentResult::new(name);
    let (hits, exact, bound): (u64, Option<BigRational>, BigRational) = match kind {
        McKind::Normalizer { q, n, ell, sigma } => {
            let space = space_for(*q, *n)?;
            space.check(sigma)?;
            if sigma.is_trivial() {
                return Err(Error::BadParameters("sigma must be nontrivial".into()));
            }
            r = r.param("q", *q).param("n", *n).param("ell", *ell).param("sigma", sigma.to_string());
            let hits = mc_count(seed, name, trials, |rng| {
                let s = stab::sample_stabilizer(&space, *ell, rng)?;
                stab::in_normalizer(&s, sigma)
            })?;
            // closed form for nontrivial σ, cross-checked against enumeration in tests
            let exact = rational(pow_u128(*q, 2 * n - ell) - 1, pow_u128(*q, 2 * n) - 1);
            (hits, Some(exact), rational_pow(*q, -(*ell as i64)))
        }
        McKind::Coset { q, n, k, sigma, c } => {
            let space = space_for(*q, *n)?;
            space.check(sigma)?;
            if c.len() != 2 * k || c.iter().all(|&x| x == 0) {
                return Err(Error::BadParameters("label c must be nonzero of length 2k".into()));
            }
            r = r.param("q", *q).param("n", *n).param("k", *k).param("sigma", sigma.to_string()).param("c", c.clone());
            let hits = mc_count(seed, name, trials, |rng| stab::sample_code(&space, *k, rng)?.in_coset(sigma, c))?;
            let exact = match exact_coset_table(*q, *n, *k, sigma) {
                Ok((codes, table)) => Some(rational(table.get(c).copied().unwrap_or(0) as u128, codes as u128)),
                Err(Error::TooLarge { .. }) => None,
                Err(e) => return Err(e),
            };
            (hits, exact, rational_pow(*q, -((n + k) as i64)))
        }
        McKind::SymbolCollision { q, n, u, y } => {
            let space = space_for(*q, *n)?;
            let (ext, _) = concat::outer_parameters(*q, *n, 1, 1)?;
            let tower = Tower::new(space.field(), &ext)?;
            if *u == 0 || !ext.contains(*u) {
                return Err(Error::BadParameters(format!("u = {u} must be a nonzero element of GF({})", ext.order())));
            }
            let image_field = space.phi_tower()?.ext().clone();
            if y.len() != *n || y.iter().all(|&v| v == 0) || !y.iter().all(|&v| image_field.contains(v)) {
                return Err(Error::BadParameters("y must be a nonzero vector in GF(q^2)^n".into()));
            }
            r = r.param("q", *q).param("n", *n).param("u", *u).param("y", y.clone()).param("w", 1);
            let hits = mc_count(seed, name, trials, |rng| {
                let inner = stab::sample_code(&space, *n, rng)?;
                Ok(encode_symbol(&inner, &tower, *u)? == *y)
            })?;
            (hits, Some(rational(1, pow_u128(*q, 2 * n) - 1)), rational_pow(*q, -2 * *n as i64))
        }
    };
    let p = hits as f64 / trials as f64;
    let se = binomial_se(p, trials);
    let bound_f = bound.to_f64().expect("finite");
    r.seed = Some(seed);
    r.trials = Some(trials);
    r.estimate = Some(p);
    r.std_error = Some(se);
    r.bound = Some(bound_f);
    r.ratio = Some(p / bound_f);
    r = r.detail("hits", hits).detail("bound_exact", bound.to_string());
    if let Some(e) = &exact {
        let ev = e.to_f64().expect("finite");
        // σ of the reference value itself, so a zero-hit run is not trivially accepted
        let se_exact = binomial_se(ev, trials).max(se);
        r = r
            .detail("reference", e.to_string())
            .detail("reference_value", ev)
            .detail("within_3se_of_reference", (p - ev).abs() <= SIGMAS * se_exact)
            .detail("reference_over_bound", ev / bound_f);
    }
    r.verdict = match kind {
        McKind::Normalizer { .. } => {
            if p <= bound_f + SIGMAS * se {
                Verdict::Holds
            } else {
                Verdict::Violated
            }
        }
        _ => Verdict::Reported,
    };
    Ok(r)
}

// ---------------------------------------------------------------------------
// sampler uniformity

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Stabilizer,
    Code,
}

/// Chi-square goodness of fit of the sampler against the uniform
/// distribution on the enumerated target set.
pub fn sampler_uniformity(kind: SamplerKind, q: u64, n: usize, dim: usize, trials: u64, seed: u64) -> Result<ExperimentResult> {
    let space = space_for(q, n)?;
    let name = match kind {
        SamplerKind::Stabilizer => "uniformity-stabilizer",
        SamplerKind::Code => "uniformity-code",
    };
    type Key = (Vec<u64>, Vec<u64>);
    let cells: Vec<Key> = match kind {
        SamplerKind::Stabilizer => enumerate_stabilizers(&space, dim)?
            .iter()
            .map(|s| (stabilizer_key(&space, s.gens()), Vec::new()))
            .collect(),
        SamplerKind::Code => enumerate_codes(&space, dim)?.iter().map(code_key).collect(),
    };
    let index: HashMap<Key, usize> = cells.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let chunks = trials.div_ceil(STREAM_CHUNK);
    let (counts, outside) = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<(Vec<u64>, u64)> {
            let mut rng = stream(seed, name, c);
            let mut counts = vec![0u64; cells.len()];
            let mut outside = 0u64;
            for _ in 0..STREAM_CHUNK.min(trials - c * STREAM_CHUNK) {
                let key = match kind {
                    SamplerKind::Stabilizer => {
                        let s = stab::sample_stabilizer(&space, dim, &mut rng)?;
                        (stabilizer_key(&space, s.gens()), Vec::new())
                    }
                    SamplerKind::Code => code_key(&stab::sample_code(&space, dim, &mut rng)?),
                };
                match index.get(&key) {
                    Some(&i) => counts[i] += 1,
                    None => outside += 1,
                }
            }
            Ok((counts, outside))
        })
        .try_reduce(
            || (vec![0u64; cells.len()], 0),
            |mut a, b| {
                a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
                Ok((a.0, a.1 + b.1))
            },
        )?;
    let expected = trials as f64 / cells.len() as f64;
    let chi2: f64 = counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let df = cells.len() as f64 - 1.0;
    let p_value = if df == 0.0 {
        1.0
    } else {
        ChiSquared::new(df).map_err(|e| Error::DomainError(e.to_string()))?.sf(chi2)
    };
    let mut r = ExperimentResult::new(name)
        .param("kind", serde_json::to_value(kind).expect("enum"))
        .param("q", q)
        .param("n", n)
        .param(if kind == SamplerKind::Stabilizer { "ell" } else { "k" }, dim)
        .detail("cells", cells.len())
        .detail("chi2", chi2)
        .detail("df", df)
        .detail("p_value", p_value)
        .detail("outside_target_set", outside)
        .detail("min_count", *counts.iter().min().expect("nonempty"))
        .detail("max_count", *counts.iter().max().expect("nonempty"));
    r.seed = Some(seed);
    r.trials = Some(trials);
    r.estimate = Some(p_value);
    r.bound = Some(UNIFORMITY_P);
    r.verdict = if p_value > UNIFORMITY_P && outside == 0 { Verdict::Holds } else { Verdict::Violated };
    Ok(r)
}

// ---------------------------------------------------------------------------
// distance experiment

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceReport {
    pub results: Vec<ExperimentResult>,
    /// Distance → number of sampled codes.
    pub histogram: BTreeMap<usize, u64>,
}

/// Limit on outer codewords for the exhaustive injectivity check.
pub const INJECTIVITY_LIMIT: u128 = 1 << 16;

/// Samples concatenated codes, computes each exact classical distance, and
/// compares with the outer distance, the QGVB and the union-bound tails.
pub fn distance_experiment(q: u64, n: usize, big_n: usize, big_k: usize, samples: u64, seed: u64) -> Result<DistanceReport> {
    let name = "distance-experiment";
    concat::outer_parameters(q, n, big_n, big_k)?;
    let per_sample: Vec<(usize, bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, name, i);
            let cc = concat::sample_concat(q, n, big_n, big_k, &mut rng)?;
            let d = concat::concat_distance(&cc)?;
            let checked = cc.outer().size() <= INJECTIVITY_LIMIT;
            let injective = if checked {
                let words = cc.outer().codewords()?;
                let mut images = std::collections::HashSet::with_capacity(words.len());
                words.iter().try_fold(true, |ok, w| Ok::<_, Error>(images.insert(cc.encode(w)?) && ok))?
            } else {
                true
            };
            Ok((d, injective, checked))
        })
        .collect::<Result<Vec<_>>>()?;

    let total_len = (n * big_n) as f64;
    let d_outer = (big_n - big_k) / 2 + 1;
    let r = big_k as f64 / big_n as f64;
    let qgvb = bounds::qgvb(q, r)?;
    let thm2 = if n >= 2 && r < 1.0 { Some(bounds::theorem2_bounds(q, n as u32, r)?) } else { None };

    let mut histogram: BTreeMap<usize, u64> = BTreeMap::new();
    for &(d, _, _) in &per_sample {
        *histogram.entry(d).or_default() += 1;
    }
    let all_above_outer = per_sample.iter().all(|&(d, _, _)| d >= d_outer);
    let injective = per_sample.iter().all(|&(_, inj, _)| inj);
    let injectivity_checked = per_sample.iter().all(|&(_, _, c)| c);
    let relative: Vec<f64> = per_sample.iter().map(|&(d, _, _)| d as f64 / total_len).collect();
    let fraction_meeting = thm2.map(|t| {
        relative.iter().filter(|&&x| x >= t.relative_distance).count() as f64 / samples.max(1) as f64
    });
    let mean = relative.iter().sum::<f64>() / samples.max(1) as f64;
    let fraction_at_qgvb = relative.iter().filter(|&&x| x >= qgvb).count() as f64 / samples.max(1) as f64;

    // union bound on Pr[d ≤ h] at the QGVB target h = ⌊nN·qgvb⌋
    let h = (total_len * qgvb).floor() as u64;
    let (terms, union_total) = bounds::union_bound(q, n as u32, big_n as u64, d_outer as u64, h)?;
    let empirical_tail = per_sample.iter().filter(|&&(d, _, _)| d as u64 <= h).count() as f64 / samples.max(1) as f64;

    let mut summary = ExperimentResult::new(name)
        .param("q", q)
        .param("n", n)
        .param("N", big_n)
        .param("K", big_k)
        .param("R", r)
        .detail("toy_mode", (q as u128).checked_pow(n as u32) != Some(big_n as u128))
        .detail("outer_distance", d_outer)
        .detail("all_distances_at_least_outer", all_above_outer)
        .detail("encode_injective", injective)
        .detail("injectivity_checked_exhaustively", injectivity_checked)
        .detail(
            "histogram",
            histogram.iter().map(|(d, c)| json!({"d": d, "count": c})).collect::<Vec<_>>(),
        )
        .detail("mean_relative_distance", mean)
        .detail("qgvb", qgvb)
        .detail("fraction_at_least_qgvb", fraction_at_qgvb)
        .detail("union_bound_h", h)
        .detail("union_bound_total", union_total)
        .detail("empirical_pr_d_at_most_h", empirical_tail);
    if let Some(t) = thm2 {
        summary = summary
            .detail("thm2_relative_distance", t.relative_distance)
            .detail("thm2_success_probability", t.success_probability)
            .detail("thm2_vacuous", t.vacuous)
            .detail("fraction_meeting_thm2", fraction_meeting.expect("bound present"));
    }
    summary.seed = Some(seed);
    summary.trials = Some(samples);
    summary.estimate = Some(mean);
    summary.bound = Some(qgvb);
    summary.ratio = Some(mean / qgvb);
    summary.verdict = if all_above_outer && injective { Verdict::Holds } else { Verdict::Violated };

    let mut results = vec![summary];
    for t in terms {
        let mut tail = ExperimentResult::new("lemma6-tail")
            .param("q", q)
            .param("n", n)
            .param("N", big_n)
            .param("K", big_k)
            .param("w", t.w)
            .param("h", h)
            .detail("log2_count_bound", t.log2_count)
            .detail("log2_tail_bound", t.log2_tail)
            .detail("log2_term", t.log2_term);
        tail.seed = Some(seed);
        tail.bound = Some(t.log2_tail.exp2());
        results.push(tail);
    }
    Ok(DistanceReport { results, histogram })
}

/// `true` if any result is `violated`.
pub fn any_violated(results: &[ExperimentResult]) -> bool {
    results.iter().any(|r| r.verdict == Verdict::Violated)
}

/// Summary CSV with one row per result.
pub fn summary_csv(results: &[ExperimentResult]) -> String {
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let mut s = String::from("experiment,params,seed,trials,estimate,std_error,exact,bound,ratio,verdict\n");
    for r in results {
        let params = serde_json::to_string(&r.params).expect("json").replace('"', "'");
        s.push_str(&format!(
            "{},\"{}\",{},{},{},{},{},{},{},{}\n",
            r.experiment,
            params,
            r.seed.map(|v| v.to_string()).unwrap_or_default(),
            r.trials.map(|v| v.to_string()).unwrap_or_default(),
            opt(r.estimate),
            opt(r.std_error),
            r.exact.clone().unwrap_or_default(),
            opt(r.bound),
            opt(r.ratio),
            serde_json::to_value(r.verdict).expect("enum").as_str().expect("string"),
        ));
    }
    s
}
