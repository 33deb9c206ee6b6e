//! Stabilizers, stabilizer codes with explicit logical bases, and the
//! constrained uniform samplers used to draw random codes.
//!
//! All constraint sets have the form `{σ : symp(σ, g_i) = b_i}` for an
//! independent tuple `g`. Such a set is an affine subspace of dimension
//! `2n − ℓ`; [`OmegaSet`] stores one particular solution plus a basis of
//! directions, which gives exact uniform sampling.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg;
use crate::pauli::{PauliSpace, PauliVec};

/// Limit on `q^{2n}` for exhaustive Pauli enumeration.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

fn rows(gens: &[PauliVec]) -> Vec<Vec<Elem>> {
    gens.iter().map(PauliVec::phi_g).collect()
}

fn check_all(space: &PauliSpace, gens: &[PauliVec]) -> Result<()> {
    gens.iter().try_for_each(|g| space.check(g))
}

/// True iff the `phi_g` images are linearly independent over GF(q).
pub fn is_independent(space: &PauliSpace, gens: &[PauliVec]) -> bool {
    linalg::is_independent(space.field(), &rows(gens), 2 * space.n())
}

/// True iff `sigma` lies in the GF(q)-span of `gens`.
pub fn in_span(space: &PauliSpace, gens: &[PauliVec], sigma: &PauliVec) -> bool {
    linalg::rref(space.field(), &rows(gens), 2 * space.n()).contains(space.field(), &sigma.phi_g())
}

/// All elements of the GF(q)-span of `gens` (the generated group).
pub fn span_elements(space: &PauliSpace, gens: &[PauliVec]) -> Vec<PauliVec> {
    let q = space.q();
    let total = (q as u64).pow(gens.len() as u32);
    (0..total)
        .map(|mut idx| {
            let coeffs: Vec<Elem> = (0..gens.len())
                .map(|_| {
                    let c = (idx % q as u64) as Elem;
                    idx /= q as u64;
                    c
                })
                .collect();
            space.combine(&coeffs, gens)
        })
        .collect()
}

/// The affine set `Ω_{g,b} = {σ : symp(σ, g_i) = b_i for all i}`.
#[derive(Debug, Clone)]
pub struct OmegaSet {
    space: PauliSpace,
    particular: PauliVec,
    directions: Vec<PauliVec>,
}

impl OmegaSet {
    pub fn new(space: &PauliSpace, gens: &[PauliVec], b: &[Elem]) -> Result<Self> {
        check_all(space, gens)?;
        if b.len() != gens.len() {
            return Err(Error::DimensionMismatch { expected: gens.len(), found: b.len() });
        }
        if let Some(&c) = b.iter().find(|&&c| !space.field().contains(c)) {
            return Err(Error::InvalidElement(c));
        }
        let f = space.field();
        let n = space.n();
        let a = rows(gens);
        if !linalg::is_independent(f, &a, 2 * n) {
            return Err(Error::NotIndependent);
        }
        // x·y_j = b_j, then σ = X^{x_{n+1..2n}} Z^{-x_{1..n}} turns the dot
        // product into the symplectic form
        let swap = |x: &[Elem]| -> PauliVec {
            PauliVec::new(x[n..].to_vec(), x[..n].iter().map(|&c| f.neg(c)).collect())
                .expect("equal halves")
        };
        let x = linalg::solve(f, &a, b, 2 * n).ok_or(Error::NotIndependent)?;
        let directions = linalg::nullspace(f, &a, 2 * n).iter().map(|v| swap(v)).collect();
        Ok(OmegaSet { space: space.clone(), particular: swap(&x), directions })
    }

    /// The solution with all free variables set to zero.
    pub fn particular(&self) -> &PauliVec {
        &self.particular
    }

    pub fn directions(&self) -> &[PauliVec] {
        &self.directions
    }

    /// Dimension `2n − ℓ` of the solution space.
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn len(&self) -> u128 {
        (self.space.q() as u128).pow(self.dimension() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PauliVec {
        let q = self.space.q();
        let coeffs: Vec<Elem> = (0..self.dimension()).map(|_| rng.random_range(0..q)).collect();
        let offset = self.space.combine(&coeffs, &self.directions);
        self.space.star_unchecked(&self.particular, &offset)
    }
}

/// Finds σ with `symp(σ, g_i) = b_i` for all `i`, deterministically.
pub fn solve_commutation(space: &PauliSpace, gens: &[PauliVec], b: &[Elem]) -> Result<PauliVec> {
    Ok(OmegaSet::new(space, gens, b)?.particular)
}

/// Brute-force listing of `Ω_{g,b}` by scanning all `q^{2n}` Paulis.
pub fn omega_enumerate(space: &PauliSpace, gens: &[PauliVec], b: &[Elem]) -> Result<Vec<PauliVec>> {
    if space.size() > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { what: "Pauli set", size: space.size(), limit: ENUMERATION_LIMIT });
    }
    check_all(space, gens)?;
    if b.len() != gens.len() {
        return Err(Error::DimensionMismatch { expected: gens.len(), found: b.len() });
    }
    if !is_independent(space, gens) {
        return Err(Error::NotIndependent);
    }
    Ok(space
        .all()
        .filter(|y| gens.iter().zip(b).all(|(g, &bi)| space.symp_unchecked(y, g) == bi))
        .collect())
}

/// Uniform sample from `Ω_{g,b}`.
pub fn omega_sample<R: Rng + ?Sized>(
    space: &PauliSpace,
    gens: &[PauliVec],
    b: &[Elem],
    rng: &mut R,
) -> Result<PauliVec> {
    Ok(OmegaSet::new(space, gens, b)?.sample(rng))
}

/// `ell` uniformly random linearly independent Paulis (not necessarily commuting).
pub fn sample_independent<R: Rng + ?Sized>(space: &PauliSpace, ell: usize, rng: &mut R) -> Result<Vec<PauliVec>> {
    if ell > 2 * space.n() {
        return Err(Error::InvalidDimension(format!("{ell} independent vectors in dimension {}", 2 * space.n())));
    }
    let mut out = Vec::with_capacity(ell);
    while out.len() < ell {
        let v = space.random(rng);
        if !in_span(space, &out, &v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// An abelian group of Paulis given by independent commuting generators.
#[derive(Debug, Clone)]
pub struct Stabilizer {
    space: PauliSpace,
    gens: Vec<PauliVec>,
}

impl Stabilizer {
    pub fn validate(space: &PauliSpace, gens: Vec<PauliVec>) -> Result<Self> {
        check_all(space, &gens)?;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if space.symp_unchecked(&gens[i], &gens[j]) != 0 {
                    return Err(Error::NotCommuting(i, j));
                }
            }
        }
        if !is_independent(space, &gens) {
            return Err(Error::NotIndependent);
        }
        Ok(Stabilizer { space: space.clone(), gens })
    }

    pub fn trivial(space: &PauliSpace) -> Self {
        Stabilizer { space: space.clone(), gens: Vec::new() }
    }

    pub fn space(&self) -> &PauliSpace {
        &self.space
    }

    pub fn gens(&self) -> &[PauliVec] {
        &self.gens
    }

    /// Number of generators ℓ; the group has `q^ℓ` elements.
    pub fn dimension(&self) -> usize {
        self.gens.len()
    }

    pub fn size(&self) -> u128 {
        (self.space.q() as u128).pow(self.gens.len() as u32)
    }

    pub fn contains(&self, sigma: &PauliVec) -> Result<bool> {
        self.space.check(sigma)?;
        Ok(in_span(&self.space, &self.gens, sigma))
    }

    pub fn elements(&self) -> Vec<PauliVec> {
        span_elements(&self.space, &self.gens)
    }

    pub fn normalizes(&self, sigma: &PauliVec) -> Result<bool> {
        in_normalizer(self, sigma)
    }
}

/// True iff σ commutes with every generator of `s`.
pub fn in_normalizer(s: &Stabilizer, sigma: &PauliVec) -> Result<bool> {
    s.space.check(sigma)?;
    Ok(s.gens.iter().all(|g| s.space.symp_unchecked(sigma, g) == 0))
}

/// Draws a uniformly random stabilizer with `ell` generators.
pub fn sample_stabilizer<R: Rng + ?Sized>(space: &PauliSpace, ell: usize, rng: &mut R) -> Result<Stabilizer> {
    sample_stabilizer_counted(space, ell, rng).map(|(s, _)| s)
}

/// As [`sample_stabilizer`], also returning how many in-span draws were rejected.
pub fn sample_stabilizer_counted<R: Rng + ?Sized>(
    space: &PauliSpace,
    ell: usize,
    rng: &mut R,
) -> Result<(Stabilizer, usize)> {
    if ell > space.n() {
        return Err(Error::InvalidDimension(format!("stabilizer with {ell} generators on {} qudits", space.n())));
    }
    let mut gens: Vec<PauliVec> = Vec::with_capacity(ell);
    let mut rejected = 0;
    while gens.len() < ell {
        let omega = OmegaSet::new(space, &gens, &vec![0; gens.len()])?;
        let g = loop {
            let g = omega.sample(rng);
            if !in_span(space, &gens, &g) {
                break g;
            }
            rejected += 1;
        };
        gens.push(g);
    }
    Ok((Stabilizer { space: space.clone(), gens }, rejected))
}

/// A stabilizer together with logical pairs `(X̄_i, Z̄_i)`.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    stabilizer: Stabilizer,
    logical_x: Vec<PauliVec>,
    logical_z: Vec<PauliVec>,
}

/// JSON form: `{"n", "k", "q", "stab_gens", "logical_x", "logical_z"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeRecord {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub stab_gens: Vec<PauliVec>,
    pub logical_x: Vec<PauliVec>,
    pub logical_z: Vec<PauliVec>,
}

impl StabilizerCode {
    pub fn new(stabilizer: Stabilizer, logical_x: Vec<PauliVec>, logical_z: Vec<PauliVec>) -> Result<Self> {
        let space = stabilizer.space.clone();
        let k = logical_x.len();
        if logical_z.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: logical_z.len() });
        }
        if stabilizer.dimension() + k != space.n() {
            return Err(Error::InvalidDimension(format!(
                "{} stabilizer generators and {k} logical pairs on {} qudits",
                stabilizer.dimension(),
                space.n()
            )));
        }
        check_all(&space, &logical_x)?;
        check_all(&space, &logical_z)?;
        for (i, l) in logical_x.iter().chain(&logical_z).enumerate() {
            if !in_normalizer(&stabilizer, l)? {
                return Err(Error::InvalidLogicals(format!("logical {i} does not commute with the stabilizer")));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let want = Elem::from(i == j);
                if space.symp_unchecked(&logical_x[i], &logical_z[j]) != want {
                    return Err(Error::InvalidLogicals(format!("symp(X{i}, Z{j}) != {want}")));
                }
                if space.symp_unchecked(&logical_x[i], &logical_x[j]) != 0
                    || space.symp_unchecked(&logical_z[i], &logical_z[j]) != 0
                {
                    return Err(Error::InvalidLogicals(format!("logicals {i} and {j} of one type do not commute")));
                }
            }
        }
        let code = StabilizerCode { stabilizer, logical_x, logical_z };
        if !is_independent(&space, &code.normalizer_basis()) {
            return Err(Error::NotIndependent);
        }
        Ok(code)
    }

    pub fn space(&self) -> &PauliSpace {
        &self.stabilizer.space
    }

    pub fn n(&self) -> usize {
        self.space().n()
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    pub fn stabilizer(&self) -> &Stabilizer {
        &self.stabilizer
    }

    pub fn logical_x(&self) -> &[PauliVec] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliVec] {
        &self.logical_z
    }

    /// Stabilizer generators followed by `X̄_1..X̄_k`, `Z̄_1..Z̄_k`; spans N(S).
    pub fn normalizer_basis(&self) -> Vec<PauliVec> {
        let mut v = self.stabilizer.gens.clone();
        v.extend(self.logical_x.iter().cloned());
        v.extend(self.logical_z.iter().cloned());
        v
    }

    /// The label `c = (x_1..x_k, z_1..z_k)` of the coset `S_c` containing σ.
    pub fn coset_label(&self, sigma: &PauliVec) -> Result<Vec<Elem>> {
        if !in_normalizer(&self.stabilizer, sigma)? {
            return Err(Error::NotInNormalizer);
        }
        let sp = self.space();
        let xs = self.logical_z.iter().map(|z| sp.symp_unchecked(sigma, z));
        let zs = self.logical_x.iter().map(|x| sp.symp_unchecked(x, sigma));
        Ok(xs.chain(zs).collect())
    }

    /// Canonical representative `⋆ X̄_i^{x_i} ⋆ Z̄_i^{z_i}` of `S_c`.
    pub fn coset_rep(&self, c: &[Elem]) -> Result<PauliVec> {
        let k = self.k();
        if c.len() != 2 * k {
            return Err(Error::DimensionMismatch { expected: 2 * k, found: c.len() });
        }
        if let Some(&bad) = c.iter().find(|&&e| !self.space().field().contains(e)) {
            return Err(Error::InvalidElement(bad));
        }
        let sp = self.space();
        let xs = sp.combine(&c[..k], &self.logical_x);
        let zs = sp.combine(&c[k..], &self.logical_z);
        Ok(sp.star_unchecked(&xs, &zs))
    }

    /// Whether σ ∈ S_c.
    pub fn in_coset(&self, sigma: &PauliVec, c: &[Elem]) -> Result<bool> {
        match self.coset_label(sigma) {
            Ok(label) => Ok(label == c),
            Err(Error::NotInNormalizer) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            n: self.n(),
            k: self.k(),
            q: self.space().q() as u64,
            stab_gens: self.stabilizer.gens.clone(),
            logical_x: self.logical_x.clone(),
            logical_z: self.logical_z.clone(),
        }
    }

    pub fn from_record(r: &CodeRecord) -> Result<Self> {
        let space = PauliSpace::with_q(r.q, r.n)?;
        if r.logical_x.len() != r.k {
            return Err(Error::DimensionMismatch { expected: r.k, found: r.logical_x.len() });
        }
        let s = Stabilizer::validate(&space, r.stab_gens.clone())?;
        StabilizerCode::new(s, r.logical_x.clone(), r.logical_z.clone())
    }
}

impl Serialize for StabilizerCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StabilizerCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CodeRecord::deserialize(d)?;
        StabilizerCode::from_record(&r).map_err(serde::de::Error::custom)
    }
}

/// Draws a uniformly random `[[n, k]]_q` stabilizer code: a uniform
/// stabilizer with `n − k` generators, then logical pairs sampled one
/// constraint system at a time (all `Z̄` first, then all `X̄`). For `k = n`
/// this is a uniform symplectic basis.
pub fn sample_code<R: Rng + ?Sized>(space: &PauliSpace, k: usize, rng: &mut R) -> Result<StabilizerCode> {
    let n = space.n();
    if k > n {
        return Err(Error::InvalidDimension(format!("k = {k} exceeds n = {n}")));
    }
    let stabilizer = sample_stabilizer(space, n - k, rng)?;
    let mut fixed = stabilizer.gens.clone();

    let mut logical_z = Vec::with_capacity(k);
    for _ in 0..k {
        let omega = OmegaSet::new(space, &fixed, &vec![0; fixed.len()])?;
        let z = loop {
            let z = omega.sample(rng);
            if !in_span(space, &fixed, &z) {
                break z;
            }
        };
        fixed.push(z.clone());
        logical_z.push(z);
    }

    let mut logical_x: Vec<PauliVec> = Vec::with_capacity(k);
    for i in 0..k {
        let mut b = vec![0; stabilizer.dimension()];
        b.extend((0..k).map(|j| Elem::from(i == j)));
        b.extend(std::iter::repeat_n(0, i));
        let omega = OmegaSet::new(space, &fixed, &b)?;
        let x = loop {
            let x = omega.sample(rng);
            if !in_span(space, &fixed, &x) {
                break x;
            }
        };
        fixed.push(x.clone());
        logical_x.push(x);
    }
    StabilizerCode::new(stabilizer, logical_x, logical_z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliVec {
        PauliVec::from_letters(s).unwrap()
    }

    fn binary(n: usize) -> PauliSpace {
        PauliSpace::with_q(2, n).unwrap()
    }

    #[test]
    fn validate_examples() {
        let sp = binary(2);
        let s = Stabilizer::validate(&sp, vec![p("XX"), p("ZZ")]).unwrap();
        assert_eq!(s.size(), 4);
        let sp1 = binary(1);
        assert_eq!(Stabilizer::validate(&sp1, vec![p("X"), p("Z")]).unwrap_err(), Error::NotCommuting(0, 1));
        assert_eq!(Stabilizer::validate(&sp1, vec![p("X"), p("X")]).unwrap_err(), Error::NotIndependent);
    }

    #[test]
    fn solve_commutation_examples() {
        let sp1 = binary(1);
        let s = solve_commutation(&sp1, &[p("Z")], &[1]).unwrap();
        // exhaustive oracle over the 4 single-qubit Paulis
        let sols: Vec<_> = sp1.all().filter(|y| sp1.symp(y, &p("Z")).unwrap() == 1).collect();
        assert_eq!(sols, vec![p("X"), p("Y")]);
        assert!(sols.contains(&s));
        assert_eq!(s, p("X"));

        let zero = solve_commutation(&sp1, &[p("Z")], &[0]).unwrap();
        assert!(zero.is_trivial());

        let sp2 = binary(2);
        let s = solve_commutation(&sp2, &[p("XI"), p("IX")], &[1, 0]).unwrap();
        let sols: Vec<_> = sp2
            .all()
            .filter(|y| sp2.symp(y, &p("XI")).unwrap() == 1 && sp2.symp(y, &p("IX")).unwrap() == 0)
            .collect();
        assert!(sols.contains(&p("ZI")));
        assert!(sols.contains(&s));
        assert_eq!(sp2.symp(&s, &p("XI")).unwrap(), 1);
    }

    #[test]
    fn solve_commutation_rejects_dependent() {
        let sp = binary(2);
        assert_eq!(solve_commutation(&sp, &[p("XI"), p("XI")], &[0, 1]).unwrap_err(), Error::NotIndependent);
    }

    #[test]
    fn omega_enumerate_examples() {
        let sp = binary(1);
        assert_eq!(omega_enumerate(&sp, &[p("X")], &[0]).unwrap(), vec![p("I"), p("X")]);
        assert_eq!(omega_enumerate(&sp, &[p("X")], &[1]).unwrap(), vec![p("Z"), p("Y")]);
        assert_eq!(omega_enumerate(&sp, &[], &[]).unwrap().len(), 4);
        let big = PauliSpace::with_q(2, 13).unwrap();
        assert!(matches!(omega_enumerate(&big, &[], &[]), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn omega_sample_full_rank_is_deterministic() {
        let sp = binary(1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let set = OmegaSet::new(&sp, &[p("X"), p("Z")], &[1, 0]).unwrap();
        assert_eq!(set.dimension(), 0);
        let first = set.sample(&mut rng);
        for _ in 0..20 {
            assert_eq!(set.sample(&mut rng), first);
        }
        assert_eq!(sp.symp(&first, &p("X")).unwrap(), 1);
        assert_eq!(sp.symp(&first, &p("Z")).unwrap(), 0);
    }

    #[test]
    fn omega_sample_satisfies_constraints() {
        let sp = PauliSpace::with_q(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let ell = rng.random_range(0..=6);
            let gens = sample_independent(&sp, ell, &mut rng).unwrap();
            let b: Vec<Elem> = (0..ell).map(|_| rng.random_range(0..3)).collect();
            let s = omega_sample(&sp, &gens, &b, &mut rng).unwrap();
            for (g, &bi) in gens.iter().zip(&b) {
                assert_eq!(sp.symp(&s, g).unwrap(), bi);
            }
        }
    }

    #[test]
    fn normalizer_examples() {
        let sp = binary(1);
        let s = Stabilizer::validate(&sp, vec![p("Z")]).unwrap();
        assert!(!in_normalizer(&s, &p("X")).unwrap());
        assert!(in_normalizer(&s, &p("Z")).unwrap());
        assert!(in_normalizer(&s, &p("I")).unwrap());
        let sp2 = binary(2);
        let s2 = Stabilizer::validate(&sp2, vec![p("XX"), p("ZZ")]).unwrap();
        for e in s2.elements() {
            assert!(in_normalizer(&s2, &e).unwrap());
        }
        assert!(in_normalizer(&s2, &p("X")).is_err());
    }

    #[test]
    fn sample_stabilizer_trivial_and_valid() {
        let sp = PauliSpace::with_q(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(sample_stabilizer(&sp, 0, &mut rng).unwrap().dimension(), 0);
        for ell in 0..=3 {
            let s = sample_stabilizer(&sp, ell, &mut rng).unwrap();
            Stabilizer::validate(&sp, s.gens().to_vec()).unwrap();
        }
        assert!(sample_stabilizer(&sp, 4, &mut rng).is_err());
    }

    #[test]
    fn rejection_rate_matches_span_fraction() {
        // at step i the draw lands in the span with probability q^i / q^{2n-i}
        let sp = binary(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let trials = 20_000;
        let mut rejected = 0;
        for _ in 0..trials {
            rejected += sample_stabilizer_counted(&sp, 2, &mut rng).unwrap().1;
        }
        // step 0: 1/16 of draws are the identity; step 1: 2/8
        let expect = (1.0 / 16.0) / (1.0 - 1.0 / 16.0) + (2.0 / 8.0) / (1.0 - 2.0 / 8.0);
        let rate = rejected as f64 / trials as f64;
        assert!((rate - expect).abs() < 0.02, "{rate} vs {expect}");
    }

    #[test]
    fn sample_code_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (q, n) in [(2, 1), (2, 3), (3, 2), (4, 2), (5, 2)] {
            let sp = PauliSpace::with_q(q, n).unwrap();
            for k in 0..=n {
                let c = sample_code(&sp, k, &mut rng).unwrap();
                assert_eq!(c.k(), k);
                assert_eq!(c.stabilizer().dimension(), n - k);
                StabilizerCode::new(c.stabilizer().clone(), c.logical_x().to_vec(), c.logical_z().to_vec()).unwrap();
            }
        }
        let sp = binary(1);
        let c = sample_code(&sp, 0, &mut rng).unwrap();
        assert_eq!(c.stabilizer().dimension(), 1);
        assert!(sample_code(&sp, 2, &mut rng).is_err());
    }

    #[test]
    fn coset_label_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let sp = binary(1);
        let c = sample_code(&sp, 1, &mut rng).unwrap();
        let x1 = c.logical_x()[0].clone();
        let z1 = c.logical_z()[0].clone();
        assert_eq!(c.coset_label(&x1).unwrap(), vec![1, 0]);
        assert_eq!(c.coset_label(&sp.star(&x1, &z1).unwrap()).unwrap(), vec![1, 1]);
        assert_eq!(c.coset_label(&sp.identity()).unwrap(), vec![0, 0]);

        let sp2 = binary(2);
        let c = sample_code(&sp2, 1, &mut rng).unwrap();
        let g = c.stabilizer().gens()[0].clone();
        assert_eq!(c.coset_label(&g).unwrap(), vec![0, 0]);
        let outside = sp2.all().find(|y| !in_normalizer(c.stabilizer(), y).unwrap()).unwrap();
        assert_eq!(c.coset_label(&outside).unwrap_err(), Error::NotInNormalizer);
    }

    #[test]
    fn coset_rep_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (q, n, k) in [(2, 3, 3), (2, 3, 2), (3, 2, 2), (3, 3, 1)] {
            let sp = PauliSpace::with_q(q, n).unwrap();
            let code = sample_code(&sp, k, &mut rng).unwrap();
            assert!(code.coset_rep(&vec![0; 2 * k]).unwrap().is_trivial());
            let labels = PauliSpace::with_q(q, k).unwrap();
            for c in labels.all() {
                let label = c.phi_g();
                let rep = code.coset_rep(&label).unwrap();
                assert_eq!(code.coset_label(&rep).unwrap(), label);
                // c = 0 iff rep in S
                assert_eq!(code.stabilizer().contains(&rep).unwrap(), c.is_trivial());
            }
            let mut e1 = vec![0; 2 * k];
            e1[0] = 1;
            assert_eq!(code.coset_rep(&e1).unwrap(), code.logical_x()[0]);
            assert!(code.coset_rep(&[1]).is_err());
        }
    }

    #[test]
    fn normalizer_size_matches_counting() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=2 {
            let sp = binary(n);
            for k in 0..=n {
                for _ in 0..10 {
                    let code = sample_code(&sp, k, &mut rng).unwrap();
                    let count = sp.all().filter(|y| in_normalizer(code.stabilizer(), y).unwrap()).count();
                    assert_eq!(count, 1 << (n + k));
                }
            }
        }
    }

    #[test]
    fn code_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let sp = PauliSpace::with_q(3, 2).unwrap();
        let code = sample_code(&sp, 1, &mut rng).unwrap();
        let json = serde_json::to_value(&code).unwrap();
        for key in ["n", "k", "q", "stab_gens", "logical_x", "logical_z"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        let back: StabilizerCode = serde_json::from_value(json.clone()).unwrap();
        assert_eq!(back.normalizer_basis(), code.normalizer_basis());
        let mut broken = json;
        broken["logical_z"] = broken["logical_x"].clone();
        assert!(serde_json::from_value::<StabilizerCode>(broken).is_err());
    }
}
