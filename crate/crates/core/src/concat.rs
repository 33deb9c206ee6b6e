//! Concatenation of an outer code over GF(q^{2n}) with rate-one inner codes.
//!
//! Each outer symbol `u` is read as a coset label `c ∈ GF(q)^{2n}` through a
//! fixed GF(q)-basis of GF(q^{2n}); block `i` of the output is `phi` of the
//! `i`-th inner code's representative for `c`.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{self, hamming_weight, CodeRecord, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{make_field, Elem, Field, Tower};
use crate::pauli::PauliSpace;
use crate::stab::{sample_code, CodeRecord as InnerRecord, StabilizerCode};

/// Image of the outer symbol `u` under a rate-one inner code, in GF(q²)^n.
pub fn encode_symbol(inner: &StabilizerCode, tower: &Tower, u: Elem) -> Result<Vec<Elem>> {
    let sp = inner.space();
    if inner.k() != sp.n() {
        return Err(Error::WrongInnerRate);
    }
    if tower.base() != sp.field() || tower.degree() != 2 * sp.n() {
        return Err(Error::FieldMismatch);
    }
    if !tower.ext().contains(u) {
        return Err(Error::InvalidElement(u));
    }
    sp.phi(&inner.coset_rep(tower.coords(u))?)
}

#[derive(Debug, Clone)]
pub struct ConcatenatedCode {
    space: PauliSpace,
    tower: Tower,
    outer: LinearCode,
    inners: Vec<StabilizerCode>,
    quantum_k: Option<usize>,
    seed: Option<u64>,
    weights: OnceLock<Vec<Vec<u16>>>,
}

impl ConcatenatedCode {
    pub fn new(outer: LinearCode, inners: Vec<StabilizerCode>) -> Result<Self> {
        let first = inners.first().ok_or_else(|| Error::BadParameters("no inner codes".into()))?;
        let space = first.space().clone();
        if inners.len() != outer.len() {
            return Err(Error::DimensionMismatch { expected: outer.len(), found: inners.len() });
        }
        for c in &inners {
            if c.space().field() != space.field() || c.n() != space.n() {
                return Err(Error::FieldMismatch);
            }
            if c.k() != c.n() {
                return Err(Error::WrongInnerRate);
            }
        }
        if outer.scalar_tower().is_some() {
            return Err(Error::FieldMismatch);
        }
        let ext = outer.field();
        if ext.characteristic() != space.field().characteristic()
            || ext.degree() != 2 * space.n() as u32 * space.field().degree()
        {
            return Err(Error::FieldMismatch);
        }
        let tower = Tower::new(space.field(), ext)?;
        Ok(ConcatenatedCode { space, tower, outer, inners, quantum_k: None, seed: None, weights: OnceLock::new() })
    }

    /// Records the seed used to draw this code.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    /// Inner length n.
    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// Outer length N.
    pub fn outer_len(&self) -> usize {
        self.outer.len()
    }

    /// Total length nN over GF(q²).
    pub fn len(&self) -> usize {
        self.n() * self.outer_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn outer(&self) -> &LinearCode {
        &self.outer
    }

    pub fn inners(&self) -> &[StabilizerCode] {
        &self.inners
    }

    pub fn space(&self) -> &PauliSpace {
        &self.space
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Dimension K of the quantum outer code, when known.
    pub fn quantum_k(&self) -> Option<usize> {
        self.quantum_k
    }

    /// True unless `N = q^n`.
    pub fn toy_mode(&self) -> bool {
        (self.q() as u128).checked_pow(self.n() as u32) != Some(self.outer_len() as u128)
    }

    /// Block map applied to any word of GF(q^{2n})^N.
    pub fn encode(&self, word: &[Elem]) -> Result<Vec<Elem>> {
        if word.len() != self.outer_len() {
            return Err(Error::DimensionMismatch { expected: self.outer_len(), found: word.len() });
        }
        let mut out = Vec::with_capacity(self.len());
        for (inner, &u) in self.inners.iter().zip(word) {
            out.extend(encode_symbol(inner, &self.tower, u)?);
        }
        Ok(out)
    }

    /// Outer encoding followed by [`ConcatenatedCode::encode`].
    pub fn encode_message(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        self.encode(&self.outer.encode(message)?)
    }

    fn weights(&self) -> &[Vec<u16>] {
        self.weights.get_or_init(|| {
            self.inners
                .iter()
                .map(|inner| {
                    self.tower
                        .ext()
                        .elements()
                        .map(|u| hamming_weight(&encode_symbol(inner, &self.tower, u).expect("validated")) as u16)
                        .collect()
                })
                .collect()
        })
    }

    /// Minimum weight of a nonzero word of the concatenated classical code.
    pub fn distance(&self) -> Result<usize> {
        concat_distance(self)
    }

    /// Generator matrix of the concatenated code over GF(q²), as a
    /// GF(q)-linear code: the images of `b · g_i` for the power basis `b`
    /// of GF(q^{2n}) and the outer generator rows `g_i`.
    pub fn expanded_generator(&self) -> Result<LinearCode> {
        let ext = self.tower.ext();
        let mut rows = Vec::with_capacity(self.outer.dimension() * self.tower.degree());
        for g in self.outer.generator() {
            for &b in self.tower.basis() {
                let scaled: Vec<Elem> = g.iter().map(|&x| ext.mul(b, x)).collect();
                rows.push(self.encode(&scaled)?);
            }
        }
        LinearCode::over_subfield(&self.space.phi_tower()?, self.len(), rows)
    }

    pub fn to_record(&self) -> ConcatRecord {
        ConcatRecord {
            q: self.q() as u64,
            n: self.n(),
            big_n: self.outer_len(),
            big_k: self.quantum_k,
            outer: self.outer.to_record(),
            inner: self.inners.iter().map(StabilizerCode::to_record).collect(),
            provenance: Provenance { seed: self.seed, toy_mode: self.toy_mode() },
        }
    }

    pub fn from_record(r: &ConcatRecord) -> Result<Self> {
        let outer = LinearCode::from_record(&r.outer)?;
        let inners = r.inner.iter().map(StabilizerCode::from_record).collect::<Result<Vec<_>>>()?;
        let mut cc = ConcatenatedCode::new(outer, inners)?;
        cc.quantum_k = r.big_k;
        cc.seed = r.provenance.seed;
        Ok(cc)
    }
}

/// Exhaustive minimum distance of the concatenated classical code.
pub fn concat_distance(cc: &ConcatenatedCode) -> Result<usize> {
    let weights = cc.weights();
    cc.outer.fold_codewords(
        || usize::MAX,
        |best, u| {
            if u.iter().all(|&s| s == 0) {
                return;
            }
            let w: usize = u.iter().zip(weights).map(|(&s, t)| t[s as usize] as usize).sum();
            *best = (*best).min(w);
        },
        usize::min,
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub toy_mode: bool,
}

/// JSON form: outer code, inner codes and provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConcatRecord {
    pub q: u64,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    #[serde(rename = "K")]
    pub big_k: Option<usize>,
    pub outer: CodeRecord,
    pub inner: Vec<InnerRecord>,
    pub provenance: Provenance,
}

impl Serialize for ConcatenatedCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConcatenatedCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ConcatenatedCode::from_record(&ConcatRecord::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Outer GRS parameters used by [`sample_concat`]: the field GF(q^{2n}) and
/// the normalizer dimension `(N + K) / 2`.
pub fn outer_parameters(q: u64, n: usize, big_n: usize, big_k: usize) -> Result<(Field, usize)> {
    if big_k > big_n {
        return Err(Error::BadParameters(format!("K = {big_k} exceeds N = {big_n}")));
    }
    if !(big_n - big_k).is_multiple_of(2) {
        return Err(Error::BadParameters(format!("N - K = {} is odd", big_n - big_k)));
    }
    if big_n == 0 || n == 0 {
        return Err(Error::BadParameters("N and n must be positive".into()));
    }
    let base = Field::with_order(q)?;
    let m = 2 * n as u32 * base.degree();
    if (base.characteristic() as u64).checked_pow(m).is_none_or(|o| o > crate::gf::MAX_ORDER) {
        return Err(Error::BadParameters(format!("GF({q}^{}) is too large", 2 * n)));
    }
    let ext = make_field(base.characteristic(), m)?;
    if big_n > ext.order() as usize {
        return Err(Error::BadParameters(format!("N = {big_n} exceeds the outer alphabet size {}", ext.order())));
    }
    Ok((ext, (big_n + big_k) / 2))
}

/// Draws a concatenated code: GRS outer normalizer code of dimension
/// `(N + K) / 2` at the first `N` field elements, and `N` independent
/// uniform symplectic bases as inner codes.
pub fn sample_concat<R: Rng + ?Sized>(
    q: u64,
    n: usize,
    big_n: usize,
    big_k: usize,
    rng: &mut R,
) -> Result<ConcatenatedCode> {
    let (ext, dim) = outer_parameters(q, n, big_n, big_k)?;
    let alphas: Vec<Elem> = ext.elements().take(big_n).collect();
    let outer = codes::grs(&ext, &alphas, &vec![1; big_n], dim)?.into_code();
    let space = PauliSpace::with_q(q, n)?;
    let inners = (0..big_n).map(|_| sample_code(&space, n, rng)).collect::<Result<Vec<_>>>()?;
    let mut cc = ConcatenatedCode::new(outer, inners)?;
    cc.quantum_k = Some(big_k);
    if cc.toy_mode() {
        log::warn!("toy mode: N = {big_n} differs from q^n for q = {q}, n = {n}");
    }
    Ok(cc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stab::Stabilizer;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn identity_inner(sp: &PauliSpace) -> StabilizerCode {
        let n = sp.n();
        let unit = |i: usize, x: bool| {
            let mut v = vec![0; 2 * n];
            v[if x { i } else { n + i }] = 1;
            sp.phi_g_inv(&v).unwrap()
        };
        StabilizerCode::new(
            Stabilizer::trivial(sp),
            (0..n).map(|i| unit(i, true)).collect(),
            (0..n).map(|i| unit(i, false)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn encode_symbol_is_bijective_and_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (q, n) in [(2u64, 1usize), (2, 2), (3, 1), (3, 2), (4, 1)] {
            let sp = PauliSpace::with_q(q, n).unwrap();
            let inner = sample_code(&sp, n, &mut rng).unwrap();
            let (ext, _) = outer_parameters(q, n, 1, 1).unwrap();
            let tower = Tower::new(sp.field(), &ext).unwrap();
            assert_eq!(encode_symbol(&inner, &tower, 0).unwrap(), vec![0; n]);
            let images: HashSet<_> = ext.elements().map(|u| encode_symbol(&inner, &tower, u).unwrap()).collect();
            assert_eq!(images.len(), ext.order() as usize);
            let gf2 = sp.phi_tower().unwrap();
            for u in ext.elements().take(20) {
                let eu = encode_symbol(&inner, &tower, u).unwrap();
                if u != 0 {
                    assert!(hamming_weight(&eu) >= 1);
                }
                for v in ext.elements().take(20) {
                    let ev = encode_symbol(&inner, &tower, v).unwrap();
                    let sum = encode_symbol(&inner, &tower, ext.add(u, v)).unwrap();
                    let add: Vec<Elem> = eu.iter().zip(&ev).map(|(&a, &b)| gf2.ext().add(a, b)).collect();
                    assert_eq!(sum, add);
                }
            }
        }
    }

    #[test]
    fn encode_symbol_rejects_wrong_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let sp = PauliSpace::with_q(2, 2).unwrap();
        let inner = sample_code(&sp, 1, &mut rng).unwrap();
        let (ext, _) = outer_parameters(2, 2, 1, 1).unwrap();
        let tower = Tower::new(sp.field(), &ext).unwrap();
        assert_eq!(encode_symbol(&inner, &tower, 1).unwrap_err(), Error::WrongInnerRate);
    }

    #[test]
    fn sample_concat_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cc = sample_concat(2, 2, 4, 2, &mut rng).unwrap();
        assert_eq!(cc.outer().dimension(), 3);
        assert_eq!(cc.outer().field().order(), 16);
        assert_eq!(cc.inners().len(), 4);
        assert_eq!(cc.outer().min_distance().unwrap(), 2);
        assert!(!cc.toy_mode());
        assert!(cc.distance().unwrap() >= 2);
        let full = sample_concat(2, 1, 3, 3, &mut rng).unwrap();
        assert_eq!(full.outer().min_distance().unwrap(), 1);
        assert!(full.toy_mode());
        assert!(matches!(sample_concat(2, 2, 4, 1, &mut rng), Err(Error::BadParameters(_))));
        assert!(matches!(sample_concat(2, 2, 4, 6, &mut rng), Err(Error::BadParameters(_))));
        assert!(matches!(sample_concat(2, 1, 5, 1, &mut rng), Err(Error::BadParameters(_))));
    }

    #[test]
    fn identity_inners_full_outer() {
        let sp = PauliSpace::with_q(2, 1).unwrap();
        let (ext, _) = outer_parameters(2, 1, 3, 3).unwrap();
        let outer = codes::grs(&ext, &[0, 1, 2], &[1; 3], 3).unwrap().into_code();
        let cc = ConcatenatedCode::new(outer, vec![identity_inner(&sp); 3]).unwrap();
        assert_eq!(concat_distance(&cc).unwrap(), 1);
    }

    #[test]
    fn distance_matches_expanded_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (q, n, big_n, big_k) in [(2u64, 1usize, 2usize, 0usize), (2, 1, 3, 1), (2, 2, 4, 2), (3, 1, 3, 1)] {
            for _ in 0..5 {
                let cc = sample_concat(q, n, big_n, big_k, &mut rng).unwrap();
                let expanded = cc.expanded_generator().unwrap();
                assert_eq!(expanded.size(), cc.outer().size());
                assert_eq!(concat_distance(&cc).unwrap(), expanded.min_distance().unwrap());
            }
        }
    }

    #[test]
    fn encode_injective_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cc = sample_concat(2, 2, 4, 2, &mut rng).unwrap();
        let words = cc.outer().codewords().unwrap();
        let images: HashSet<_> = words.iter().map(|u| cc.encode(u).unwrap()).collect();
        assert_eq!(images.len(), words.len());
        for u in &words {
            let blocks = u.iter().filter(|&&s| s != 0).count();
            assert!(hamming_weight(&cc.encode(u).unwrap()) >= blocks);
        }
        assert!(cc.encode(&[0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cc = sample_concat(2, 1, 3, 1, &mut rng).unwrap().with_seed(99);
        let v = serde_json::to_value(&cc).unwrap();
        assert_eq!(v["provenance"]["seed"], 99);
        assert_eq!(v["provenance"]["toy_mode"], true);
        let back: ConcatenatedCode = serde_json::from_value(v).unwrap();
        assert_eq!(concat_distance(&back).unwrap(), concat_distance(&cc).unwrap());
    }
}
