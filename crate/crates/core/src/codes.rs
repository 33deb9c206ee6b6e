//! Classical linear codes, generalized Reed–Solomon codes, exhaustive
//! distance computations and the Pauli → GF(q²) code dictionary.
//!
//! A [`LinearCode`] may be linear over a subfield of its alphabet: images of
//! Pauli groups under `phi` are only GF(q)-linear inside GF(q²)^n. The
//! generator rows are then a GF(q)-basis and the code has `q^K` words.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldDescriptor, Tower};
use crate::linalg::{self, Echelon};
use crate::pauli::{PauliSpace, PauliVec};
use crate::stab::{Stabilizer, StabilizerCode};

/// Limit on the number of codewords enumerated by exhaustive routines.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 26;

pub fn hamming_weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}

#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    scalars: Option<Tower>,
    len: usize,
    gen: Vec<Vec<Elem>>,
    echelon: OnceLock<Echelon>,
}

impl LinearCode {
    /// A code spanned over the full alphabet field.
    pub fn new(field: &Field, len: usize, gen: Vec<Vec<Elem>>) -> Result<Self> {
        Self::build(field.clone(), None, len, gen)
    }

    /// A code spanned over the subfield `tower.base()` of the alphabet `tower.ext()`.
    pub fn over_subfield(tower: &Tower, len: usize, gen: Vec<Vec<Elem>>) -> Result<Self> {
        Self::build(tower.ext().clone(), Some(tower.clone()), len, gen)
    }

    fn build(field: Field, scalars: Option<Tower>, len: usize, gen: Vec<Vec<Elem>>) -> Result<Self> {
        for row in &gen {
            if row.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: row.len() });
            }
            if let Some(&bad) = row.iter().find(|&&c| !field.contains(c)) {
                return Err(Error::InvalidElement(bad));
            }
        }
        let code = LinearCode { field, scalars, len, gen, echelon: OnceLock::new() };
        if code.echelon().rank() != code.gen.len() {
            return Err(Error::NotIndependent);
        }
        Ok(code)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The field the code is linear over.
    pub fn scalar_field(&self) -> &Field {
        self.scalars.as_ref().map_or(&self.field, Tower::base)
    }

    pub fn scalar_tower(&self) -> Option<&Tower> {
        self.scalars.as_ref()
    }

    /// Block length N.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Dimension K over the scalar field.
    pub fn dimension(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.gen
    }

    /// Number of codewords `|scalars|^K`, saturating.
    pub fn size(&self) -> u128 {
        (self.scalar_field().order() as u128).saturating_pow(self.gen.len() as u32)
    }

    fn expand(&self, v: &[Elem]) -> Vec<Elem> {
        match &self.scalars {
            None => v.to_vec(),
            Some(t) => v.iter().flat_map(|&c| t.coords(c).iter().copied()).collect(),
        }
    }

    fn echelon(&self) -> &Echelon {
        self.echelon.get_or_init(|| {
            let rows: Vec<_> = self.gen.iter().map(|r| self.expand(r)).collect();
            let width = self.len * self.scalars.as_ref().map_or(1, Tower::degree);
            linalg::rref(self.scalar_field(), &rows, width)
        })
    }

    /// Scalar field elements in alphabet encoding.
    fn scalar_values(&self) -> Vec<Elem> {
        match &self.scalars {
            None => self.field.elements().collect(),
            Some(t) => t.embedded_base().to_vec(),
        }
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.len
            && word.iter().all(|&c| self.field.contains(c))
            && self.echelon().contains(self.scalar_field(), &self.expand(word))
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.gen.len() {
            return Err(Error::DimensionMismatch { expected: self.gen.len(), found: message.len() });
        }
        let sf = self.scalar_field();
        if let Some(&bad) = message.iter().find(|&&c| !sf.contains(c)) {
            return Err(Error::InvalidElement(bad));
        }
        let values = self.scalar_values();
        let mut out = vec![0; self.len];
        for (&m, row) in message.iter().zip(&self.gen) {
            linalg::axpy(&self.field, &mut out, values[m as usize], row);
        }
        Ok(out)
    }

    fn guard(&self) -> Result<()> {
        let size = self.size();
        if size > EXHAUSTIVE_LIMIT {
            return Err(Error::TooLarge { what: "codeword enumeration", size, limit: EXHAUSTIVE_LIMIT });
        }
        Ok(())
    }

    /// Parallel fold over every codeword; `init`, `step` and `merge` must
    /// form an order-independent reduction.
    pub fn fold_codewords<T, I, S, M>(&self, init: I, step: S, merge: M) -> Result<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        S: Fn(&mut T, &[Elem]) + Sync,
        M: Fn(T, T) -> T + Sync + Send,
    {
        self.guard()?;
        let values = self.scalar_values();
        if self.gen.is_empty() {
            let mut acc = init();
            step(&mut acc, &vec![0; self.len]);
            return Ok(acc);
        }
        let result = values
            .par_iter()
            .map(|&c| {
                let mut bufs = vec![vec![0; self.len]; self.gen.len()];
                linalg::axpy(&self.field, &mut bufs[0], c, &self.gen[0]);
                let mut acc = init();
                self.walk(1, &mut bufs, &values, &mut |w| step(&mut acc, w));
                acc
            })
            .reduce(&init, &merge);
        Ok(result)
    }

    // bufs[level - 1] holds the partial sum of rows 0..level
    fn walk<F: FnMut(&[Elem])>(&self, level: usize, bufs: &mut [Vec<Elem>], values: &[Elem], f: &mut F) {
        if level == self.gen.len() {
            f(&bufs[level - 1]);
            return;
        }
        for &c in values {
            let (done, rest) = bufs.split_at_mut(level);
            rest[0].copy_from_slice(&done[level - 1]);
            linalg::axpy(&self.field, &mut rest[0], c, &self.gen[level]);
            self.walk(level + 1, bufs, values, f);
        }
    }

    /// All codewords in message-enumeration order.
    pub fn codewords(&self) -> Result<Vec<Vec<Elem>>> {
        self.guard()?;
        let values = self.scalar_values();
        let mut out = Vec::with_capacity(self.size() as usize);
        if self.gen.is_empty() {
            out.push(vec![0; self.len]);
            return Ok(out);
        }
        for &c in &values {
            let mut bufs = vec![vec![0; self.len]; self.gen.len()];
            linalg::axpy(&self.field, &mut bufs[0], c, &self.gen[0]);
            self.walk(1, &mut bufs, &values, &mut |w| out.push(w.to_vec()));
        }
        Ok(out)
    }

    /// Minimum weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if self.gen.is_empty() {
            return Err(Error::BadDimension("the zero code has no nonzero codewords".into()));
        }
        self.fold_codewords(
            || usize::MAX,
            |best, w| {
                let wt = hamming_weight(w);
                if wt > 0 && wt < *best {
                    *best = wt;
                }
            },
            usize::min,
        )
    }

    /// `A_0..A_N` where `A_w` counts codewords of weight `w`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let n = self.len;
        self.fold_codewords(
            || vec![0u64; n + 1],
            |acc, w| acc[hamming_weight(w)] += 1,
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            field: self.field.descriptor(),
            subfield: self.scalars.as_ref().map(|t| t.base().descriptor()),
            n: self.len,
            k: self.gen.len(),
            gen: self.gen.clone(),
            alphas: None,
            vs: None,
        }
    }

    pub fn from_record(r: &CodeRecord) -> Result<Self> {
        let field = Field::from_descriptor(&r.field)?;
        if r.gen.len() != r.k {
            return Err(Error::DimensionMismatch { expected: r.k, found: r.gen.len() });
        }
        match &r.subfield {
            None => LinearCode::new(&field, r.n, r.gen.clone()),
            Some(d) => {
                let tower = Tower::new(&Field::from_descriptor(d)?, &field)?;
                LinearCode::over_subfield(&tower, r.n, r.gen.clone())
            }
        }
    }
}

/// Weight distribution as `w,count` CSV lines with a header.
pub fn weight_distribution_csv(dist: &[u64]) -> String {
    let mut s = String::from("w,count\n");
    for (w, c) in dist.iter().enumerate() {
        let _ = writeln!(s, "{w},{c}");
    }
    s
}

/// JSON form of a code: `{"field", "N", "K", "gen"}` plus GRS parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeRecord {
    pub field: FieldDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield: Option<FieldDescriptor>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub gen: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vs: Option<Vec<Elem>>,
}

impl Serialize for LinearCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LinearCode::from_record(&CodeRecord::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A generalized Reed–Solomon code with its evaluation data.
#[derive(Debug, Clone)]
pub struct GrsCode {
    code: LinearCode,
    alphas: Vec<Elem>,
    vs: Vec<Elem>,
}

impl GrsCode {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn into_code(self) -> LinearCode {
        self.code
    }

    pub fn alphas(&self) -> &[Elem] {
        &self.alphas
    }

    pub fn vs(&self) -> &[Elem] {
        &self.vs
    }

    /// `N − K + 1`, which the code attains.
    pub fn designed_distance(&self) -> usize {
        self.code.len() - self.code.dimension() + 1
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord { alphas: Some(self.alphas.clone()), vs: Some(self.vs.clone()), ..self.code.to_record() }
    }
}

impl Serialize for GrsCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

/// `G[i][j] = v_j · α_j^i` for `i < K`.
pub fn grs(field: &Field, alphas: &[Elem], vs: &[Elem], k: usize) -> Result<GrsCode> {
    let n = alphas.len();
    if vs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: vs.len() });
    }
    if n as u64 > field.order() as u64 {
        return Err(Error::BadDimension(format!("length {n} exceeds field order {}", field.order())));
    }
    if k > n {
        return Err(Error::BadDimension(format!("K = {k} exceeds N = {n}")));
    }
    if let Some(&bad) = alphas.iter().chain(vs).find(|&&c| !field.contains(c)) {
        return Err(Error::InvalidElement(bad));
    }
    for j in 0..n {
        if alphas[..j].contains(&alphas[j]) {
            return Err(Error::DuplicateEvaluationPoint(j));
        }
        if vs[j] == 0 {
            return Err(Error::ZeroMultiplier(j));
        }
    }
    let gen = (0..k)
        .map(|i| (0..n).map(|j| field.mul(vs[j], field.pow(alphas[j], i as u64))).collect())
        .collect();
    Ok(GrsCode { code: LinearCode::new(field, n, gen)?, alphas: alphas.to_vec(), vs: vs.to_vec() })
}

/// `binom(N, w) · Q^{w − D + 1}`, the MDS weight-spectrum bound.
pub fn mds_weight_bound(n: usize, w: usize, d: usize, q: u64) -> Result<BigUint> {
    if w < d || w > n {
        return Err(Error::WeightOutOfRange { w, d, n });
    }
    Ok(binomial(n, w) * BigUint::from(q).pow((w - d + 1) as u32))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// The GF(q)-linear code `phi(⟨gens⟩) ⊂ GF(q²)^n`.
pub fn pauli_code(space: &PauliSpace, gens: &[PauliVec]) -> Result<LinearCode> {
    let tower = space.phi_tower()?;
    let rows = gens.iter().map(|g| space.phi(g)).collect::<Result<Vec<_>>>()?;
    match LinearCode::over_subfield(&tower, space.n(), rows) {
        Err(Error::NotIndependent) => Err(Error::NotAGroup),
        other => other,
    }
}

/// `C_S = phi(S)`.
pub fn stabilizer_code(s: &Stabilizer) -> Result<LinearCode> {
    pauli_code(s.space(), s.gens())
}

/// `C_N = phi(N(S))`.
pub fn normalizer_code(c: &StabilizerCode) -> Result<LinearCode> {
    pauli_code(c.space(), &c.normalizer_basis())
}

/// Minimum weight over `C_N \ C_S`, and whether that exceeds the minimum
/// distance of `C_N` (a degenerate code).
pub fn quantum_distance(cs: &LinearCode, cn: &LinearCode) -> Result<(usize, bool)> {
    if cs.field() != cn.field() || cs.scalar_field() != cn.scalar_field() || cs.len() != cn.len() {
        return Err(Error::FieldMismatch);
    }
    if !cs.generator().iter().all(|r| cn.contains(r)) {
        return Err(Error::NotASubcode);
    }
    if cs.dimension() == cn.dimension() {
        return Err(Error::EmptyDifference);
    }
    let (d, dn) = cn.fold_codewords(
        || (usize::MAX, usize::MAX),
        |(d, dn), w| {
            let wt = hamming_weight(w);
            if wt == 0 {
                return;
            }
            *dn = (*dn).min(wt);
            if wt < *d && !cs.contains(w) {
                *d = wt;
            }
        },
        |a, b| (a.0.min(b.0), a.1.min(b.1)),
    )?;
    Ok((d, d > dn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::stab::sample_code;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn grs_examples() {
        let f = gf(5);
        let c = grs(&f, &[0, 1, 2, 3], &[1; 4], 2).unwrap();
        assert_eq!(c.code().min_distance().unwrap(), 3);
        assert_eq!(c.code().weight_distribution().unwrap(), vec![1, 0, 0, 16, 8]);
        let full = grs(&f, &[0, 1, 2, 3], &[1; 4], 4).unwrap();
        assert_eq!(full.code().min_distance().unwrap(), 1);
        let rep = grs(&f, &[0, 1, 2, 3], &[1; 4], 1).unwrap();
        assert_eq!(rep.code().min_distance().unwrap(), 4);
    }

    #[test]
    fn grs_errors() {
        let f = gf(5);
        assert_eq!(grs(&f, &[0, 1, 1], &[1; 3], 1).unwrap_err(), Error::DuplicateEvaluationPoint(2));
        assert_eq!(grs(&f, &[0, 1, 2], &[1, 0, 1], 1).unwrap_err(), Error::ZeroMultiplier(1));
        assert!(matches!(grs(&f, &[0, 1, 2], &[1; 3], 4), Err(Error::BadDimension(_))));
        assert!(matches!(grs(&f, &[0, 1, 2, 3, 4, 0], &[1; 6], 1), Err(Error::BadDimension(_))));
    }

    #[test]
    fn grs_is_mds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [4u64, 5, 9, 16] {
            let f = gf(q);
            for _ in 0..20 {
                let n = rng.random_range(1..=6.min(q as usize));
                let k = rng.random_range(1..=n);
                let mut pts: Vec<Elem> = f.elements().collect();
                for i in 0..n {
                    let j = rng.random_range(i..pts.len());
                    pts.swap(i, j);
                }
                let vs: Vec<Elem> = (0..n).map(|_| rng.random_range(1..q as Elem)).collect();
                let c = grs(&f, &pts[..n], &vs, k).unwrap();
                let d = c.code().min_distance().unwrap();
                assert_eq!(d, n - k + 1);
                let a = c.code().weight_distribution().unwrap();
                assert_eq!(a.iter().sum::<u64>(), q.pow(k as u32));
                for (w, &aw) in a.iter().enumerate().skip(d) {
                    assert!(BigUint::from(aw) <= mds_weight_bound(n, w, d, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn repetition_code() {
        let f = gf(2);
        let c = LinearCode::new(&f, 3, vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(c.min_distance().unwrap(), 3);
        assert_eq!(c.weight_distribution().unwrap(), vec![1, 0, 0, 1]);
        assert!(LinearCode::new(&f, 2, vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn encode_is_linear() {
        let f = gf(9);
        let c = grs(&f, &[0, 1, 2, 3, 4], &[1, 2, 3, 4, 5], 3).unwrap().into_code();
        assert_eq!(c.encode(&[0, 0, 0]).unwrap(), vec![0; 5]);
        assert_eq!(c.encode(&[0, 1, 0]).unwrap(), c.generator()[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let m1: Vec<Elem> = (0..3).map(|_| rng.random_range(0..9)).collect();
            let m2: Vec<Elem> = (0..3).map(|_| rng.random_range(0..9)).collect();
            let sum: Vec<Elem> = m1.iter().zip(&m2).map(|(&a, &b)| f.add(a, b)).collect();
            let lhs = c.encode(&sum).unwrap();
            let rhs: Vec<Elem> =
                c.encode(&m1).unwrap().iter().zip(c.encode(&m2).unwrap()).map(|(&a, b)| f.add(a, b)).collect();
            assert_eq!(lhs, rhs);
        }
        assert!(c.encode(&[1]).is_err());
    }

    #[test]
    fn codewords_match_encoding() {
        let f = gf(4);
        let c = grs(&f, &[0, 1, 2], &[1, 1, 1], 2).unwrap().into_code();
        let words: HashSet<_> = c.codewords().unwrap().into_iter().collect();
        assert_eq!(words.len(), 16);
        for a in 0..4 {
            for b in 0..4 {
                assert!(words.contains(&c.encode(&[a, b]).unwrap()));
            }
        }
        for w in &words {
            assert!(c.contains(w));
        }
        assert!(!c.contains(&[1, 0, 0]));
    }

    #[test]
    fn mds_bound_examples() {
        assert_eq!(mds_weight_bound(4, 3, 3, 16).unwrap(), BigUint::from(64u32));
        assert_eq!(mds_weight_bound(4, 4, 3, 4).unwrap(), BigUint::from(16u32));
        assert_eq!(mds_weight_bound(10, 4, 4, 7).unwrap(), BigUint::from(210u32 * 7));
        assert_eq!(mds_weight_bound(4, 2, 3, 4).unwrap_err(), Error::WeightOutOfRange { w: 2, d: 3, n: 4 });
        assert!(mds_weight_bound(4, 5, 3, 4).is_err());
        // exceeds u64
        assert!(mds_weight_bound(40, 30, 5, 1 << 16).unwrap() > BigUint::from(u64::MAX));
    }

    #[test]
    fn weight_csv() {
        assert_eq!(weight_distribution_csv(&[1, 0, 3]), "w,count\n0,1\n1,0\n2,3\n");
    }

    #[test]
    fn pauli_code_examples() {
        let sp = PauliSpace::with_q(2, 1).unwrap();
        let triv = pauli_code(&sp, &[]).unwrap();
        assert_eq!(triv.codewords().unwrap(), vec![vec![0]]);
        let z = PauliVec::from_letters("Z").unwrap();
        let cs = pauli_code(&sp, std::slice::from_ref(&z)).unwrap();
        let words: Vec<_> = cs.codewords().unwrap();
        assert_eq!(words.len(), 2);
        assert!(words.contains(&vec![0]));
        assert!(words.contains(&sp.phi(&z).unwrap()));
        assert_eq!(cs.field().order(), 4);
        assert_eq!(pauli_code(&sp, &[z.clone(), z]).unwrap_err(), Error::NotAGroup);
    }

    #[test]
    fn normalizer_code_size_and_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (q, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let sp = PauliSpace::with_q(q, n).unwrap();
            for k in 0..=n {
                let code = sample_code(&sp, k, &mut rng).unwrap();
                let cn = normalizer_code(&code).unwrap();
                let words: HashSet<_> = cn.codewords().unwrap().into_iter().collect();
                assert_eq!(words.len() as u64, q.pow((n + k) as u32));
                for (g, row) in code.normalizer_basis().iter().zip(cn.generator()) {
                    assert_eq!(g.weight(), hamming_weight(row));
                }
            }
        }
    }

    #[test]
    fn quantum_distance_two_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for (q, n, k) in [(2u64, 2usize, 1usize), (2, 3, 1), (3, 2, 1), (2, 3, 2)] {
            let sp = PauliSpace::with_q(q, n).unwrap();
            for _ in 0..10 {
                let code = sample_code(&sp, k, &mut rng).unwrap();
                let cs = stabilizer_code(code.stabilizer()).unwrap();
                let cn = normalizer_code(&code).unwrap();
                let (d, degenerate) = quantum_distance(&cs, &cn).unwrap();
                let s_words: HashSet<_> = cs.codewords().unwrap().into_iter().collect();
                let oracle = cn
                    .codewords()
                    .unwrap()
                    .into_iter()
                    .filter(|w| !s_words.contains(w))
                    .map(|w| hamming_weight(&w))
                    .min()
                    .unwrap();
                assert_eq!(d, oracle);
                let dn = cn.min_distance().unwrap();
                assert!(d >= dn);
                assert_eq!(degenerate, d > dn);
            }
        }
    }

    #[test]
    fn quantum_distance_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let sp = PauliSpace::with_q(2, 2).unwrap();
        let code = sample_code(&sp, 2, &mut rng).unwrap();
        let cn = normalizer_code(&code).unwrap();
        let cs = stabilizer_code(code.stabilizer()).unwrap();
        let (d, degenerate) = quantum_distance(&cs, &cn).unwrap();
        assert_eq!(d, cn.min_distance().unwrap());
        assert!(!degenerate);
        assert_eq!(quantum_distance(&cn, &cn).unwrap_err(), Error::EmptyDifference);
        let x = PauliVec::from_letters("XI").unwrap();
        let z = PauliVec::from_letters("ZI").unwrap();
        let cx = pauli_code(&sp, &[x]).unwrap();
        let cz = pauli_code(&sp, &[z]).unwrap();
        assert_eq!(quantum_distance(&cx, &cz).unwrap_err(), Error::NotASubcode);
    }

    #[test]
    fn code_json() {
        let f = make_field(5, 1).unwrap();
        let c = grs(&f, &[0, 1, 2, 3], &[1; 4], 2).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        for key in ["field", "N", "K", "gen", "alphas", "vs"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let back: LinearCode = serde_json::from_value(v).unwrap();
        assert_eq!(back.generator(), c.code().generator());
        let sp = PauliSpace::with_q(2, 1).unwrap();
        let cs = pauli_code(&sp, &[PauliVec::from_letters("Z").unwrap()]).unwrap();
        let back: LinearCode = serde_json::from_value(serde_json::to_value(&cs).unwrap()).unwrap();
        assert_eq!(back.size(), 2);
    }

    #[test]
    fn guard_rejects_huge_codes() {
        let f = gf(16);
        let pts: Vec<Elem> = (0..8).collect();
        let c = grs(&f, &pts, &[1; 8], 7).unwrap();
        assert!(matches!(c.code().min_distance(), Err(Error::TooLarge { .. })));
    }
}
