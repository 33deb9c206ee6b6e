//! Paulis modulo phase as symplectic exponent vectors over GF(q).
//!
//! An `n`-qudit Pauli `X^{a_1} Z^{b_1} ⊗ ... ⊗ X^{a_n} Z^{b_n}` is stored as
//! the pair `(a, b) ∈ GF(q)^n × GF(q)^n`. Multiplication modulo phase is
//! vector addition, and commutation is governed by the symplectic form
//! `symp(a, b) = a_x·b_z − a_z·b_x`, normalised so that `symp(X, Z) = 1`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{make_field, Elem, Field, Tower};

/// A Pauli modulo phase: `x` holds the X exponents, `z` the Z exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PauliRecord", into = "PauliRecord")]
pub struct PauliVec {
    x: Vec<Elem>,
    z: Vec<Elem>,
}

#[derive(Serialize, Deserialize)]
struct PauliRecord {
    n: usize,
    x: Vec<Elem>,
    z: Vec<Elem>,
}

impl TryFrom<PauliRecord> for PauliVec {
    type Error = Error;

    fn try_from(r: PauliRecord) -> Result<Self> {
        if r.x.len() != r.n {
            return Err(Error::DimensionMismatch { expected: r.n, found: r.x.len() });
        }
        PauliVec::new(r.x, r.z)
    }
}

impl From<PauliVec> for PauliRecord {
    fn from(p: PauliVec) -> Self {
        PauliRecord { n: p.n(), x: p.x, z: p.z }
    }
}

impl PauliVec {
    pub fn new(x: Vec<Elem>, z: Vec<Elem>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: z.len() });
        }
        Ok(PauliVec { x, z })
    }

    pub fn identity(n: usize) -> Self {
        PauliVec { x: vec![0; n], z: vec![0; n] }
    }

    /// Binary-style shorthand: one letter per qudit from `I`, `X`, `Z`, `Y`
    /// (`Y` meaning exponents `(1, 1)`).
    pub fn from_letters(s: &str) -> Result<Self> {
        let mut x = Vec::new();
        let mut z = Vec::new();
        for ch in s.chars() {
            let (a, b) = match ch {
                'I' => (0, 0),
                'X' => (1, 0),
                'Z' => (0, 1),
                'Y' => (1, 1),
                _ => return Err(Error::BadParameters(format!("unknown Pauli letter {ch:?}"))),
            };
            x.push(a);
            z.push(b);
        }
        Ok(PauliVec { x, z })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Elem] {
        &self.x
    }

    pub fn z(&self) -> &[Elem] {
        &self.z
    }

    /// Number of qudits on which the Pauli acts nontrivially.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(&a, &b)| a != 0 || b != 0).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&c| c == 0)
    }

    /// `(a_1, ..., a_n, b_1, ..., b_n)`
    pub fn phi_g(&self) -> Vec<Elem> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.z);
        v
    }

    pub fn from_phi_g(v: &[Elem]) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch { expected: v.len() + 1, found: v.len() });
        }
        let n = v.len() / 2;
        Ok(PauliVec { x: v[..n].to_vec(), z: v[n..].to_vec() })
    }
}

impl fmt::Display for PauliVec {
    /// `X{a}Z{b}` per qudit, joined by `|`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.x.iter().zip(&self.z).enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "X{a}Z{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli[{self}]")
    }
}

impl FromStr for PauliVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParameters(format!("cannot parse Pauli {s:?}"));
        let mut x = Vec::new();
        let mut z = Vec::new();
        for part in s.split('|') {
            let rest = part.strip_prefix('X').ok_or_else(bad)?;
            let (a, b) = rest.split_once('Z').ok_or_else(bad)?;
            x.push(a.parse().map_err(|_| bad())?);
            z.push(b.parse().map_err(|_| bad())?);
        }
        Ok(PauliVec { x, z })
    }
}

struct PhiMap {
    tower: Tower,
    beta: Elem,
    beta_q: Elem,
    // GF(q^2) element -> (a, b) with a·β + b·β^q equal to it
    inverse: Vec<(Elem, Elem)>,
}

/// The Pauli set on `n` qudits of dimension `q`, carrying the exponent
/// field and (lazily) the GF(q^2) data needed for `phi`.
#[derive(Clone)]
pub struct PauliSpace {
    field: Field,
    n: usize,
    phi: Arc<OnceLock<std::result::Result<PhiMap, Error>>>,
}

impl fmt::Debug for PauliSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliSpace(q={}, n={})", self.q(), self.n)
    }
}

impl PauliSpace {
    pub fn new(field: &Field, n: usize) -> Self {
        PauliSpace { field: field.clone(), n, phi: Arc::new(OnceLock::new()) }
    }

    /// Pauli set over GF(q) with `q` a prime power.
    pub fn with_q(q: u64, n: usize) -> Result<Self> {
        Ok(PauliSpace::new(&Field::with_order(q)?, n))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// `q^{2n}`, the number of Paulis.
    pub fn size(&self) -> u128 {
        (self.q() as u128).pow(2 * self.n as u32)
    }

    pub fn identity(&self) -> PauliVec {
        PauliVec::identity(self.n)
    }

    pub fn check(&self, a: &PauliVec) -> Result<()> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.n() });
        }
        match a.x.iter().chain(&a.z).find(|&&c| !self.field.contains(c)) {
            Some(&c) => Err(Error::InvalidElement(c)),
            None => Ok(()),
        }
    }

    /// Product modulo phase.
    pub fn star(&self, a: &PauliVec, b: &PauliVec) -> Result<PauliVec> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.star_unchecked(a, b))
    }

    pub(crate) fn star_unchecked(&self, a: &PauliVec, b: &PauliVec) -> PauliVec {
        let f = &self.field;
        PauliVec {
            x: a.x.iter().zip(&b.x).map(|(&u, &v)| f.add(u, v)).collect(),
            z: a.z.iter().zip(&b.z).map(|(&u, &v)| f.add(u, v)).collect(),
        }
    }

    /// `a^{⋆c}`: every exponent multiplied by `c`.
    pub fn scale(&self, c: Elem, a: &PauliVec) -> PauliVec {
        let f = &self.field;
        PauliVec {
            x: a.x.iter().map(|&u| f.mul(c, u)).collect(),
            z: a.z.iter().map(|&u| f.mul(c, u)).collect(),
        }
    }

    /// `⋆_i paulis[i]^{⋆coeffs[i]}`
    pub fn combine(&self, coeffs: &[Elem], paulis: &[PauliVec]) -> PauliVec {
        let f = &self.field;
        let mut out = self.identity();
        for (&c, p) in coeffs.iter().zip(paulis) {
            if c == 0 {
                continue;
            }
            for i in 0..self.n {
                out.x[i] = f.add(out.x[i], f.mul(c, p.x[i]));
                out.z[i] = f.add(out.z[i], f.mul(c, p.z[i]));
            }
        }
        out
    }

    /// The commutation exponent: `a·b = ω^{symp(a,b)} b·a` up to the sign
    /// convention `symp(X, Z) = 1`.
    pub fn symp(&self, a: &PauliVec, b: &PauliVec) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.symp_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn symp_unchecked(&self, a: &PauliVec, b: &PauliVec) -> Elem {
        let f = &self.field;
        f.sub(f.dot(&a.x, &b.z), f.dot(&a.z, &b.x))
    }

    pub fn commutes(&self, a: &PauliVec, b: &PauliVec) -> Result<bool> {
        Ok(self.symp(a, b)? == 0)
    }

    /// Dense index of a Pauli: its `phi_g` vector read as a base-`q` number,
    /// first coordinate least significant.
    pub fn index(&self, a: &PauliVec) -> u64 {
        let q = self.q() as u64;
        a.x.iter().chain(&a.z).rev().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> PauliVec {
        let q = self.q() as u64;
        let mut v = Vec::with_capacity(2 * self.n);
        for _ in 0..2 * self.n {
            v.push((idx % q) as Elem);
            idx /= q;
        }
        PauliVec::from_phi_g(&v).expect("even length")
    }

    /// Every Pauli in index order.
    pub fn all(&self) -> impl Iterator<Item = PauliVec> + '_ {
        let total = self.size() as u64;
        (0..total).map(move |i| self.from_index(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> PauliVec {
        let q = self.q();
        PauliVec {
            x: (0..self.n).map(|_| rng.random_range(0..q)).collect(),
            z: (0..self.n).map(|_| rng.random_range(0..q)).collect(),
        }
    }

    pub fn phi_g_inv(&self, v: &[Elem]) -> Result<PauliVec> {
        if v.len() != 2 * self.n {
            return Err(Error::DimensionMismatch { expected: 2 * self.n, found: v.len() });
        }
        let p = PauliVec::from_phi_g(v)?;
        self.check(&p)?;
        Ok(p)
    }

    fn phi_map(&self) -> Result<&PhiMap> {
        self.phi
            .get_or_init(|| {
                let ext = make_field(self.field.characteristic(), 2 * self.field.degree())?;
                let tower = Tower::new(&self.field, &ext)?;
                let (beta, beta_q) = tower.frobenius_basis()?;
                let mut inverse = vec![(0, 0); ext.order() as usize];
                for a in self.field.elements() {
                    for b in self.field.elements() {
                        let y = ext.add(tower.scale(a, beta), tower.scale(b, beta_q));
                        inverse[y as usize] = (a, b);
                    }
                }
                Ok(PhiMap { tower, beta, beta_q, inverse })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// GF(q^2) viewed over GF(q), the codomain field of `phi`.
    pub fn phi_tower(&self) -> Result<Tower> {
        Ok(self.phi_map()?.tower.clone())
    }

    /// `(β, β^q)` used by `phi`.
    pub fn phi_basis(&self) -> Result<(Elem, Elem)> {
        let m = self.phi_map()?;
        Ok((m.beta, m.beta_q))
    }

    /// Coordinatewise `x_i·β + z_i·β^q ∈ GF(q^2)`.
    pub fn phi(&self, a: &PauliVec) -> Result<Vec<Elem>> {
        self.check(a)?;
        let m = self.phi_map()?;
        let ext = m.tower.ext();
        Ok(a.x
            .iter()
            .zip(&a.z)
            .map(|(&u, &v)| ext.add(m.tower.scale(u, m.beta), m.tower.scale(v, m.beta_q)))
            .collect())
    }

    pub fn phi_inv(&self, v: &[Elem]) -> Result<PauliVec> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.len() });
        }
        let m = self.phi_map()?;
        let mut x = Vec::with_capacity(self.n);
        let mut z = Vec::with_capacity(self.n);
        for &y in v {
            let &(a, b) = m.inverse.get(y as usize).ok_or(Error::FieldMismatch)?;
            x.push(a);
            z.push(b);
        }
        Ok(PauliVec { x, z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliVec {
        PauliVec::from_letters(s).unwrap()
    }

    #[test]
    fn star_examples() {
        let sp = PauliSpace::with_q(2, 1).unwrap();
        assert!(sp.star(&p("X"), &p("X")).unwrap().is_trivial());
        assert_eq!(sp.star(&p("X"), &p("Z")).unwrap(), p("Y"));
        let sp3 = PauliSpace::with_q(3, 2).unwrap();
        let a = PauliVec::new(vec![1, 2], vec![0, 1]).unwrap();
        let mut acc = sp3.identity();
        for _ in 0..3 {
            acc = sp3.star(&acc, &a).unwrap();
        }
        assert!(acc.is_trivial());
        assert!(matches!(sp3.star(&a, &p("X")), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn symp_examples() {
        let sp = PauliSpace::with_q(2, 1).unwrap();
        assert_eq!(sp.symp(&p("X"), &p("Z")).unwrap(), 1);
        let sp3 = PauliSpace::with_q(3, 1).unwrap();
        let a = PauliVec::new(vec![2], vec![1]).unwrap();
        let b = PauliVec::new(vec![1], vec![2]).unwrap();
        assert_eq!(sp3.symp(&a, &b).unwrap(), 0);
        assert_eq!(sp3.symp(&a, &a).unwrap(), 0);
        // X Z = ω Z X: symp(X, Z) = 1 and symp(Z, X) = -1 = 2
        let x = PauliVec::new(vec![1], vec![0]).unwrap();
        let z = PauliVec::new(vec![0], vec![1]).unwrap();
        assert_eq!(sp3.symp(&z, &x).unwrap(), 2);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(PauliVec::identity(3).weight(), 0);
        assert_eq!(p("IXZ").weight(), 2);
        assert_eq!(PauliVec::new(vec![1, 0], vec![1, 0]).unwrap().weight(), 1);
    }

    #[test]
    fn phi_g_layout() {
        let a = PauliVec::new(vec![1, 0], vec![0, 1]).unwrap();
        assert_eq!(a.phi_g(), vec![1, 0, 0, 1]);
        assert_eq!(PauliVec::from_phi_g(&a.phi_g()).unwrap(), a);
        assert_eq!(PauliVec::identity(2).phi_g(), vec![0; 4]);
    }

    #[test]
    fn phi_of_x_is_beta() {
        let sp = PauliSpace::with_q(2, 1).unwrap();
        let (beta, _) = sp.phi_basis().unwrap();
        assert_eq!(sp.phi(&p("X")).unwrap(), vec![beta]);
        assert_eq!(sp.phi(&sp.identity()).unwrap(), vec![0]);
    }

    #[test]
    fn text_and_json_forms() {
        let a = PauliVec::new(vec![1, 0], vec![2, 1]).unwrap();
        assert_eq!(a.to_string(), "X1Z2|X0Z1");
        assert_eq!("X1Z2|X0Z1".parse::<PauliVec>().unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":2,"x":[1,0],"z":[2,1]}"#);
        assert_eq!(serde_json::from_str::<PauliVec>(&json).unwrap(), a);
        assert!(serde_json::from_str::<PauliVec>(r#"{"n":3,"x":[1,0],"z":[2,1]}"#).is_err());
    }

    fn exhaustive_spaces() -> Vec<PauliSpace> {
        [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (9, 1)]
            .iter()
            .map(|&(q, n)| PauliSpace::with_q(q, n).unwrap())
            .collect()
    }

    #[test]
    fn symp_nondegenerate_and_balanced() {
        for sp in exhaustive_spaces() {
            let all: Vec<_> = sp.all().collect();
            let q = sp.q() as usize;
            for a in all.iter().filter(|a| !a.is_trivial()) {
                let mut counts = vec![0usize; q];
                for b in &all {
                    counts[sp.symp(a, b).unwrap() as usize] += 1;
                }
                // every value hit exactly q^{2n-1} times
                assert!(counts.iter().all(|&c| c == all.len() / q), "{sp:?} {a}");
            }
        }
    }

    #[test]
    fn symp_nondegenerate_larger() {
        for (q, n) in [(3, 4), (9, 2), (2, 6)] {
            let sp = PauliSpace::with_q(q, n).unwrap();
            assert_eq!(sp.size(), if q == 2 { 4096 } else { 6561 });
            let probes: Vec<_> = (0..2 * n)
                .map(|i| {
                    let mut v = vec![0; 2 * n];
                    v[i] = 1;
                    PauliVec::from_phi_g(&v).unwrap()
                })
                .collect();
            for a in sp.all().filter(|a| !a.is_trivial()) {
                assert!(probes.iter().any(|b| sp.symp(&a, b).unwrap() != 0));
            }
        }
    }

    #[test]
    fn phi_preserves_weight_and_addition() {
        for sp in exhaustive_spaces() {
            let all: Vec<_> = sp.all().collect();
            let ext = sp.phi_tower().unwrap().ext().clone();
            let mut images = std::collections::HashSet::new();
            for a in &all {
                let img = sp.phi(a).unwrap();
                let hw = img.iter().filter(|&&c| c != 0).count();
                assert_eq!(hw, a.weight());
                assert_eq!(&sp.phi_inv(&img).unwrap(), a);
                assert!(images.insert(img));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..200 {
                let (a, b) = (sp.random(&mut rng), sp.random(&mut rng));
                let lhs = sp.phi(&sp.star(&a, &b).unwrap()).unwrap();
                let rhs: Vec<_> = sp
                    .phi(&a)
                    .unwrap()
                    .iter()
                    .zip(sp.phi(&b).unwrap())
                    .map(|(&u, v)| ext.add(u, v))
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let sp = PauliSpace::with_q(3, 2).unwrap();
        for (i, a) in sp.all().enumerate() {
            assert_eq!(sp.index(&a), i as u64);
        }
    }
}
