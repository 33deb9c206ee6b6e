//! Prime-power finite fields GF(p^m) and subfield towers.
//!
//! Elements are plain integers in `0..p^m`. The coefficient vector
//! `(c_0, ..., c_{m-1})` of the reduced polynomial representative is encoded
//! as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, so zero is `0`, one is `1`, the
//! prime subfield is `0..p`, and for `m > 1` the class of `x` is `p`.
//!
//! A [`Field`] is a cheap-to-clone handle; all tables are built once at
//! construction and never mutated afterwards.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Raw field element in integer encoding.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

// Dense polynomials over Z_p, lowest degree first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `b`.
    pub fn rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        while r.len() > db {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let t = (lead as u64 * bc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// Exhaustive trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for t in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut rest = t;
                for _ in 0..d {
                    g.push((rest % p as u64) as u32);
                    rest /= p as u64;
                }
                g.push(1);
                if rem_monic(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Serialized form of a field: `{"p": int, "m": int, "modulus": [int, ...]}`,
/// modulus coefficients lowest degree first including the leading 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

struct FieldData {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<Elem>>,
}

/// The finite field GF(p^m) with an explicit irreducible modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

/// Builds GF(p^m) using the lexicographically least monic irreducible
/// polynomial of degree `m` (coefficients compared from degree 0 upwards).
pub fn make_field(p: u32, m: u32) -> Result<Field> {
    check_params(p, m)?;
    let count = (p as u64).pow(m);
    for t in 0..count {
        // most significant base-p digit of t is c_0
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut rest = t;
        for i in (0..m as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[m as usize] = 1;
        if poly::is_irreducible(&coeffs, p) {
            return Field::with_modulus(p, m, coeffs);
        }
    }
    unreachable!("an irreducible polynomial exists for every degree")
}

fn check_params(p: u32, m: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if !(1..=16).contains(&m) {
        return Err(Error::DegreeOutOfRange(m));
    }
    match (p as u64).checked_pow(m) {
        Some(order) if order <= MAX_ORDER => Ok(()),
        _ => Err(Error::OrderTooLarge { p, m }),
    }
}

impl Field {
    /// The field of order `q` (which must be a prime power).
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        make_field(p, m)
    }

    /// Builds GF(p^m) from a caller-supplied modulus (lowest degree first,
    /// length `m + 1`, monic, irreducible).
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Result<Field> {
        check_params(p, m)?;
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !poly::is_irreducible(&modulus, p)
        {
            return Err(Error::ReducibleModulus);
        }
        let order = p.pow(m);
        let digits = |a: Elem| -> Vec<u32> {
            let mut v = Vec::with_capacity(m as usize);
            let mut rest = a;
            for _ in 0..m {
                v.push(rest % p);
                rest /= p;
            }
            v
        };
        let encode = |c: &[u32]| -> Elem { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mul_slow = |a: Elem, b: Elem| -> Elem {
            let prod = poly::mul(&digits(a), &digits(b), p);
            encode(&poly::rem_monic(&prod, &modulus, p))
        };

        let group = order - 1;
        let mut primitive = 1;
        for cand in 1..order {
            let mut x = cand;
            let mut k = 1;
            while x != 1 {
                x = mul_slow(x, cand);
                k += 1;
            }
            if k == group {
                primitive = cand;
                break;
            }
        }
        let mut exp = vec![0; 2 * group as usize];
        let mut log = vec![0; order as usize];
        let mut x = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            if i < group as usize {
                log[x as usize] = i as u32;
            }
            x = mul_slow(x, primitive);
        }

        let add_digits = |a: Elem, b: Elem| -> Elem {
            let s: Vec<u32> = digits(a).iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
            encode(&s)
        };
        let neg: Vec<Elem> = (0..order)
            .map(|a| encode(&digits(a).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()))
            .collect();
        let add = (p != 2 && order <= ADD_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    t.push(add_digits(a, b));
                }
            }
            t
        });

        Ok(Field(Arc::new(FieldData { p, m, order, modulus, primitive, exp, log, neg, add })))
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field> {
        Field::with_modulus(d.p, d.m, d.modulus.clone())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.0.p, m: self.0.m, modulus: self.0.modulus.clone() }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Modulus coefficients, lowest degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The generator of the multiplicative group used for the log tables
    /// (first primitive element in enumeration order).
    pub fn primitive(&self) -> Elem {
        self.0.primitive
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.order
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.0.order
    }

    /// Coefficients of the polynomial representative, lowest degree first.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.0.m as usize);
        let mut rest = a;
        for _ in 0..self.0.m {
            v.push(rest % self.0.p);
            rest /= self.0.p;
        }
        v
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &f.add {
            return t[(a * f.order + b) as usize];
        }
        let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..f.m {
            out += ((x % f.p + y % f.p) % f.p) * place;
            x /= f.p;
            y /= f.p;
            place *= f.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.0;
        let group = f.order - 1;
        Ok(f.exp[((group - f.log[a as usize]) % group) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        let group = (f.order - 1) as u64;
        f.exp[((f.log[a as usize] as u64 * (e % group)) % group) as usize]
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn elem(&self, value: Elem) -> Result<FieldElem> {
        FieldElem::new(self, value)
    }

    fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.m, self.0.modulus)
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = FieldDescriptor::deserialize(d)?;
        Field::from_descriptor(&desc).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A field element bundled with its field; arithmetic is checked for
/// field agreement.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    value: Elem,
}

impl FieldElem {
    pub fn new(field: &Field, value: Elem) -> Result<Self> {
        if !field.contains(value) {
            return Err(Error::InvalidElement(value));
        }
        Ok(FieldElem { field: field.clone(), value })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn arith(&self, other: &FieldElem, op: ArithOp) -> Result<FieldElem> {
        if !self.field.same(&other.field) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let value = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
        };
        Ok(FieldElem { field: f.clone(), value })
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.arith(other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(FieldElem { field: self.field.clone(), value: self.field.inv(self.value)? })
    }

    /// `self^e`; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.field.inv(self.value)? } else { self.value };
        Ok(FieldElem { field: self.field.clone(), value: self.field.pow(base, e.unsigned_abs()) })
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field.same(&other.field)
    }
}

impl Eq for FieldElem {}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.value);
        }
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

struct TowerData {
    base: Field,
    ext: Field,
    degree: usize,
    embed: Vec<Elem>,
    basis: Vec<Elem>,
    coords: Vec<Elem>,
    frobenius: OnceLock<Option<(Elem, Elem)>>,
}

/// An extension GF(q^e) viewed as an e-dimensional vector space over GF(q).
///
/// The basis is the power basis `1, γ, ..., γ^{e-1}` of the extension's
/// primitive element γ. Coordinates are precomputed for every element.
#[derive(Clone)]
pub struct Tower(Arc<TowerData>);

impl Tower {
    pub fn new(base: &Field, ext: &Field) -> Result<Tower> {
        if base.characteristic() != ext.characteristic() || !ext.degree().is_multiple_of(base.degree()) {
            return Err(Error::FieldMismatch);
        }
        let degree = (ext.degree() / base.degree()) as usize;

        let embed: Vec<Elem> = if base.degree() == 1 {
            base.elements().collect()
        } else {
            // smallest root of the base modulus inside ext; modulus
            // coefficients are prime-field constants in both encodings
            let eval = |r: Elem| {
                base.modulus()
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| ext.add(ext.mul(acc, r), c))
            };
            let root = ext.elements().find(|&r| eval(r) == 0).ok_or(Error::FieldMismatch)?;
            base.elements()
                .map(|a| {
                    base.coeffs(a)
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (i, &d)| ext.add(acc, ext.mul(d, ext.pow(root, i as u64))))
                })
                .collect()
        };
        debug_assert!(embed.iter().all(|&e| e < ext.order()));

        let gamma = ext.primitive();
        let basis: Vec<Elem> = (0..degree).map(|i| ext.pow(gamma, i as u64)).collect();

        let q = base.order();
        let mut coords = vec![u32::MAX; ext.order() as usize * degree];
        for idx in 0..ext.order() {
            let mut rest = idx;
            let mut t = Vec::with_capacity(degree);
            for _ in 0..degree {
                t.push(rest % q);
                rest /= q;
            }
            let x = t
                .iter()
                .zip(&basis)
                .fold(0, |acc, (&c, &b)| ext.add(acc, ext.mul(embed[c as usize], b)));
            coords[x as usize * degree..(x as usize + 1) * degree].copy_from_slice(&t);
        }
        debug_assert!(coords.iter().all(|&c| c != u32::MAX), "power basis must span");

        Ok(Tower(Arc::new(TowerData {
            base: base.clone(),
            ext: ext.clone(),
            degree,
            embed,
            basis,
            coords,
            frobenius: OnceLock::new(),
        })))
    }

    pub fn base(&self) -> &Field {
        &self.0.base
    }

    pub fn ext(&self) -> &Field {
        &self.0.ext
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Image of a base-field element in the extension.
    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.0.embed[a as usize]
    }

    /// The subfield GF(q) as extension elements, in base enumeration order.
    pub fn embedded_base(&self) -> &[Elem] {
        &self.0.embed
    }

    pub fn basis(&self) -> &[Elem] {
        &self.0.basis
    }

    /// GF(q)-coordinates of `x` in the power basis.
    #[inline]
    pub fn coords(&self, x: Elem) -> &[Elem] {
        let d = self.0.degree;
        &self.0.coords[x as usize * d..(x as usize + 1) * d]
    }

    /// Checked coordinates of a bundled element.
    pub fn tower_coords(&self, x: &FieldElem) -> Result<Vec<FieldElem>> {
        if !x.field().same(&self.0.ext) {
            return Err(Error::FieldMismatch);
        }
        self.coords(x.value()).iter().map(|&c| self.0.base.elem(c)).collect()
    }

    /// Inverse of [`Tower::coords`].
    pub fn elem(&self, coords: &[Elem]) -> Result<Elem> {
        if coords.len() != self.0.degree {
            return Err(Error::DimensionMismatch { expected: self.0.degree, found: coords.len() });
        }
        let ext = &self.0.ext;
        coords.iter().zip(&self.0.basis).try_fold(0, |acc, (&c, &b)| {
            if !self.0.base.contains(c) {
                return Err(Error::InvalidElement(c));
            }
            Ok(ext.add(acc, ext.mul(self.embed(c), b)))
        })
    }

    pub fn tower_elem(&self, coords: &[FieldElem]) -> Result<FieldElem> {
        if coords.iter().any(|c| !c.field().same(&self.0.base)) {
            return Err(Error::FieldMismatch);
        }
        let raw: Vec<Elem> = coords.iter().map(FieldElem::value).collect();
        self.0.ext.elem(self.elem(&raw)?)
    }

    /// `c · x` for `c` in the base field and `x` in the extension.
    #[inline]
    pub fn scale(&self, c: Elem, x: Elem) -> Elem {
        self.0.ext.mul(self.embed(c), x)
    }

    /// For a quadratic extension GF(q^2)/GF(q): the first element β in
    /// enumeration order with {β, β^q} linearly independent over GF(q).
    pub fn frobenius_basis(&self) -> Result<(Elem, Elem)> {
        if self.0.degree != 2 {
            return Err(Error::NoBasisFound);
        }
        let found = self.0.frobenius.get_or_init(|| {
            let q = self.0.base.order() as u64;
            let base = &self.0.base;
            self.0.ext.elements().find_map(|b| {
                let bq = self.0.ext.pow(b, q);
                let (u, v) = (self.coords(b), self.coords(bq));
                let det = base.sub(base.mul(u[0], v[1]), base.mul(u[1], v[0]));
                (det != 0).then_some((b, bq))
            })
        });
        found.ok_or(Error::NoBasisFound)
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({:?} / {:?})", self.0.ext, self.0.base)
    }
}
