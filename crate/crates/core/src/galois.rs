//! Finite fields GF(p^m) backed by log/exp tables, and the quadratic tower
//! GF(q) ⊂ GF(q²) with Frobenius conjugation, norms and norm roots.
//!
//! Elements are plain indices: base-p digit `i` of the index is the
//! coefficient of `x^i` in the polynomial representation modulo the field's
//! defining polynomial.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the number of field elements.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 16;

/// Largest field for which a full addition table is precomputed.
const ADD_TABLE_MAX: u32 = 1024;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serialized identity of a field: characteristic, degree and modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    /// Coefficients of the monic defining polynomial, low degree first.
    pub modulus: Vec<u32>,
}

pub struct FieldCtx {
    p: u32,
    m: u32,
    size: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^m` into `(p, m)`.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = prime_factors(q as u64)[0] as u32;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, m))
}

/// Dense polynomial arithmetic over GF(p), used only while building tables.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // p is small and prime; Fermat.
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &c) in b.iter().enumerate() {
                let sub = (factor as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&out, f, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or irreducibility test for a monic polynomial `f` over GF(p).
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 0..deg / 2 {
            // xp <- xp^p mod f
            let mut acc = vec![1u32];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(&acc, &base, f, p);
                }
                base = mul_mod(&base, &base, f, p);
                e >>= 1;
            }
            xp = acc;
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl FieldCtx {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_cap(p, m, DEFAULT_FIELD_CAP)
    }

    /// Builds GF(p^m) with the lexicographically smallest monic irreducible
    /// modulus and the smallest-index primitive element.
    pub fn with_cap(p: u32, m: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (p as u64)
            .checked_pow(m)
            .filter(|&s| s <= cap && s <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, m, cap })? as u32;

        let modulus = (0..size)
            .map(|c| {
                let mut coeffs = digits(c, p, m);
                coeffs.push(1);
                coeffs
            })
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = poly::mul_mod(&trimmed(digits(a, p, m)), &trimmed(digits(b, p, m)), &modulus, p);
            undigits(&prod, p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            let mut base = a;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };

        let order = size as u64 - 1;
        let factors = prime_factors(order);
        let primitive = (1..size)
            .find(|&g| slow_pow(g, order) == 1 && factors.iter().all(|&l| slow_pow(g, order / l) != 1))
            .expect("the multiplicative group is cyclic");

        let n = order as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; size as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, primitive);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        let digit_add = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a, b);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..m {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place = place.wrapping_mul(p);
            }
            out
        };
        let neg = (0..size)
            .map(|a| {
                let mut out = 0u32;
                let mut place = 1u32;
                let mut a = a;
                for _ in 0..m {
                    out += ((p - a % p) % p) * place;
                    a /= p;
                    place = place.wrapping_mul(p);
                }
                out
            })
            .collect();
        let add_table = (p != 2 && size <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = digit_add(a, b);
                }
            }
            t
        });

        Ok(FieldCtx { p, m, size, modulus, primitive: Elem(primitive), exp, log, neg, add_table })
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        let f = Self::new(d.p, d.m)?;
        if f.modulus != d.modulus {
            return Err(Error::Malformed(format!(
                "modulus {:?} differs from the canonical {:?} for GF({}^{})",
                d.modulus, f.modulus, d.p, d.m
            )));
        }
        Ok(f)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, m: self.m, modulus: self.modulus.clone() }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.size
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::ForeignElement { index: x.0, size: self.size })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    /// Polynomial coefficients of `x`, low degree first.
    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        digits(x.0, self.p, self.m)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => Elem(t[(a.0 * self.size + b.0) as usize]),
            None => {
                let (p, mut x, mut y) = (self.p, a.0, b.0);
                let mut out = 0u32;
                let mut place = 1u32;
                for _ in 0..self.m {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place = place.wrapping_mul(p);
                }
                Elem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero in {:?}", self);
        let n = self.size - 1;
        Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize])
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.size - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(self.exp[l as usize])
    }

    /// `g^i` for the field's primitive element `g`.
    pub fn exp(&self, i: u64) -> Elem {
        Elem(self.exp[(i % (self.size as u64 - 1)) as usize])
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// Element of the prime subfield with value `c mod p`.
    pub fn from_int(&self, c: u64) -> Elem {
        Elem((c % self.p as u64) as u32)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }
}

fn digits(mut c: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn trimmed(mut v: Vec<u32>) -> Vec<u32> {
    poly::trim(&mut v);
    v
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// The quadratic extension GF(q²) over GF(q) with a fixed embedding and a
/// fixed basis `{1, γ}`.
pub struct TowerCtx {
    q: u32,
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    embed: Vec<Elem>,
    project: Vec<Option<Elem>>,
    gamma: Elem,
    // ext element -> (a, b) with x = aγ + b
    decomp: Vec<(Elem, Elem)>,
}

impl fmt::Debug for TowerCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})/GF({})", self.ext.size(), self.q)
    }
}

impl TowerCtx {
    /// Tower for GF(q²)/GF(q) with `q` a prime power.
    pub fn for_q(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q)?;
        Self::new(p, m)
    }

    /// Tower with base GF(p^m) and extension GF(p^{2m}).
    pub fn new(p: u32, m: u32) -> Result<Self> {
        let base = Arc::new(FieldCtx::new(p, m)?);
        let ext = Arc::new(FieldCtx::new(p, 2 * m)?);
        Self::from_fields(base, ext)
    }

    /// Tower whose extension field is described by `ext` (degree must be even).
    pub fn from_ext_descriptor(ext: &FieldDescriptor) -> Result<Self> {
        if !ext.m.is_multiple_of(2) {
            return Err(Error::Malformed(format!("GF({}^{}) is not a quadratic extension", ext.p, ext.m)));
        }
        let base = Arc::new(FieldCtx::new(ext.p, ext.m / 2)?);
        let ext = Arc::new(FieldCtx::from_descriptor(ext)?);
        Self::from_fields(base, ext)
    }

    fn from_fields(base: Arc<FieldCtx>, ext: Arc<FieldCtx>) -> Result<Self> {
        let q = base.size();
        if ext.characteristic() != base.characteristic() || ext.degree() != 2 * base.degree() {
            return Err(Error::FieldMismatch);
        }
        // A root of the base modulus inside the extension; sending x to it
        // defines the embedding.
        let f = base.modulus();
        let root = ext
            .elements()
            .find(|&r| {
                let val = f
                    .iter()
                    .enumerate()
                    .fold(Elem::ZERO, |acc, (i, &c)| ext.add(acc, ext.mul(ext.from_int(c as u64), ext.pow(r, i as u64))));
                val.is_zero()
            })
            .ok_or_else(|| Error::Internal("base modulus has no root in the extension".into()))?;
        let embed: Vec<Elem> = base
            .elements()
            .map(|a| {
                base.coefficients(a)
                    .iter()
                    .enumerate()
                    .fold(Elem::ZERO, |acc, (i, &c)| ext.add(acc, ext.mul(ext.from_int(c as u64), ext.pow(root, i as u64))))
            })
            .collect();
        let mut project = vec![None; ext.size() as usize];
        for (a, &e) in embed.iter().enumerate() {
            if project[e.0 as usize].is_some() {
                return Err(Error::Internal("embedding is not injective".into()));
            }
            project[e.0 as usize] = Some(Elem(a as u32));
        }
        let gamma = ext.primitive();
        if project[gamma.0 as usize].is_some() {
            return Err(Error::Internal("primitive element lies in the base field".into()));
        }
        let mut decomp = vec![(Elem::ZERO, Elem::ZERO); ext.size() as usize];
        for a in base.elements() {
            for b in base.elements() {
                let x = ext.add(ext.mul(embed[a.0 as usize], gamma), embed[b.0 as usize]);
                decomp[x.0 as usize] = (a, b);
            }
        }
        Ok(TowerCtx { q, base, ext, embed, project, gamma, decomp })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldCtx> {
        &self.ext
    }

    pub fn gamma(&self) -> Elem {
        self.gamma
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a.0 as usize]
    }

    /// Inverse of [`embed`](Self::embed); `None` outside the base field.
    #[inline]
    pub fn project(&self, x: Elem) -> Option<Elem> {
        self.project[x.0 as usize]
    }

    pub fn in_base(&self, x: Elem) -> bool {
        self.project(x).is_some()
    }

    /// Coordinates `(a, b)` of `x = aγ + b` with `a, b` in the base field.
    pub fn decompose(&self, x: Elem) -> (Elem, Elem) {
        self.decomp[x.0 as usize]
    }

    /// `x ↦ x^q`, checked.
    pub fn frobenius(&self, x: Elem) -> Result<Elem> {
        self.ext.check(x)?;
        Ok(self.conj(x))
    }

    /// `x ↦ x^q` without the membership check.
    #[inline]
    pub fn conj(&self, x: Elem) -> Elem {
        self.ext.pow(x, self.q as u64)
    }

    /// `x^{q+1}`, which lies in the embedded base field.
    pub fn norm(&self, x: Elem) -> Elem {
        self.ext.pow(x, self.q as u64 + 1)
    }

    /// Returns `v` in GF(q²) with `v^{q+1} = embed(lambda)`, choosing `v = g^t`
    /// with the smallest `t ≥ 0` (`g` the primitive element of GF(q²)).
    pub fn norm_root(&self, lambda: Elem) -> Result<Elem> {
        self.base.check(lambda)?;
        if lambda.is_zero() {
            return Err(Error::ZeroNormRoot);
        }
        let l = self.ext.log(self.embed(lambda)).expect("nonzero") as u64;
        let step = self.q as u64 + 1;
        debug_assert_eq!(l % step, 0);
        Ok(self.ext.exp(l / step))
    }

    /// `β_1, …, β_q`: the nonzero base elements as powers `h^0, …, h^{q-2}` of
    /// the base primitive element `h`, followed by zero.
    pub fn betas(&self) -> Vec<Elem> {
        let mut out: Vec<Elem> = (0..self.q as u64 - 1).map(|i| self.base.exp(i)).collect();
        out.push(Elem::ZERO);
        out
    }

    /// All of GF(q²) in coset order: position `iq + j - 1` holds
    /// `β_{i+1}γ + β_j` for `0 ≤ i < q`, `1 ≤ j ≤ q`.
    pub fn enumerate_elements(&self) -> Vec<Elem> {
        let betas: Vec<Elem> = self.betas().into_iter().map(|b| self.embed(b)).collect();
        let mut out = Vec::with_capacity((self.q * self.q) as usize);
        for &bi in &betas {
            let coset = self.ext.mul(bi, self.gamma);
            for &bj in &betas {
                out.push(self.ext.add(coset, bj));
            }
        }
        out
    }

    /// `∏_{c ∈ GF(q)} (γ + c)`.
    pub fn zeta(&self) -> Elem {
        self.ext.product(self.base.elements().map(|c| self.ext.add(self.gamma, self.embed(c))))
    }
}
