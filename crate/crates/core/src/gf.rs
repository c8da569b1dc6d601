//! Finite fields GF(p^k) in a polynomial basis.
//!
//! [`FieldSpec`] carries the defining data and implements arithmetic on
//! [`FieldElement`] coefficient vectors directly. [`Gf`] packs every element
//! into a one-byte code (`sum c_i p^i`) and caches the operation tables built
//! from the coefficient-vector arithmetic; the matrix code works on codes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Splits `q` as `p^k`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut k = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Polynomial with coefficient codes over some field, constant term first.
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, c) => write!(f, "{c}T")?,
                (i, 1) => write!(f, "T^{i}")?,
                (i, c) => write!(f, "{c}T^{i}")?,
            }
        }
        Ok(())
    }
}

// Arithmetic in GF(p)[T] / (f), f monic of degree k; residues have length k.

fn prime_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u64) -> Vec<u32> {
    let k = f.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for j in 0..k {
            let sub = c * f[j] as u64 % p;
            prod[d - k + j] = (prod[d - k + j] + p - sub) % p;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

fn prime_powmod(base: &[u32], mut e: u64, f: &[u32], p: u64) -> Vec<u32> {
    let k = f.len() - 1;
    let mut acc = vec![0u32; k];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = prime_mulmod(&acc, &b, f, p);
        }
        b = prime_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

/// Residue of `T` modulo `f`.
fn residue_of_t(f: &[u32], p: u64) -> Vec<u32> {
    let k = f.len() - 1;
    let mut t = vec![0u32; k];
    if k == 1 {
        t[0] = ((p - f[0] as u64 % p) % p) as u32;
    } else {
        t[1] = 1;
    }
    t
}

fn is_one(v: &[u32]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// True iff the class of `T` has multiplicative order exactly `p^k - 1`
/// modulo the monic polynomial `f`. This forces `f` to be irreducible.
fn is_primitive_modulus(f: &[u32], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if f[0] == 0 {
        return false;
    }
    let group = p.pow(k) - 1;
    let t = residue_of_t(f, p);
    if !is_one(&prime_powmod(&t, group, f, p)) {
        return false;
    }
    prime_factors(group)
        .into_iter()
        .all(|r| !is_one(&prime_powmod(&t, group / r, f, p)))
}

/// Lexicographically least monic primitive polynomial of degree `k` over
/// GF(p), comparing coefficient vectors from the constant term up.
pub fn find_modulus(p: u64, k: u32) -> Result<Polynomial> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    let total = p.pow(k);
    for idx in 0..total {
        // c_0 is the most significant digit of idx.
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut rest = idx;
        for i in (0..k as usize).rev() {
            coeffs[i] = (rest % p) as u32;
            rest /= p;
        }
        coeffs[k as usize] = 1;
        if is_primitive_modulus(&coeffs, p) {
            return Ok(Polynomial::new(coeffs));
        }
    }
    Err(Error::defect(format!(
        "no primitive polynomial of degree {k} over GF({p})"
    )))
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    p: u64,
    k: u32,
    modulus: Vec<u32>,
}

/// GF(p^k) given by a monic primitive modulus of degree k over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub struct FieldSpec {
    p: u64,
    k: u32,
    modulus: Vec<u32>,
    q: u64,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        FieldSpec::with_modulus(r.p, r.k, Polynomial::new(r.modulus))
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(s: FieldSpec) -> Self {
        FieldSpecRepr {
            p: s.p,
            k: s.k,
            modulus: s.modulus,
        }
    }
}

/// Element of a [`FieldSpec`]: the residue polynomial's coefficients,
/// constant term first, always of length k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl FieldSpec {
    /// GF(p^k) with the modulus chosen by [`find_modulus`].
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let modulus = find_modulus(p, k)?;
        Ok(FieldSpec {
            p,
            k,
            modulus: modulus.coeffs().to_vec(),
            q: p.pow(k),
        })
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        FieldSpec::new(p, k)
    }

    pub fn with_modulus(p: u64, k: u32, modulus: Polynomial) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || modulus.degree() != Some(k as usize) || !modulus.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "modulus must be monic of degree {k}"
            )));
        }
        if modulus.coeffs().iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidArgument("modulus coefficient out of range".into()));
        }
        if !is_primitive_modulus(modulus.coeffs(), p) {
            return Err(Error::InvalidArgument("modulus is not primitive".into()));
        }
        Ok(FieldSpec {
            p,
            k,
            modulus: modulus.coeffs().to_vec(),
            q: p.pow(k),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> Polynomial {
        Polynomial::new(self.modulus.clone())
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c as u64 >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "{coeffs:?} is not an element of GF({})",
                self.q
            )));
        }
        Ok(FieldElement { coeffs })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_code(1)
    }

    /// The class of `T`, a generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement {
            coeffs: residue_of_t(&self.modulus, self.p),
        }
    }

    pub fn from_code(&self, code: u64) -> FieldElement {
        let mut rest = code % self.q;
        let coeffs = (0..self.k)
            .map(|_| {
                let c = (rest % self.p) as u32;
                rest /= self.p;
                c
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn code(&self, a: &FieldElement) -> u64 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|c| self.from_code(c))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| ((x as u64 + y as u64) % self.p) as u32)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| ((self.p - x as u64) % self.p) as u32)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: prime_mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p),
        }
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        FieldElement {
            coeffs: prime_powmod(&a.coeffs, e, &self.modulus, self.p),
        }
    }

    /// Inverse as `a^(q-2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `a^(p^i)` for `0 <= i < k`.
    pub fn frobenius(&self, a: &FieldElement, i: u32) -> Result<FieldElement> {
        if i >= self.k {
            return Err(Error::InvalidArgument(format!(
                "Frobenius power {i} outside [0, {})",
                self.k
            )));
        }
        Ok(self.pow(a, self.p.pow(i)))
    }

    pub fn element_order(&self, a: &FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut m = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while m % r == 0 && is_one(&self.pow(a, m / r).coeffs) {
                m /= r;
            }
        }
        Ok(m)
    }
}

/// Table-backed GF(q), q <= 256, with elements packed as byte codes.
#[derive(Clone, Debug)]
pub struct Gf {
    spec: FieldSpec,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    primitive: u8,
}

impl Gf {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        if spec.q() > 256 {
            return Err(Error::InvalidArgument(format!(
                "table-backed arithmetic needs q <= 256, got {}",
                spec.q()
            )));
        }
        let q = spec.q() as usize;
        let elems: Vec<FieldElement> = spec.elements().collect();
        let code = |a: &FieldElement| spec.code(a) as u8;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = code(&spec.add(a, b));
                mul[i * q + j] = code(&spec.mul(a, b));
            }
        }
        let neg = elems.iter().map(|a| code(&spec.neg(a))).collect();
        let inv = elems
            .iter()
            .map(|a| spec.inv(a).map(|b| code(&b)).unwrap_or(0))
            .collect();
        let k = spec.k() as usize;
        let mut frob = vec![0u8; k * q];
        for i in 0..k {
            for (j, a) in elems.iter().enumerate() {
                frob[i * q + j] = code(&spec.frobenius(a, i as u32)?);
            }
        }
        let primitive = code(&spec.primitive_element());
        Ok(Gf {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
            frob,
            primitive,
        })
    }

    pub fn of_order(q: u64) -> Result<Self> {
        Gf::new(FieldSpec::of_order(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.spec.p()
    }

    pub fn k(&self) -> u32 {
        self.spec.k()
    }

    pub fn primitive(&self) -> u8 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// `a^(p^i)`; `i` is taken modulo k.
    #[inline]
    pub fn frob(&self, a: u8, i: u32) -> u8 {
        let i = (i % self.k()) as usize;
        self.frob[i * self.q + a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut acc = 1u8;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self, a: u8) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut m = 1;
        while x != 1 {
            x = self.mul(x, a);
            m += 1;
        }
        Some(m)
    }

    pub fn element(&self, a: u8) -> FieldElement {
        self.spec.from_code(a as u64)
    }

    pub fn code(&self, a: &FieldElement) -> u8 {
        self.spec.code(a) as u8
    }

    /// Nonzero elements in increasing code order.
    pub fn units(&self) -> impl Iterator<Item = u8> {
        (1..self.q).map(|c| c as u8)
    }

    /// Polynomial product over this field (coefficient codes, constant first).
    pub fn poly_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u8; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x as u8, y as u8));
            }
        }
        out.into_iter().map(u32::from).collect()
    }

    /// Remainder of `a` modulo the monic polynomial `f`.
    pub fn poly_rem(&self, a: &[u32], f: &[u32]) -> Vec<u32> {
        let k = f.len() - 1;
        let mut r: Vec<u8> = a.iter().map(|&c| c as u8).collect();
        while r.len() > k {
            let c = r.pop().unwrap();
            if c != 0 {
                let d = r.len() - k;
                for j in 0..k {
                    r[d + j] = self.sub(r[d + j], self.mul(c, f[j] as u8));
                }
            }
        }
        r.resize(k, 0);
        r.into_iter().map(u32::from).collect()
    }

    fn poly_powmod(&self, base: &[u32], mut e: u64, f: &[u32]) -> Vec<u32> {
        let k = f.len() - 1;
        let mut acc = vec![0u32; k];
        acc[0] = 1;
        let mut b = self.poly_rem(base, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), f);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), f);
            e >>= 1;
        }
        acc
    }

    /// Whether the class of `T` has order exactly `q^n - 1` modulo the monic
    /// degree-n polynomial `f` over this field.
    pub fn is_primitive_poly(&self, f: &Polynomial) -> bool {
        let Some(n) = f.degree() else { return false };
        if n == 0 || !f.is_monic() || f.coeffs()[0] == 0 {
            return false;
        }
        let group = (self.q as u64).pow(n as u32) - 1;
        let t = if n == 1 {
            vec![self.neg(f.coeffs()[0] as u8) as u32]
        } else {
            vec![0, 1]
        };
        let one = |v: &[u32]| is_one(v);
        if !one(&self.poly_powmod(&t, group, f.coeffs())) {
            return false;
        }
        prime_factors(group)
            .into_iter()
            .all(|r| !one(&self.poly_powmod(&t, group / r, f.coeffs())))
    }

    /// Lexicographically least monic primitive polynomial of degree `n` over
    /// this field (constant coefficient compared first).
    pub fn least_primitive_poly(&self, n: usize) -> Result<Polynomial> {
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be >= 1".into()));
        }
        let q = self.q as u64;
        for idx in 0..q.pow(n as u32) {
            let mut coeffs = vec![0u32; n + 1];
            let mut rest = idx;
            for i in (0..n).rev() {
                coeffs[i] = (rest % q) as u32;
                rest /= q;
            }
            coeffs[n] = 1;
            let f = Polynomial::new(coeffs);
            if self.is_primitive_poly(&f) {
                return Ok(f);
            }
        }
        Err(Error::defect(format!(
            "no primitive polynomial of degree {n} over GF({q})"
        )))
    }

    pub fn poly_eval(&self, f: &Polynomial, x: u8) -> u8 {
        f.coeffs()
            .iter()
            .rev()
            .fold(0u8, |acc, &c| self.add(self.mul(acc, x), c as u8))
    }
}
