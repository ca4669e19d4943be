use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::config;

/// Failure to construct a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("field of size {p}^{k} exceeds the bound {bound}")]
    TooLarge { p: u64, k: u32, bound: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
}

/// Elements are encoded as integers `0..q`: the base-`p` digits of the
/// index are the coefficients of the residue class modulo `modulus`,
/// lowest degree first. Index 0 is zero and index 1 is one.
pub struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field of odd characteristic, cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldInner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Builds GF(p^k) with the bound taken from the environment.
pub fn field_make(p: u64, k: u32) -> Result<FiniteField, FieldError> {
    field_make_bounded(p, k, config::cardinality_bound())
}

pub fn field_make_bounded(p: u64, k: u32, bound: u64) -> Result<FiniteField, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if p == 2 {
        return Err(FieldError::EvenCharacteristic);
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let too_large = FieldError::TooLarge { p, k, bound };
    let q = p.checked_pow(k).ok_or(too_large.clone())?;
    if q > bound || q > u32::MAX as u64 {
        return Err(too_large);
    }
    let (p, q) = (p as u32, q as u32);
    let modulus = canonical_modulus(p, k as usize);
    let mut inner = FieldInner {
        p,
        k,
        q,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
    };
    inner.build_tables();
    Ok(FiniteField(Arc::new(inner)))
}

/// Smallest monic irreducible of degree `k` over GF(p), comparing
/// coefficient vectors lexicographically from the constant term.
fn canonical_modulus(p: u32, k: usize) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k as u32);
    let mut best: Option<Vec<u32>> = None;
    for idx in 0..count {
        // Most significant digit = constant term, so `idx` order is the
        // canonical order.
        let mut c = vec![0u32; k + 1];
        let mut r = idx;
        for i in (0..k).rev() {
            c[i] = (r % p as u64) as u32;
            r /= p as u64;
        }
        c[k] = 1;
        if c[0] != 0 && prime_poly_irreducible(p, &c) {
            best = Some(c);
            break;
        }
    }
    best.expect("irreducible polynomials exist in every degree")
}

/// Trial division over the prime field, used only to pick the modulus.
fn prime_poly_irreducible(p: u32, c: &[u32]) -> bool {
    let n = c.len() - 1;
    for d in 1..=n / 2 {
        let total = (p as u64).pow(d as u32);
        for idx in 0..total {
            let mut div = vec![0u32; d + 1];
            let mut r = idx;
            for slot in div.iter_mut().take(d) {
                *slot = (r % p as u64) as u32;
                r /= p as u64;
            }
            div[d] = 1;
            if prime_poly_rem_is_zero(p, c, &div) {
                return false;
            }
        }
    }
    true
}

fn prime_poly_rem_is_zero(p: u32, a: &[u32], monic: &[u32]) -> bool {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let d = monic.len() - 1;
    let p = p as u64;
    for top in (d..r.len()).rev() {
        let lead = r[top] % p;
        if lead == 0 {
            continue;
        }
        for (j, &c) in monic.iter().enumerate().take(d + 1) {
            let idx = top - d + j;
            r[idx] = (r[idx] + p * p - lead * c as u64 % p) % p;
        }
    }
    r.iter().take(d).all(|&x| x % p == 0)
}

impl FieldInner {
    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut v = vec![0; self.k as usize];
        for d in v.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        v
    }

    fn undigits(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    /// Schoolbook product modulo the modulus; used to build the tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for top in (k..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            for j in 0..=k {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + p * p - lead * self.modulus[j] as u64) % p;
            }
        }
        let v: Vec<u32> = prod.iter().take(k).map(|&x| x as u32).collect();
        self.undigits(&v)
    }

    fn build_tables(&mut self) {
        let n = self.q - 1;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(n as usize);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..n {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.slow_mul(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }
}

impl FiniteField {
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn size(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    pub fn zero(&self) -> u32 {
        0
    }
    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.0.k == 1 {
            return (a + b) % self.0.p;
        }
        let p = self.0.p;
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.0.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.0.k {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.q - 1;
        let l = (self.0.log[a as usize] as u64 + self.0.log[b as usize] as u64) % n as u64;
        self.0.exp[l as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        Some(self.0.exp[((n - l) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64 * (e % n) % n;
        self.0.exp[l as usize]
    }

    /// The prime-field element `n mod p`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Discrete logarithm with respect to the fixed generator.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    pub fn generator(&self) -> u32 {
        self.0.exp.get(1).copied().unwrap_or(1)
    }
}
