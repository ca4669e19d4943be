//! Dense polynomial arithmetic over a [`FiniteField`]. Coefficient
//! vectors are ascending in degree; the zero polynomial is the empty
//! vector and every other vector has a nonzero last entry.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::field::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("leading coefficient must be 1")]
    NotMonic,
    #[error("coefficient index {0} is outside the field")]
    BadCoefficient(u32),
}

pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn mul(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divmod(f: &FiniteField, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u32; r.len() - db];
    for top in (db..r.len()).rev() {
        let c = f.mul(r[top], lead_inv);
        if c == 0 {
            continue;
        }
        q[top - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let idx = top - db + j;
            r[idx] = f.sub(r[idx], f.mul(c, bj));
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    divmod(f, a, b).1
}

/// Monic gcd (empty when both inputs are zero).
pub fn gcd(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, x)
}

pub fn make_monic(f: &FiniteField, a: Vec<u32>) -> Vec<u32> {
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead).expect("trimmed");
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

/// `base^e mod m`.
pub fn powmod(f: &FiniteField, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut result = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

pub fn eval(f: &FiniteField, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// A monic polynomial of degree at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    coeffs: Vec<u32>,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<u32>) -> Result<Self, PolyError> {
        match coeffs.last() {
            None => Err(PolyError::ConstantPolynomial),
            Some(_) if coeffs.len() < 2 => Err(PolyError::ConstantPolynomial),
            Some(&1) => Ok(MonicPoly { coeffs }),
            Some(_) => Err(PolyError::NotMonic),
        }
    }

    /// Validates coefficient indices against `field` as well.
    pub fn in_field(coeffs: Vec<u32>, field: &FiniteField) -> Result<Self, PolyError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.size()) {
            return Err(PolyError::BadCoefficient(bad));
        }
        Self::new(coeffs)
    }

    /// `X - a`.
    pub fn linear(field: &FiniteField, a: u32) -> Self {
        MonicPoly {
            coeffs: vec![field.neg(a), 1],
        }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs[0]
    }

    /// Every monic polynomial of degree `m`, in canonical order.
    pub fn all_of_degree(field: &FiniteField, m: usize) -> impl Iterator<Item = MonicPoly> {
        let q = field.size() as u64;
        let total = q.pow(m as u32);
        (0..total).map(move |idx| {
            let mut c = vec![0u32; m + 1];
            let mut r = idx;
            for i in (0..m).rev() {
                c[i] = (r % q) as u32;
                r /= q;
            }
            c[m] = 1;
            MonicPoly { coeffs: c }
        })
    }

    pub fn render(&self, field: &FiniteField) -> String {
        let p = field.p();
        let coef = |c: u32| -> String {
            if c < p {
                c.to_string()
            } else {
                format!("{{{c}}}")
            }
        };
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => coef(c),
                (1, _) => mono,
                _ => format!("{}*{mono}", coef(c)),
            });
        }
        terms.join(" + ")
    }
}

/// Degree first, then coefficient vectors lexicographically from the
/// constant term.
impl Ord for MonicPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::field::field_make_bounded;

    #[test]
    fn divmod_reconstructs() {
        let f = field_make_bounded(5, 1, 100).unwrap();
        let a = vec![3, 1, 4, 1, 2];
        let b = vec![2, 0, 1];
        let (q, r) = divmod(&f, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn gcd_of_products() {
        let f = field_make_bounded(7, 1, 100).unwrap();
        let x1 = vec![f.neg(1), 1];
        let x2 = vec![f.neg(2), 1];
        let x3 = vec![f.neg(3), 1];
        let a = mul(&f, &x1, &x2);
        let b = mul(&f, &x1, &x3);
        assert_eq!(gcd(&f, &a, &b), x1);
    }

    #[test]
    fn monic_validation() {
        assert_eq!(MonicPoly::new(vec![1]).unwrap_err(), PolyError::ConstantPolynomial);
        assert_eq!(MonicPoly::new(vec![1, 2]).unwrap_err(), PolyError::NotMonic);
        assert!(MonicPoly::new(vec![0, 1]).is_ok());
    }

    #[test]
    fn rendering() {
        let f = field_make_bounded(3, 1, 100).unwrap();
        let p = MonicPoly::new(vec![2, 1, 1]).unwrap();
        assert_eq!(p.render(&f), "X^2 + X + 2");
        assert_eq!(MonicPoly::new(vec![1, 2, 0, 1]).unwrap().render(&f), "X^3 + 2*X + 1");
    }

    #[test]
    fn canonical_order_constant_term_first() {
        let f = field_make_bounded(3, 1, 100).unwrap();
        let all: Vec<MonicPoly> = MonicPoly::all_of_degree(&f, 2).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[0].coeffs(), &[0, 0, 1]);
        assert_eq!(all[1].coeffs(), &[0, 1, 1]);
    }
}
