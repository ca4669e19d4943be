//! Jumps of hom-lattice sequences, signature characters of the induced
//! actions on quotients, and the involution hint built from them.

use num_integer::Integer;
use thiserror::Error;

use crate::ffpoly::{FiniteField, Involution};
use crate::lusztig::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("periods differ: {0} and {1}")]
    PeriodMismatch(u32, u32),
    #[error("quotient dimension {num}/{den} is not an integer")]
    NonIntegralDimension { num: u64, den: u64 },
    #[error("invalid lattice sequence: {0}")]
    InvalidSpec(String),
    #[error("{d} does not divide {e}")]
    NotDivisor { d: u32, e: u32 },
    #[error("{num}/{den} is not an integer")]
    NonIntegral { num: u64, den: u64 },
    #[error("determinant is zero")]
    ZeroDeterminant,
}

/// A principal lattice sequence of period `e` whose jumps are `a + sℤ`,
/// every quotient having the same dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSeqSpec {
    pub e: u32,
    pub a: u32,
    pub s: u32,
    pub dim: u32,
}

impl LatticeSeqSpec {
    pub fn new(e: u32, a: u32, s: u32, dim: u32) -> Result<Self, LatticeError> {
        if e == 0 || s == 0 || !e.is_multiple_of(s) {
            return Err(LatticeError::InvalidSpec(format!("s = {s} must divide e = {e}")));
        }
        if a >= s {
            return Err(LatticeError::InvalidSpec(format!("need 0 <= a = {a} < s = {s}")));
        }
        if dim == 0 || !dim.is_multiple_of(e / s) {
            return Err(LatticeError::InvalidSpec(format!(
                "dim = {dim} must be a positive multiple of e/s = {}",
                e / s
            )));
        }
        Ok(LatticeSeqSpec { e, a, s, dim })
    }

    /// Dimension of each nonzero quotient.
    pub fn quotient_dim(&self) -> u32 {
        self.dim * self.s / self.e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JumpResult {
    /// Jumps are `coset.0 + coset.1 ℤ`.
    pub coset: (u32, u32),
    pub c: u64,
}

pub fn hom_lattice_jumps(ly: &LatticeSeqSpec, lw: &LatticeSeqSpec) -> Result<JumpResult, LatticeError> {
    if ly.e != lw.e {
        return Err(LatticeError::PeriodMismatch(ly.e, lw.e));
    }
    let g = lw.s.gcd(&ly.s);
    let a = (lw.a as i64 - ly.a as i64).rem_euclid(g as i64) as u32;
    let num = g as u64 * lw.dim as u64 * ly.dim as u64;
    let den = ly.e as u64;
    if !num.is_multiple_of(den) {
        return Err(LatticeError::NonIntegralDimension { num, den });
    }
    Ok(JumpResult {
        coset: (a, g),
        c: num / den,
    })
}

fn val2(mut n: u32) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(2) {
        n /= 2;
        v += 1;
    }
    v
}

/// Whether the hom-lattice jumps agree at `t = 0` and `t = 1`.
pub fn same_jumps(e: u32, e_w: u32, r_y: u32) -> Result<bool, LatticeError> {
    for d in [e_w, r_y] {
        if d == 0 || !e.is_multiple_of(d) {
            return Err(LatticeError::NotDivisor { d, e });
        }
    }
    Ok(val2(e_w) < val2(r_y))
}

/// `e_W · dim / lcm(r_Y, e_W)`.
pub fn signature_dimension(e_w: u32, r_y: u32, dim_f_y: u32) -> Result<u64, LatticeError> {
    if e_w == 0 || r_y == 0 {
        return Err(LatticeError::NonIntegral { num: 0, den: 0 });
    }
    let l = r_y.lcm(&e_w) as u64;
    let num = e_w as u64 * dim_f_y as u64;
    if !num.is_multiple_of(l) {
        return Err(LatticeError::NonIntegral { num, den: l });
    }
    Ok(num / l)
}

/// `det^((q-1)/2)` as a sign.
pub fn signature_char(field: &FiniteField, det: u32) -> Result<Sign, LatticeError> {
    if det == 0 {
        return Err(LatticeError::ZeroDeterminant);
    }
    let v = field.pow(det, ((field.size() - 1) / 2) as u64);
    Ok(if v == 1 { Sign::Plus } else { Sign::Minus })
}

/// `NegateVariable` iff an odd number of terms have odd `d`.
pub fn epsilon_involution_hint(terms: &[(u32, u32, u32)]) -> Result<Involution, LatticeError> {
    let mut odd = false;
    for &(e_w, r_y, dim) in terms {
        odd ^= signature_dimension(e_w, r_y, dim)? % 2 == 1;
    }
    Ok(if odd {
        Involution::NegateVariable
    } else {
        Involution::Identity
    })
}

/// Explicit models used as oracles.
pub mod model {
    use super::*;

    /// Basis valuations of a split lattice sequence realizing `spec`:
    /// `val(ϖ^u x_j) = e·u + pos_j`.
    pub fn basis_positions(spec: &LatticeSeqSpec) -> Vec<i64> {
        let per = spec.quotient_dim();
        (0..spec.e / spec.s)
            .flat_map(|k| std::iter::repeat_n((spec.a + k * spec.s) as i64, per as usize))
            .collect()
    }

    /// Largest `t` with `E Λ_Y(i) ⊆ Λ_W(i + t)` for all `i`, where `E`
    /// sends basis vector `y` (position `b`) to `w` (position `a`).
    fn elementary_valuation(e: i64, a: i64, b: i64) -> i64 {
        (0..e)
            .map(|i| {
                let u = Integer::div_ceil(&(i - b), &e);
                e * u + a - i
            })
            .min()
            .expect("e >= 1")
    }

    /// `dim C(i)/C(i+1)` for `i` in `0..e`.
    pub fn hom_quotient_dims(ly: &LatticeSeqSpec, lw: &LatticeSeqSpec) -> Vec<u64> {
        let e = ly.e as i64;
        let mut dims = vec![0u64; e as usize];
        for &a in &basis_positions(lw) {
            for &b in &basis_positions(ly) {
                let v = elementary_valuation(e, a, b);
                dims[v.rem_euclid(e) as usize] += 1;
            }
        }
        dims
    }

    /// The jump coset and common quotient dimension read off the model,
    /// or `None` if the quotient dimensions are not uniform on an
    /// arithmetic progression.
    pub fn jump_result(ly: &LatticeSeqSpec, lw: &LatticeSeqSpec) -> Option<JumpResult> {
        let dims = hom_quotient_dims(ly, lw);
        let jumps: Vec<u32> = (0..dims.len() as u32).filter(|&i| dims[i as usize] > 0).collect();
        let first = *jumps.first()?;
        let g = jumps
            .windows(2)
            .map(|w| w[1] - w[0])
            .chain(std::iter::once(first + dims.len() as u32 - jumps[jumps.len() - 1]))
            .fold(0, |acc: u32, d| acc.gcd(&d));
        let c = dims[first as usize];
        let uniform = (0..dims.len() as u32).all(|i| {
            let on = (i as i64 - first as i64).rem_euclid(g as i64) == 0;
            dims[i as usize] == if on { c } else { 0 }
        });
        uniform.then_some(JumpResult {
            coset: (first % g, g),
            c,
        })
    }

    /// Sign of the permutation `v ↦ g v` of `F_q^n`, by cycle
    /// decomposition. `g` is row-major `n × n`.
    pub fn permutation_sign(field: &FiniteField, g: &[u32], n: usize) -> Sign {
        let q = field.size() as usize;
        let total = q.pow(n as u32);
        let decode = |mut idx: usize| {
            let mut v = vec![0u32; n];
            for c in v.iter_mut() {
                *c = (idx % q) as u32;
                idx /= q;
            }
            v
        };
        let encode = |v: &[u32]| v.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize);
        let image: Vec<usize> = (0..total)
            .map(|idx| {
                let v = decode(idx);
                let w: Vec<u32> = (0..n)
                    .map(|r| {
                        (0..n).fold(0, |acc, c| field.add(acc, field.mul(g[r * n + c], v[c])))
                    })
                    .collect();
                encode(&w)
            })
            .collect();
        let mut seen = vec![false; total];
        let mut transpositions = 0usize;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = image[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        Sign::of_parity((transpositions % 2) as u32)
    }

    /// Determinant of a row-major matrix of size at most 2.
    pub fn det(field: &FiniteField, g: &[u32], n: usize) -> u32 {
        match n {
            1 => g[0],
            2 => field.sub(field.mul(g[0], g[3]), field.mul(g[1], g[2])),
            _ => unimplemented!("sizes above 2 are not modelled"),
        }
    }

    /// Number of points of `a + gℤ` in `[lo, hi)`.
    pub fn coset_points(a: u32, g: u32, lo: i64, hi: i64) -> u64 {
        (lo..hi).filter(|x| (x - a as i64).rem_euclid(g as i64) == 0).count() as u64
    }

    /// Jump coset of the hom-lattice sequence at `t ∈ {0, 1}`: `Λ_Y` has
    /// period `e/r_Y` starting at `a_Y`, `Λ_W` has period `e/e_W`
    /// shifted by `t·e/(2e_W)`.
    pub fn shifted_coset(e: u32, e_w: u32, r_y: u32, a_y: u32, t: u8) -> (u32, u32) {
        let (s_w, s_y) = (e / e_w, e / r_y);
        let a_w = t as u32 * e / (2 * e_w);
        let g = s_w.gcd(&s_y);
        ((a_w as i64 - a_y as i64).rem_euclid(g as i64) as u32, g)
    }
}
