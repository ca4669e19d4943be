use super::{Block, IrrepDescriptor, LParamShape, Parity, ParamsError, QuadChar, Registry, WildOrbit, WildParameter};
use crate::endo::DualType;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Lexicographically smallest `(a₁, a₂, a₃, a₄)` with `a₁ ≥ a₂` even,
/// `a₃ ≥ a₄` odd and `Σ aᵢ² = 4m + 2`; `m = 2` pins `a₁ = a₂ = 0`.
pub fn nontrivial_quadruple(m: u32) -> Option<[u32; 4]> {
    let total = 4 * m as u64 + 2;
    let top = isqrt(total);
    for a1 in (0..=top).step_by(2) {
        if m == 2 && a1 > 0 {
            break;
        }
        for a2 in (0..=a1).step_by(2) {
            let rest = match total.checked_sub(a1 * a1 + a2 * a2) {
                Some(r) => r,
                None => break,
            };
            for a3 in (1..=isqrt(rest)).step_by(2) {
                let last = rest - a3 * a3;
                let a4 = isqrt(last);
                if a4 * a4 == last && a4 % 2 == 1 && a4 <= a3 {
                    return Some([a1 as u32, a2 as u32, a3 as u32, a4 as u32]);
                }
            }
        }
    }
    None
}

/// Lexicographically smallest `(a₁, a₂, a₃, a₄)` with `a₂ ≥ a₃ ≥ a₄` of
/// one parity, `a₁` of the other, and `Σ aᵢ² = m`.
pub fn trivial_quadruple(m: u32) -> Option<[u32; 4]> {
    let total = m as u64;
    for a1 in 0..=isqrt(total) {
        let rest = total - a1 * a1;
        let start = 1 - a1 % 2;
        for a2 in (start..=isqrt(rest)).step_by(2) {
            let rest2 = rest - a2 * a2;
            for a3 in (start..=a2.min(isqrt(rest2))).step_by(2) {
                let last = rest2 - a3 * a3;
                let a4 = isqrt(last);
                if a4 * a4 == last && a4 % 2 == start && a4 <= a3 {
                    return Some([a1 as u32, a2 as u32, a3 as u32, a4 as u32]);
                }
            }
        }
    }
    None
}

fn check_input(wp: &WildParameter) -> Result<(), ParamsError> {
    if !wp.is_discrete_self_dual() {
        return Err(ParamsError::NotSelfDual);
    }
    if wp.dim().is_multiple_of(2) {
        return Err(ParamsError::OddDegree(wp.dim()));
    }
    Ok(())
}

fn pick<'r>(
    reg: &'r Registry,
    orbit: &WildOrbit,
    mult: u32,
    parity: Parity,
    count: usize,
) -> Result<Vec<&'r IrrepDescriptor>, ParamsError> {
    let found = reg.irreps_over(&orbit.label, mult, parity);
    if found.len() < count {
        return Err(ParamsError::RegistryMissing(format!(
            "{count} {parity:?} irreps over {}x{}",
            mult, orbit.label
        )));
    }
    Ok(found[..count].to_vec())
}

/// `ω` at the distinguished slot, then the other three characters in order.
fn characters(first: QuadChar) -> [QuadChar; 4] {
    let mut out = [first; 4];
    let mut k = 1;
    for c in QuadChar::ALL {
        if c != first {
            out[k] = c;
            k += 1;
        }
    }
    out
}

fn character_irrep(reg: &Registry, c: QuadChar) -> Result<&IrrepDescriptor, ParamsError> {
    reg.quadratic_character(c)
        .ok_or_else(|| ParamsError::RegistryMissing(format!("quadratic character {c}")))
}

/// Cuspidal discrete shape restricting to `wp`, built from four-squares
/// decompositions of the orbit multiplicities. The trivial-orbit character
/// at the odd-one-out slot absorbs the determinant of the other blocks.
pub fn four_squares_shape(wp: &WildParameter, reg: &Registry) -> Result<LParamShape, ParamsError> {
    check_input(wp)?;
    let mut blocks = Vec::new();
    let mut det = QuadChar::One;
    let mut m0 = 0;
    for (orbit, &m) in wp.terms() {
        if orbit.is_trivial() {
            m0 = m;
            continue;
        }
        let a = nontrivial_quadruple(m).ok_or(ParamsError::NoSolution(4 * m as u64 + 2))?;
        let mut sigmas = pick(reg, orbit, 1, Parity::Orthogonal, 2)?;
        sigmas.extend(pick(reg, orbit, 1, Parity::Symplectic, 2)?);
        for (sigma, &ai) in sigmas.into_iter().zip(&a) {
            for k in (1..ai).rev().step_by(2) {
                blocks.push(Block::new(sigma, k));
                det = det * sigma.det_char.pow(k as u64);
            }
        }
    }
    let a = trivial_quadruple(m0).ok_or(ParamsError::NoSolution(m0 as u64))?;
    for (c, &ai) in characters(det).into_iter().zip(&a) {
        let omega = character_irrep(reg, c)?;
        for j in 0..ai {
            blocks.push(Block::new(omega, 2 * j + 1));
        }
    }
    Ok(LParamShape::new(blocks))
}

/// Relative degrees of the distinct orthogonal summands over one orbit.
fn regular_split(dual_type: Option<DualType>, m: u32) -> Vec<u32> {
    let odd_only = dual_type == Some(DualType::UnramifiedQuadratic);
    match (odd_only, m % 2 == 1) {
        (true, true) | (false, false) => vec![m],
        _ if m == 1 => vec![1],
        _ => vec![m - 1, 1],
    }
}

/// A regular shape (all `m = 1`) restricting to `wp`.
pub fn regular_shape(wp: &WildParameter, reg: &Registry) -> Result<LParamShape, ParamsError> {
    check_input(wp)?;
    let mut blocks = Vec::new();
    let mut det = QuadChar::One;
    let mut m0 = 0;
    for (orbit, &m) in wp.terms() {
        if orbit.is_trivial() {
            m0 = m;
            continue;
        }
        let split = regular_split(orbit.paired_endo.dual_type, m);
        let mut used = Vec::<&IrrepDescriptor>::new();
        for k in split {
            let taken = used.iter().filter(|r| r.orbit_multiplicity == k).count();
            let sigma = pick(reg, orbit, k, Parity::Orthogonal, taken + 1)?[taken];
            used.push(sigma);
        }
        for sigma in used {
            blocks.push(Block::new(sigma, 1));
            det = det * sigma.det_char;
        }
    }
    if m0 > 1 {
        let trivial = reg.trivial_orbit().expect("checked by caller");
        let sigma = pick(reg, trivial, m0 - 1, Parity::Orthogonal, 1)?[0];
        blocks.push(Block::new(sigma, 1));
        det = det * sigma.det_char;
    }
    blocks.push(Block::new(character_irrep(reg, det)?, 1));
    Ok(LParamShape::new(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(a: [u32; 4]) -> u32 {
        a.iter().map(|x| x * x).sum()
    }

    #[test]
    fn quadruple_examples() {
        assert_eq!(nontrivial_quadruple(1), Some([2, 0, 1, 1]));
        assert_eq!(nontrivial_quadruple(2), Some([0, 0, 3, 1]));
        assert_eq!(trivial_quadruple(3), Some([0, 1, 1, 1]));
        assert_eq!(trivial_quadruple(1), Some([1, 0, 0, 0]));
        assert_eq!(trivial_quadruple(2), None);
    }

    #[test]
    fn quadruples_always_exist() {
        for m in 1..200 {
            let a = nontrivial_quadruple(m).unwrap();
            assert_eq!(sq(a), 4 * m + 2);
            assert!(a[0] >= a[1] && a[2] >= a[3]);
            assert!(a[0].is_multiple_of(2) && a[1].is_multiple_of(2) && a[2] % 2 == 1 && a[3] % 2 == 1);
        }
        for m in (1..200).step_by(2) {
            let a = trivial_quadruple(m).unwrap();
            assert_eq!(sq(a), m);
            assert!(a[1] >= a[2] && a[2] >= a[3]);
            let odd = a.iter().filter(|x| *x % 2 == 1).count();
            assert!(if a[0] % 2 == 1 { odd == 1 } else { odd == 3 });
        }
    }

    #[test]
    fn character_slots() {
        assert_eq!(characters(QuadChar::One), QuadChar::ALL);
        let c = characters(QuadChar::Ram1);
        assert_eq!(c[0], QuadChar::Ram1);
        assert_eq!(QuadChar::product(c), QuadChar::One);
    }

    #[test]
    fn splits() {
        use DualType::*;
        assert_eq!(regular_split(Some(UnramifiedQuadratic), 3), vec![3]);
        assert_eq!(regular_split(Some(UnramifiedQuadratic), 2), vec![1, 1]);
        assert_eq!(regular_split(Some(RamifiedQuadratic), 4), vec![4]);
        assert_eq!(regular_split(Some(RamifiedQuadratic), 3), vec![2, 1]);
        assert_eq!(regular_split(Some(RamifiedQuadratic), 1), vec![1]);
    }
}
