//! Synthetic registries for tests and the verification corpus.

use super::{existence_table, IrrepDescriptor, Parity, QuadChar, Registry, WildOrbit, TRIVIAL_ORBIT};
use crate::endo::{DualType, EndoClass};

/// Self-dual class shapes `(e, f, type)` of degree at most 4.
pub const SELF_DUAL_SHAPES: [(u32, u32, DualType); 6] = [
    (1, 2, DualType::UnramifiedQuadratic),
    (1, 4, DualType::UnramifiedQuadratic),
    (2, 2, DualType::UnramifiedQuadratic),
    (2, 1, DualType::RamifiedQuadratic),
    (2, 2, DualType::RamifiedQuadratic),
    (4, 1, DualType::RamifiedQuadratic),
];

const PLAIN_SHAPES: [(u32, u32); 4] = [(1, 1), (1, 3), (3, 1), (2, 1)];

pub fn orbit_label(c: &EndoClass) -> String {
    if c.is_trivial() {
        TRIVIAL_ORBIT.to_string()
    } else {
        format!("g:{}", c.display_label())
    }
}

fn orbit(c: EndoClass) -> WildOrbit {
    WildOrbit { label: orbit_label(&c), dim: c.degree, self_dual: c.self_dual, paired_endo: c }
}

/// The four quadratic characters, ids `1`, `w_nr`, `w_ram1`, `w_ram2`.
pub fn quadratic_characters() -> Vec<IrrepDescriptor> {
    QuadChar::ALL
        .iter()
        .map(|&c| IrrepDescriptor {
            id: c.to_string(),
            dim: 1,
            parity: Parity::Orthogonal,
            det_char: c,
            inertial_id: if c.is_ramified() { c.to_string() } else { "unramified".into() },
            orbit: TRIVIAL_ORBIT.into(),
            orbit_multiplicity: 1,
        })
        .collect()
}

/// Only the trivial orbit and the quadratic characters.
pub fn minimal_registry() -> Registry {
    Registry::new(vec![orbit(EndoClass::trivial())], quadratic_characters())
        .expect("minimal registry is valid")
}

/// Two orthogonal and two symplectic irreps over `mult` copies of the
/// orbit; the second orthogonal one has determinant `ω_nr`.
fn quadruple_over(o: &WildOrbit, mult: u32) -> Vec<IrrepDescriptor> {
    let mk = |tag: &str, parity: Parity, det: QuadChar| IrrepDescriptor {
        id: format!("{}/{}x{}", o.label, tag, mult),
        dim: o.dim * mult,
        parity,
        det_char: det,
        inertial_id: format!("{}/{}x{}", o.label, &tag[..1], mult),
        orbit: o.label.clone(),
        orbit_multiplicity: mult,
    };
    vec![
        mk("o1", Parity::Orthogonal, QuadChar::One),
        mk("o2", Parity::Orthogonal, QuadChar::Nr),
        mk("s1", Parity::Symplectic, QuadChar::One),
        mk("s2", Parity::Symplectic, QuadChar::One),
    ]
}

/// `labels` base labels per self-dual shape, each registered at squaring
/// exponents 0 and 1, plus `labels` non-self-dual classes per plain shape.
/// Irreps exist over every self-dual orbit for each multiplicity up to
/// `max_mult` allowed by [`existence_table`], and at multiplicity 1.
pub fn synthetic_registry(labels: usize, max_mult: u32) -> Registry {
    let mut orbits = vec![orbit(EndoClass::trivial())];
    let mut irreps = quadratic_characters();
    for (s, &(e, f, t)) in SELF_DUAL_SHAPES.iter().enumerate() {
        for j in 0..labels {
            let base = EndoClass::self_dual(&format!("t{s}.{j}"), e, f, t);
            orbits.push(orbit(base.clone()));
            orbits.push(orbit(base.square()));
        }
    }
    for (s, &(e, f)) in PLAIN_SHAPES.iter().enumerate() {
        for j in 0..labels {
            orbits.push(orbit(EndoClass::plain(&format!("n{s}.{j}"), e, f)));
        }
    }
    for o in &orbits {
        if !o.self_dual {
            continue;
        }
        let t = o.paired_endo.dual_type.expect("self-dual");
        for mult in 1..=max_mult {
            let trivial_char = o.is_trivial() && mult == 1;
            if !trivial_char && (mult == 1 || existence_table(t, mult)) {
                irreps.extend(quadruple_over(o, mult));
            }
        }
    }
    Registry::new(orbits, irreps).expect("synthetic registry is valid")
}

/// Self-dual classes at squaring exponent 0, the domain of the
/// ramification sweeps.
pub fn base_self_dual_classes(reg: &Registry) -> Vec<EndoClass> {
    reg.orbits
        .iter()
        .map(|o| &o.paired_endo)
        .filter(|c| c.self_dual && c.square_exp == 0)
        .cloned()
        .collect()
}
