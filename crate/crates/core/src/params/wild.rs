use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{EndoParameter, ParamsError, QuadChar};
use crate::endo::EndoClass;

pub const TRIVIAL_ORBIT: &str = "1";

/// An orbit of irreducible representations of wild inertia, paired with
/// the endo-class of the same degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WildOrbit {
    pub label: String,
    pub dim: u32,
    pub self_dual: bool,
    #[serde(rename = "endo")]
    pub paired_endo: EndoClass,
}

impl WildOrbit {
    pub fn is_trivial(&self) -> bool {
        self.paired_endo.is_trivial()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WildParameter {
    terms: BTreeMap<WildOrbit, u32>,
}

impl WildParameter {
    pub fn make<I: IntoIterator<Item = (WildOrbit, u32)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (o, m) in terms {
            if m > 0 {
                *map.entry(o).or_insert(0) += m;
            }
        }
        WildParameter { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<WildOrbit, u32> {
        &self.terms
    }

    pub fn dim(&self) -> u64 {
        self.terms.iter().map(|(o, &m)| m as u64 * o.dim as u64).sum()
    }

    pub fn is_discrete_self_dual(&self) -> bool {
        self.terms.keys().all(|o| o.self_dual)
    }

    pub fn multiplicity(&self, label: &str) -> u32 {
        self.terms
            .iter()
            .find(|(o, _)| o.label == label)
            .map_or(0, |(_, &m)| m)
    }

    pub fn add(&self, other: &WildParameter) -> WildParameter {
        WildParameter::make(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(o, &m)| (o.clone(), m)),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Orthogonal,
    Symplectic,
}

impl Parity {
    /// The parity a Jordan size `m` forces: orthogonal σ for odd `m`.
    pub fn required_for(m: u32) -> Parity {
        if m % 2 == 1 {
            Parity::Orthogonal
        } else {
            Parity::Symplectic
        }
    }
}

/// An irreducible self-dual representation of the Weil group, known only
/// through its invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepDescriptor {
    pub id: String,
    pub dim: u32,
    pub parity: Parity,
    pub det_char: QuadChar,
    pub inertial_id: String,
    pub orbit: String,
    pub orbit_multiplicity: u32,
}

impl IrrepDescriptor {
    pub fn validate(&self) -> Result<(), ParamsError> {
        let bad = |why: &str| Err(ParamsError::BadIrrep(self.id.clone(), why.to_string()));
        if self.dim == 0 || self.orbit_multiplicity == 0 {
            return bad("dimension and orbit multiplicity must be positive");
        }
        if self.dim % 2 == 1 && (self.dim != 1 || self.parity != Parity::Orthogonal) {
            return bad("odd dimension forces an orthogonal character");
        }
        if self.parity == Parity::Symplectic && self.det_char != QuadChar::One {
            return bad("symplectic representations have trivial determinant");
        }
        if self.dim == 1 && self.det_char == QuadChar::One && self.orbit != TRIVIAL_ORBIT {
            return bad("the trivial character restricts to the trivial orbit");
        }
        Ok(())
    }
}

/// The pairing table between endo-classes and wild orbits, and the
/// available irreducible representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    pub orbits: Vec<WildOrbit>,
    pub irreps: Vec<IrrepDescriptor>,
}

impl Registry {
    pub fn new(orbits: Vec<WildOrbit>, irreps: Vec<IrrepDescriptor>) -> Result<Self, ParamsError> {
        let reg = Registry { orbits, irreps };
        reg.validate()?;
        Ok(reg)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        let mut labels = BTreeSet::new();
        let mut endos = BTreeSet::new();
        for o in &self.orbits {
            o.paired_endo.validate()?;
            if !labels.insert(o.label.as_str()) {
                return Err(ParamsError::BadRegistry(format!("orbit {} repeated", o.label)));
            }
            if !endos.insert(o.paired_endo.key()) {
                return Err(ParamsError::BadRegistry(format!(
                    "endo-class {} paired twice",
                    o.paired_endo
                )));
            }
            if o.dim != o.paired_endo.degree || o.self_dual != o.paired_endo.self_dual {
                return Err(ParamsError::BadRegistry(format!(
                    "orbit {} disagrees with its endo-class",
                    o.label
                )));
            }
            if o.self_dual && o.dim == 1 && (!o.is_trivial() || o.label != TRIVIAL_ORBIT) {
                return Err(ParamsError::BadRegistry(format!(
                    "orbit {}: the only self-dual orbit of dimension 1 is {TRIVIAL_ORBIT:?}",
                    o.label
                )));
            }
        }
        let mut ids = BTreeSet::new();
        for r in &self.irreps {
            r.validate()?;
            if !ids.insert(r.id.as_str()) {
                return Err(ParamsError::BadRegistry(format!("irrep {} repeated", r.id)));
            }
            let o = self
                .orbit(&r.orbit)
                .ok_or_else(|| ParamsError::UnpairedLabel(r.orbit.clone()))?;
            if r.dim != o.dim * r.orbit_multiplicity {
                return Err(ParamsError::BadIrrep(
                    r.id.clone(),
                    "dimension differs from its wild restriction".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn orbit(&self, label: &str) -> Option<&WildOrbit> {
        self.orbits.iter().find(|o| o.label == label)
    }

    pub fn orbit_of(&self, c: &EndoClass) -> Option<&WildOrbit> {
        self.orbits.iter().find(|o| o.paired_endo.key() == c.key())
    }

    pub fn trivial_orbit(&self) -> Option<&WildOrbit> {
        self.orbits.iter().find(|o| o.is_trivial())
    }

    pub fn irrep(&self, id: &str) -> Option<&IrrepDescriptor> {
        self.irreps.iter().find(|r| r.id == id)
    }

    /// Irreps restricting to `mult` copies of the orbit, sorted by id.
    pub fn irreps_over(&self, orbit: &str, mult: u32, parity: Parity) -> Vec<&IrrepDescriptor> {
        let mut v: Vec<_> = self
            .irreps
            .iter()
            .filter(|r| r.orbit == orbit && r.orbit_multiplicity == mult && r.parity == parity)
            .collect();
        v.sort();
        v
    }

    /// The one-dimensional representation with the given determinant.
    pub fn quadratic_character(&self, chi: QuadChar) -> Option<&IrrepDescriptor> {
        self.irreps
            .iter()
            .find(|r| r.dim == 1 && r.det_char == chi && r.orbit == TRIVIAL_ORBIT)
    }

    /// Wild restriction of a representation.
    pub fn restriction(&self, r: &IrrepDescriptor) -> Result<WildParameter, ParamsError> {
        let o = self
            .orbit(&r.orbit)
            .ok_or_else(|| ParamsError::UnpairedLabel(r.orbit.clone()))?;
        Ok(WildParameter::make([(o.clone(), r.orbit_multiplicity)]))
    }
}

/// Term-wise `Θ ↦ γ(Θ)`.
pub fn ramification_gl(ep: &EndoParameter, reg: &Registry) -> Result<WildParameter, ParamsError> {
    let mut terms = Vec::new();
    for (c, &m) in ep.terms() {
        let o = reg
            .orbit_of(c)
            .ok_or_else(|| ParamsError::UnpairedLabel(c.display_label()))?;
        terms.push((o.clone(), m));
    }
    Ok(WildParameter::make(terms))
}

pub fn ramification_gl_inverse(wp: &WildParameter, reg: &Registry) -> Result<EndoParameter, ParamsError> {
    let mut terms = Vec::new();
    for (o, &m) in wp.terms() {
        let known = reg
            .orbit(&o.label)
            .ok_or_else(|| ParamsError::UnpairedLabel(o.label.clone()))?;
        terms.push((known.paired_endo.clone(), m));
    }
    EndoParameter::make(terms)
}

/// `1 ⊕ ⊕ m_Θ [γ(Θ²)]`.
pub fn ramification_sp(ep: &EndoParameter, reg: &Registry) -> Result<WildParameter, ParamsError> {
    if !ep.is_self_dual() {
        return Err(ParamsError::NotSelfDual);
    }
    let trivial = reg
        .trivial_orbit()
        .ok_or_else(|| ParamsError::UnpairedLabel(TRIVIAL_ORBIT.into()))?;
    let mut terms = vec![(trivial.clone(), 1)];
    for (c, &m) in ep.terms() {
        let sq = c.square();
        let o = reg
            .orbit_of(&sq)
            .ok_or_else(|| ParamsError::UnpairedLabel(sq.display_label()))?;
        terms.push((o.clone(), m));
    }
    Ok(WildParameter::make(terms))
}

/// Inverse of [`ramification_sp`] on discrete self-dual parameters of odd
/// dimension.
pub fn ramification_sp_inverse(wp: &WildParameter, reg: &Registry) -> Result<EndoParameter, ParamsError> {
    if !wp.is_discrete_self_dual() {
        return Err(ParamsError::NotSelfDual);
    }
    let trivial = reg
        .trivial_orbit()
        .ok_or_else(|| ParamsError::UnpairedLabel(TRIVIAL_ORBIT.into()))?;
    if wp.multiplicity(&trivial.label) == 0 {
        return Err(ParamsError::OddDegree(wp.dim()));
    }
    let less = WildParameter::make(wp.terms().iter().map(|(o, &m)| {
        (o.clone(), if o.label == trivial.label { m - 1 } else { m })
    }));
    Ok(ramification_gl_inverse(&less, reg)?.unsquare())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::registry_gen::{base_self_dual_classes, synthetic_registry};

    #[test]
    fn sp_is_gl_of_iota() {
        let reg = synthetic_registry(2, 3);
        let classes = base_self_dual_classes(&reg);
        for a in &classes {
            for b in &classes {
                let ep = EndoParameter::make([(a.clone(), 1), (b.clone(), 2)]).unwrap();
                if ep.degree() % 2 == 1 {
                    continue;
                }
                let sp = ramification_sp(&ep, &reg).unwrap();
                assert_eq!(sp, ramification_gl(&ep.iota_2n().unwrap(), &reg).unwrap());
                assert_eq!(sp.dim(), ep.degree() + 1);
                assert!(sp.is_discrete_self_dual());
                assert_eq!(ramification_sp_inverse(&sp, &reg).unwrap(), ep);
            }
        }
    }

    #[test]
    fn empty_and_trivial() {
        let reg = synthetic_registry(1, 1);
        let sp = ramification_sp(&EndoParameter::default(), &reg).unwrap();
        assert_eq!(sp.multiplicity(TRIVIAL_ORBIT), 1);
        assert_eq!(sp.dim(), 1);
        let t = EndoParameter::make([(EndoClass::trivial(), 3)]).unwrap();
        let gl = ramification_gl(&t, &reg).unwrap();
        assert_eq!(gl.multiplicity(TRIVIAL_ORBIT), 3);
        assert_eq!(ramification_gl_inverse(&gl, &reg).unwrap(), t);
    }

    #[test]
    fn registry_rejects_inconsistencies() {
        let mut reg = synthetic_registry(1, 1);
        reg.orbits[1].dim += 1;
        assert!(matches!(reg.validate(), Err(ParamsError::BadRegistry(_))));
        let mut reg = synthetic_registry(1, 1);
        reg.irreps[0].parity = Parity::Symplectic;
        assert!(matches!(reg.validate(), Err(ParamsError::BadIrrep(..))));
        let mut reg = synthetic_registry(1, 1);
        reg.irreps[5].orbit = "nowhere".into();
        assert!(matches!(reg.validate(), Err(ParamsError::UnpairedLabel(_))));
        let unknown = EndoParameter::make([(EndoClass::plain("zz", 1, 1), 1)]).unwrap();
        assert!(matches!(ramification_gl(&unknown, &reg), Err(ParamsError::UnpairedLabel(_))));
    }
}
