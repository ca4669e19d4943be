//! Endo-parameters, wild parameters and the shapes of discrete Langlands
//! parameters of odd orthogonal type, over an explicit registry pairing
//! endo-classes with wild orbits.

mod endoparam;
mod foursquares;
mod klein;
pub mod registry_gen;
mod shapes;
mod wild;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::endo::{DualType, EndoError};

pub use endoparam::EndoParameter;
pub use foursquares::{four_squares_shape, nontrivial_quadruple, regular_shape, trivial_quadruple};
pub use klein::QuadChar;
pub use shapes::{
    enumerate_cuspidal_shapes, is_cuspidal, is_regular, packet_counts, validate_discrete, Block,
    DiscreteReport, LParamShape, PacketCounts, Violation,
};
pub use wild::{
    ramification_gl, ramification_gl_inverse, ramification_sp, ramification_sp_inverse,
    IrrepDescriptor, Parity, Registry, WildOrbit, WildParameter, TRIVIAL_ORBIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("endo-class {0} has multiplicity zero")]
    ZeroMultiplicity(String),
    #[error("parameter is not self-dual")]
    NotSelfDual,
    #[error("degree {0} has the wrong parity")]
    OddDegree(u64),
    #[error("label {0} is not paired in the registry")]
    UnpairedLabel(String),
    #[error("registry lacks {0}")]
    RegistryMissing(String),
    #[error("no four-squares decomposition of {0}")]
    NoSolution(u64),
    #[error("enumeration exceeds the bound {bound}")]
    TooLarge { bound: u64 },
    #[error("invalid registry: {0}")]
    BadRegistry(String),
    #[error("irrep {0}: {1}")]
    BadIrrep(String, String),
    #[error(transparent)]
    Endo(#[from] EndoError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDescriptor {
    pub tame: bool,
    pub d: u32,
    pub k_over_ktilde_ramified: bool,
    pub alpha_ramified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityDecision {
    SameParity(Parity),
    OppositeParity,
}

/// Whether the two self-dual representations attached to one inertial
/// class share a parity, and which.
pub fn parity_decision(g: GaloisDescriptor) -> ParityDecision {
    if !g.tame && g.k_over_ktilde_ramified && g.d == 1 {
        ParityDecision::SameParity(if g.alpha_ramified {
            Parity::Symplectic
        } else {
            Parity::Orthogonal
        })
    } else {
        ParityDecision::OppositeParity
    }
}

/// Whether self-dual cuspidals of relative degree `m` exist over an
/// endo-class of the given type. `m = 1` over the trivial class means the
/// quadratic characters.
pub fn existence_table(dual_type: DualType, m: u32) -> bool {
    match dual_type {
        _ if m == 0 => false,
        DualType::UnramifiedQuadratic => m % 2 == 1,
        DualType::RamifiedQuadratic | DualType::TrivialClass => m == 1 || m.is_multiple_of(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(tame: bool, d: u32, ram: bool, alpha: bool) -> GaloisDescriptor {
        GaloisDescriptor { tame, d, k_over_ktilde_ramified: ram, alpha_ramified: alpha }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_decision(g(true, 1, true, true)), ParityDecision::OppositeParity);
        assert_eq!(
            parity_decision(g(false, 1, true, true)),
            ParityDecision::SameParity(Parity::Symplectic)
        );
        assert_eq!(
            parity_decision(g(false, 1, true, false)),
            ParityDecision::SameParity(Parity::Orthogonal)
        );
        for alpha in [false, true] {
            assert_eq!(parity_decision(g(false, 2, true, alpha)), ParityDecision::OppositeParity);
            assert_eq!(parity_decision(g(false, 1, false, alpha)), ParityDecision::OppositeParity);
        }
    }

    #[test]
    fn existence_examples() {
        assert!(!existence_table(DualType::UnramifiedQuadratic, 2));
        assert!(existence_table(DualType::UnramifiedQuadratic, 3));
        assert!(existence_table(DualType::RamifiedQuadratic, 1));
        assert!(!existence_table(DualType::RamifiedQuadratic, 3));
        assert!(!existence_table(DualType::TrivialClass, 3));
        assert!(existence_table(DualType::TrivialClass, 1));
        assert!(existence_table(DualType::TrivialClass, 4));
    }
}
