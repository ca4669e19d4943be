//! Endo-classes as opaque labels carrying numeric invariants.
//!
//! Squaring acts on labels only: a class is `(base label, k)` standing for
//! the `2^k`-th power of the base class, so squaring is a bijection with
//! an explicit inverse and the trivial class is fixed.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualType {
    TrivialClass,
    UnramifiedQuadratic,
    RamifiedQuadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndoError {
    #[error("class {label}: degree {degree} differs from e*f = {e}*{f}")]
    DegreeProduct { label: String, degree: u32, e: u32, f: u32 },
    #[error("class {0}: the trivial class has degree, e and f equal to 1 and is self-dual")]
    BadTrivial(String),
    #[error("class {0}: a self-dual class needs a duality type")]
    MissingDualType(String),
    #[error("class {0}: only self-dual classes carry a duality type")]
    UnexpectedDualType(String),
    #[error("class {0}: a self-dual nontrivial class has even degree")]
    OddSelfDual(String),
    #[error("class {0}: an unramified quadratic class has even f")]
    OddInertia(String),
    #[error("class {0}: a ramified quadratic class has even e")]
    OddRamification(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoClass {
    pub label: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub square_exp: i32,
    pub degree: u32,
    pub e: u32,
    pub f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_type: Option<DualType>,
    pub self_dual: bool,
}

fn is_zero(x: &i32) -> bool {
    *x == 0
}

pub const TRIVIAL_LABEL: &str = "trivial";

impl EndoClass {
    pub fn trivial() -> Self {
        EndoClass {
            label: TRIVIAL_LABEL.to_string(),
            square_exp: 0,
            degree: 1,
            e: 1,
            f: 1,
            dual_type: Some(DualType::TrivialClass),
            self_dual: true,
        }
    }

    pub fn self_dual(label: &str, e: u32, f: u32, dual_type: DualType) -> Self {
        EndoClass {
            label: label.to_string(),
            square_exp: 0,
            degree: e * f,
            e,
            f,
            dual_type: Some(dual_type),
            self_dual: true,
        }
    }

    pub fn plain(label: &str, e: u32, f: u32) -> Self {
        EndoClass {
            label: label.to_string(),
            square_exp: 0,
            degree: e * f,
            e,
            f,
            dual_type: None,
            self_dual: false,
        }
    }

    pub fn validate(&self) -> Result<(), EndoError> {
        let l = || self.display_label();
        if self.degree != self.e * self.f {
            return Err(EndoError::DegreeProduct {
                label: l(),
                degree: self.degree,
                e: self.e,
                f: self.f,
            });
        }
        match (self.self_dual, self.dual_type) {
            (true, None) => return Err(EndoError::MissingDualType(l())),
            (false, Some(_)) => return Err(EndoError::UnexpectedDualType(l())),
            _ => {}
        }
        let trivial_shape = self.degree == 1 && self.e == 1 && self.f == 1;
        match self.dual_type {
            Some(DualType::TrivialClass) if !trivial_shape => Err(EndoError::BadTrivial(l())),
            Some(DualType::TrivialClass) => Ok(()),
            Some(_) if self.degree % 2 == 1 => Err(EndoError::OddSelfDual(l())),
            Some(DualType::UnramifiedQuadratic) if self.f % 2 == 1 => {
                Err(EndoError::OddInertia(l()))
            }
            Some(DualType::RamifiedQuadratic) if self.e % 2 == 1 => {
                Err(EndoError::OddRamification(l()))
            }
            _ => Ok(()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.dual_type == Some(DualType::TrivialClass)
    }

    /// Identity of the class: base label plus squaring exponent.
    pub fn key(&self) -> (&str, i32) {
        (&self.label, self.square_exp)
    }

    pub fn square(&self) -> Self {
        self.shifted(1)
    }

    pub fn unsquare(&self) -> Self {
        self.shifted(-1)
    }

    fn shifted(&self, by: i32) -> Self {
        let mut c = self.clone();
        if !c.is_trivial() {
            c.square_exp += by;
        }
        c
    }

    pub fn display_label(&self) -> String {
        match self.square_exp {
            0 => self.label.clone(),
            1 => format!("{}^2", self.label),
            k => format!("{}^(2^{k})", self.label),
        }
    }
}

impl fmt::Display for EndoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_label())
    }
}
