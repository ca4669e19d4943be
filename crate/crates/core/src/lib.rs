//! Exact computation of inertial Jordan sets of cuspidal representations
//! of p-adic symplectic groups, driven by finite combinatorial
//! descriptors, together with the surrounding finite-field, Hecke,
//! lattice and parameter calculus.

pub mod config;
pub mod corpus;
pub mod ffpoly;
pub mod hecke;
pub mod lusztig;
pub mod rational;
pub mod endo;
pub mod jordan;
pub mod lattice;
pub mod params;
pub mod report;
pub mod schema;
pub mod verify;
