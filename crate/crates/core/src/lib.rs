//! Exact computations with inversive coordinates: radical-field arithmetic,
//! hyperbolic forms, reflection groups, Vinberg roots, orbit enumeration and
//! integrality certificates for sphere packings and bugs.

// Errors carry exact values (bends, vectors) for reporting.
#![allow(clippy::result_large_err)]

pub mod arithmetic;
pub mod catalog;
pub mod cli;
pub mod forms;
pub mod groups;
pub mod inversive;
pub mod linalg;
pub mod orbits;
pub mod radical;
pub mod rational;
pub mod render;
pub mod vinberg;
