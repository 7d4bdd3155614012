//! Exact-arithmetic toolkit for cutting-plane closures and rank certificates
//! on polytopes in the 0-1 cube.
//!
//! - [`exactgeom`]: rational LP, double description, hulls and intersections.
//! - [`parity`]: GF(2) systems.
//! - [`constructions`]: graphs, Tseitin polytopes, cropped cubes, expansion.
//! - [`closures`]: split / t-branch / lattice closures and rank brackets.
//! - [`certificates`]: {0,1/2}-certificate trees and their verification.

pub mod certificates;
pub mod closures;
pub mod constructions;
pub mod exactgeom;
pub mod guards;
pub mod parity;
pub mod rational;
