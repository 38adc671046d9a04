//! Bounds for Lebesgue's universal covering problem.
//!
//! Lower bounds come from fitting curves of constant width into circumscribed
//! parallel hexagons ([`hexfit`], [`coversearch`]) and from simulated
//! annealing ([`annealing`]). Upper bounds come from explicit cover
//! constructions ([`bounds`]).

pub mod annealing;
pub mod bounds;
pub mod coversearch;
pub mod exec;
pub mod ext;
pub mod geom;
pub mod hexfit;
pub mod widthcurves;
