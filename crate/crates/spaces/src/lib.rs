//! Step-profile rearrangement calculus and the function-space norms built on
//! it: Lebesgue, weak, Lorentz and averaged-Lorentz norms of monotone
//! staircases, plus grid functions with cube-family (Morrey-scale) suprema
//! and discrete mean-oscillation norms.
//!
//! Everything is closed-form where the staircase structure allows it; the one
//! quadrature (interior pieces of the averaged norm) is adaptive with an
//! explicit budget. All operations are deterministic.

pub mod error;
pub mod grid;
pub mod indices;
pub mod io;
pub mod numeric;
pub mod profile;
pub mod rearrangement;

pub use error::Error;
pub use grid::{
    bmo_norm, family_norm, family_norm_cached, family_profiles, family_terms, Cube, CubeFamily,
    FamilyCoverage, FamilyProfiles, GridFunction, CUBE_FAMILY_CAP,
};
pub use indices::{Exponent, LorentzIndices, LorentzMethod, MorreyFlavor, MorreyIndices};
pub use io::{grid_to_json, load_function, parse_function, step_to_json, InputFunction};
pub use numeric::adaptive_simpson;
pub use profile::{Atom, StepProfile};
pub use rearrangement::{rearrange, RearrangementProfile};
