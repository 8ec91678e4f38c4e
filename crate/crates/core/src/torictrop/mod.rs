//! Extended tropicalization of toric varieties: strata `N(σ)`, charts
//! `Hom(S_σ, R̄)`, equivariant maps, the moment map and the Cox quotient.

mod cox;
mod moment;
mod morphism;
mod point;

pub use cox::{cox_coordinates, cox_data, cox_preimage, CoxData};
pub use moment::{moment_map, PolarizedFanData};
pub use morphism::{trop_morphism, ExtendedMonoidMap};
pub use point::{torus_coords, ExtendedPoint};
