//! Filtered factorization of sampled maps and étale certificates.

pub mod cells;
pub mod etale;
pub mod examples;
mod intgeom;
pub mod neighborhoods;
pub mod openness;
pub mod quotient;
pub mod sampled;

pub use etale::{lift_atlas, verify_etale, EtaleCertificate, FiberEntry, LiftedStructure};
pub use neighborhoods::NeighborhoodFamily;
pub use openness::{is_locally_open_onto_image, OpennessReport, OpennessWitness};
pub use quotient::{filtered_quotient, monotone_light, Factorization};
pub use sampled::{MapDoc, SampledMap};

/// Default filter depth.
pub const DEFAULT_DEPTH: usize = 3;
