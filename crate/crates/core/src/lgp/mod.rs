//! Local-to-global convexity: locally convex maps, weak convexity of images,
//! the closed-connected-locally-convex criterion, and the momentum demo.

pub mod klee;
pub mod local;
pub mod momentum;
pub mod weak;

pub use klee::{klee_check, KleeVerdict};
pub use local::{is_locally_convex_map, LocalConvexityReport};
pub use momentum::{momentum_demo, momentum_map, MomentumDemo};
pub use weak::{verify_weak_convexity, LgpConfig, WeakConvexityReport};
