//! Self-contained numerical kernels: no physics, no allocation surprises.

pub mod gamma;
pub mod numerov;
pub mod quad;
pub mod roots;

pub use gamma::gamma;
pub use numerov::{derivative_at, numerov_sweep, rk4_bridge, SweepInfo};
pub use quad::{adaptive_simpson, integral_semi_infinite};
pub use roots::{bisect, brent, golden_min};
