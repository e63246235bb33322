//! Two-body bound states in central potentials, in the reduced radial form
//!
//! ```text
//!     u''(r) = [ v(r) + l(l+1)/r^2 - E ] u(r),      hbar = 2m = 1,
//! ```
//!
//! together with moment bounds on the product `-E <r^2>` and an occurrence
//! criterion for quantum halos (states whose probability mass sits mostly
//! outside the classically allowed region).
//!
//! The crate is organized bottom-up:
//!
//! * [`numerics`] - special functions, root finding, quadrature, Numerov
//!   lattice propagation. No physics.
//! * [`potential`] - the potential families, their shape functionals
//!   (`sup(-r^2 v)`, extrema of the moment kernel `w`), and the integral
//!   functionals feeding the coupling and size bounds.
//! * [`spectrum`] - the shooting eigensolver and radial expectation values.
//! * [`coupling`] - critical couplings `g_c^N` for the onset of the N-th
//!   bound state: exact (zero-energy node counting), integral upper limits,
//!   and a WKB estimate for the nuclear well.
//! * [`bounds`] - evaluation of the upper/lower limits on `-E <r^2>` against
//!   a solved state, with applicability tracking per potential shape.
//! * [`halo`] - the halo occurrence criterion, threshold energies, parameter
//!   scans and the nuclear systematics table.

pub mod bounds;
pub mod coupling;
pub mod error;
pub mod halo;
pub mod numerics;
pub mod potential;
pub mod spectrum;
pub mod units;

pub use bounds::{report, BoundEntry, BoundKind, BoundScale, BoundSide, BoundStatus, BoundsReport};
pub use coupling::{bargmann_upper, critical_numeric, wkb_wood_saxon, CriticalCoupling};
pub use error::{Error, Result};
pub use halo::{
    assess, critical_strength, default_coupling_source, default_x0_method, exact_threshold,
    fit_nuclear, nuclear_row, nuclear_table, ratio_at_energy, scan_s, scan_t, solve_x0,
    threshold_energy, CouplingSource, ExactThreshold, HaloAssessment, HaloThreshold, NuclearFit,
    NuclearRow, RatioAtEnergy, ScanPoint, X0Method,
};
pub use potential::{Family, Potential, ShapeScan, UnitContext};
pub use spectrum::{count_bound_states, solve_state, RadialState, SolverConfig};
