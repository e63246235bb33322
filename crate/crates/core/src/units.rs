//! Physical constants and unit helpers for the two concrete systems treated
//! here: a neutron bound to a core of mass number A, and the 4He dimer.
//!
//! All solver-facing quantities are expressed in units with hbar = 2m = 1
//! (m the reduced mass), so energies come out in units of hbar^2/(2 m L^2)
//! for whatever length unit L the potential uses. The helpers below convert
//! those to MeV (nuclear, L = 1 fm scale factors applied by the caller) or
//! micro-eV (helium, L = 1 Angstrom).

/// hbar^2 / (2 m_nucleon), MeV fm^2.
pub const HBAR2_OVER_2M_NUCLEON: f64 = 20.7355;

/// hbar^2 / m(4He) = hbar^2 / (2 mu) for two 4He atoms, micro-eV Angstrom^2.
pub const HBAR2_OVER_M_HELIUM4: f64 = 1044.7;

/// Range parameter of the helium-dimer interaction model, Angstrom.
pub const HELIUM_RANGE: f64 = 2.640;

/// Diffuseness of the nuclear mean-field well, fm.
pub const NUCLEAR_DIFFUSENESS: f64 = 0.67;

/// Steepness ratio R/a of the nuclear well: alpha = 1.9 A^(1/3).
/// (Equivalently a half-density radius R = 1.9 a A^(1/3) = 1.273 A^(1/3) fm.)
pub fn nuclear_alpha(mass_number: f64) -> f64 {
    1.9 * mass_number.cbrt()
}

/// Half-density radius of the nuclear well in fm.
pub fn nuclear_radius(mass_number: f64) -> f64 {
    nuclear_alpha(mass_number) * NUCLEAR_DIFFUSENESS
}

/// hbar^2 / (2 mu a^2) for a neutron bound to a core of mass number A,
/// with a the diffuseness; this is the natural energy unit of the nuclear
/// problem, in MeV. mu = A m_N / (A + 1).
pub fn nuclear_energy_unit(mass_number: f64) -> f64 {
    HBAR2_OVER_2M_NUCLEON / (NUCLEAR_DIFFUSENESS * NUCLEAR_DIFFUSENESS) * (mass_number + 1.0)
        / mass_number
}

/// Same, but per unit half-density radius squared: hbar^2 / (2 mu R^2), MeV.
pub fn nuclear_energy_unit_radius(mass_number: f64) -> f64 {
    let r = nuclear_radius(mass_number);
    HBAR2_OVER_2M_NUCLEON * (mass_number + 1.0) / (mass_number * r * r)
}

/// hbar^2 / (2 mu R^2) for the helium dimer, micro-eV.
pub fn helium_energy_unit() -> f64 {
    HBAR2_OVER_M_HELIUM4 / (HELIUM_RANGE * HELIUM_RANGE)
}
