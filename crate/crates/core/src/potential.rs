//! Central-potential families and their shape functionals.
//!
//! Every bound-supporting family except `power_law` can be written as
//! V(r) = -g L^-2 v(r/L) with a dimensionless shape v and a length scale L
//! (the range R, or the diffuseness a for the Wood-Saxon well). The moment
//! kernel W(r) = -(6V + rV') r^2 and the envelope -r^2 V drive the size
//! bounds; the integrals I, J, B feed the nodeless upper limit and the
//! critical-coupling estimate.

use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, bisect, gamma, golden_min, integral_semi_infinite};
use crate::units;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Dimensionless,
    Physical,
}

/// Conversion context between solver units (hbar = 2m = 1) and physical ones.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitContext {
    pub mode: UnitMode,
    /// hbar^2/(2 mu) in energy x length^2; exactly 1 in dimensionless mode.
    pub kinetic_scale: f64,
    pub energy_label: &'static str,
    pub length_label: &'static str,
}

impl UnitContext {
    pub fn dimensionless() -> Self {
        UnitContext {
            mode: UnitMode::Dimensionless,
            kinetic_scale: 1.0,
            energy_label: "1/L^2",
            length_label: "L",
        }
    }

    /// Two 4He atoms: lengths in Angstrom, energies in micro-eV.
    pub fn helium() -> Self {
        UnitContext {
            mode: UnitMode::Physical,
            kinetic_scale: units::HBAR2_OVER_M_HELIUM4,
            energy_label: "ueV",
            length_label: "angstrom",
        }
    }

    /// Neutron + core of mass number A: lengths in fm, energies in MeV.
    pub fn nuclear(mass_number: f64) -> Self {
        UnitContext {
            mode: UnitMode::Physical,
            kinetic_scale: units::HBAR2_OVER_2M_NUCLEON * (mass_number + 1.0) / mass_number,
            energy_label: "MeV",
            length_label: "fm",
        }
    }
}

impl Default for UnitContext {
    fn default() -> Self {
        UnitContext::dimensionless()
    }
}

/// Parametric families. Strengths g (and well depths V0) are positive for
/// attraction; exponents are reals so the large-n scans stay cheap.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// V = g r^p, confining (virial and kinetic-bound checks).
    PowerLaw { p: f64, g: f64 },
    /// V = g R^-2 [ (R/r)^p_rep - (R/r)^p_att ].
    LjPair {
        p_rep: f64,
        p_att: f64,
        g: f64,
        r: f64,
    },
    /// V = -g R^-2 / (1 + (r/R)^n), n >= 3.
    RationalN { n: f64, g: f64, r: f64 },
    /// V = g R^-2 [ (R/r)^n - (R/r)^4 ], n >= 5.
    MixedRep4 { n: f64, g: f64, r: f64 },
    /// V = -g R^-2 exp(-(r/R)^n).
    ExpN { n: f64, g: f64, r: f64 },
    /// V = -V0 / (1 + exp((r - R)/a)).
    WoodSaxon { v0: f64, r: f64, a: f64 },
    /// V = -V0 for r <= R, 0 beyond.
    SquareWell { v0: f64, r: f64 },
    /// V = -V0 exp(-r/R) for r <= R, 0 beyond.
    TruncatedExp { v0: f64, r: f64 },
    /// V = -g R^-1 exp(-r/R) / r.
    Yukawa { g: f64, r: f64 },
    /// V = -g R^-2 / (1 + (r/R)^3).
    RationalCubed { g: f64, r: f64 },
    /// V = R^-2 [ a (R/r)^6 - b (R/r)^2 ]; constant moment kernel W = 4b.
    WConstant { a: f64, b: f64, r: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::PowerLaw { .. } => "power-law",
            Family::LjPair { .. } => "lj-pair",
            Family::RationalN { .. } => "rational-n",
            Family::MixedRep4 { .. } => "mixed-rep4",
            Family::ExpN { .. } => "exp-n",
            Family::WoodSaxon { .. } => "wood-saxon",
            Family::SquareWell { .. } => "square-well",
            Family::TruncatedExp { .. } => "truncated-exp",
            Family::Yukawa { .. } => "yukawa",
            Family::RationalCubed { .. } => "rational-cubed",
            Family::WConstant { .. } => "w-constant",
        }
    }
}

/// Tail classification at large r, in units of the family length scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailKind {
    /// |V| ~ (coeff/L^2) (r/L)^-p.
    Power { p: f64 },
    /// Exponential or faster.
    Exponential,
    /// Identically zero beyond x_edge (r/L).
    FiniteRange { x_edge: f64 },
    /// Exactly r^-2: borderline for state counting and L+.
    InverseSquare,
    /// Grows without bound.
    Confining,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub value: f64,
    /// Radius where the extremum is attained; 0 or infinity for limits.
    pub location: f64,
}

/// Extrema of -r^2 V and of W over (0, inf). `None` marks an unbounded
/// functional (the corresponding size bound is then inapplicable).
#[derive(Debug, Clone)]
pub struct ShapeScan {
    pub sup_neg_r2v: Option<Extremum>,
    pub sup_w: Option<Extremum>,
    pub inf_w: Option<Extremum>,
    pub w_nonnegative: bool,
    /// Jump discontinuities make rV' distributional; W extrema are withheld.
    pub w_distributional: bool,
    /// Pure r^-2 tail: counting and L+ results should be read with care.
    pub r2_tail_warning: bool,
    pub grid_points: usize,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub points: usize,
    /// Grid spans [span_low * L, span_high * L].
    pub span_low: f64,
    pub span_high: f64,
    pub refine_rtol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            points: 2000,
            span_low: 1e-4,
            span_high: 1e4,
            refine_rtol: 1e-10,
        }
    }
}

/// Integral functionals: I = -1 + int r V^- dr, J = int r^3 [V^-]^2 dr,
/// B = int sqrt(v^-(x)) dx. A `None` member diverges. `v2_integrable`
/// records whether int [V^-]^2 dr converges at the origin, a separate
/// precondition of the nodeless upper limit.
#[derive(Debug, Clone, Copy)]
pub struct IntegralFunctionals {
    pub i: Option<f64>,
    pub j: Option<f64>,
    pub b: Option<f64>,
    pub v2_integrable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pub family: Family,
    pub units: UnitContext,
}

impl Potential {
    pub fn new(family: Family, units: UnitContext) -> Result<Self> {
        validate(&family)?;
        Ok(Potential { family, units })
    }

    pub fn dimensionless(family: Family) -> Result<Self> {
        Potential::new(family, UnitContext::dimensionless())
    }

    pub fn power_law(p: f64, g: f64) -> Result<Self> {
        Potential::dimensionless(Family::PowerLaw { p, g })
    }
    pub fn lj_pair(p_rep: f64, p_att: f64, g: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::LjPair { p_rep, p_att, g, r })
    }
    /// The quadratic-pair family (p_rep, p_att) = (2(n-1), n).
    pub fn attractive_pair(n: f64, g: f64, r: f64) -> Result<Self> {
        Potential::lj_pair(2.0 * (n - 1.0), n, g, r)
    }
    pub fn rational_n(n: f64, g: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::RationalN { n, g, r })
    }
    pub fn mixed_rep4(n: f64, g: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::MixedRep4 { n, g, r })
    }
    pub fn exp_n(n: f64, g: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::ExpN { n, g, r })
    }
    pub fn wood_saxon(v0: f64, r: f64, a: f64) -> Result<Self> {
        Potential::dimensionless(Family::WoodSaxon { v0, r, a })
    }
    pub fn square_well(v0: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::SquareWell { v0, r })
    }
    pub fn truncated_exp(v0: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::TruncatedExp { v0, r })
    }
    pub fn yukawa(g: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::Yukawa { g, r })
    }
    pub fn rational_cubed(g: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::RationalCubed { g, r })
    }
    pub fn w_constant(a: f64, b: f64, r: f64) -> Result<Self> {
        Potential::dimensionless(Family::WConstant { a, b, r })
    }

    /// Length scale L of the x = r/L normalization (diffuseness for the
    /// Wood-Saxon well, range R otherwise, 1 for power laws).
    pub fn scale_length(&self) -> f64 {
        match &self.family {
            Family::PowerLaw { .. } => 1.0,
            Family::LjPair { r, .. }
            | Family::RationalN { r, .. }
            | Family::MixedRep4 { r, .. }
            | Family::ExpN { r, .. }
            | Family::SquareWell { r, .. }
            | Family::TruncatedExp { r, .. }
            | Family::Yukawa { r, .. }
            | Family::RationalCubed { r, .. }
            | Family::WConstant { r, .. } => *r,
            Family::WoodSaxon { a, .. } => *a,
        }
    }

    /// Dimensionless strength g of V = -g L^-2 v(r/L), when that form exists.
    pub fn coupling(&self) -> Option<f64> {
        match &self.family {
            Family::PowerLaw { .. } | Family::WConstant { .. } => None,
            Family::LjPair { g, .. }
            | Family::RationalN { g, .. }
            | Family::MixedRep4 { g, .. }
            | Family::ExpN { g, .. }
            | Family::Yukawa { g, .. }
            | Family::RationalCubed { g, .. } => Some(*g),
            Family::WoodSaxon { v0, a, .. } => Some(v0 * a * a),
            Family::SquareWell { v0, r } | Family::TruncatedExp { v0, r } => Some(v0 * r * r),
        }
    }

    /// Same potential with the dimensionless strength replaced by g.
    pub fn with_coupling(&self, g: f64) -> Result<Potential> {
        let family = match &self.family {
            Family::LjPair {
                p_rep, p_att, r, ..
            } => Family::LjPair {
                p_rep: *p_rep,
                p_att: *p_att,
                g,
                r: *r,
            },
            Family::RationalN { n, r, .. } => Family::RationalN { n: *n, g, r: *r },
            Family::MixedRep4 { n, r, .. } => Family::MixedRep4 { n: *n, g, r: *r },
            Family::ExpN { n, r, .. } => Family::ExpN { n: *n, g, r: *r },
            Family::Yukawa { r, .. } => Family::Yukawa { g, r: *r },
            Family::RationalCubed { r, .. } => Family::RationalCubed { g, r: *r },
            Family::WoodSaxon { r, a, .. } => Family::WoodSaxon {
                v0: g / (a * a),
                r: *r,
                a: *a,
            },
            Family::SquareWell { r, .. } => Family::SquareWell {
                v0: g / (r * r),
                r: *r,
            },
            Family::TruncatedExp { r, .. } => Family::TruncatedExp {
                v0: g / (r * r),
                r: *r,
            },
            other => {
                return Err(Error::Unsupported(format!(
                    "no single-strength form for {}",
                    other.name()
                )))
            }
        };
        Potential::new(family, self.units.clone())
    }

    /// Dimensionless attractive shape v(x) with V = -g L^-2 v(r/L)
    /// (negative where the potential is repulsive).
    pub fn shape_v(&self, x: f64) -> Option<f64> {
        match &self.family {
            Family::PowerLaw { .. } | Family::WConstant { .. } => None,
            Family::LjPair { p_rep, p_att, .. } => Some(x.powf(-p_att) - x.powf(-p_rep)),
            Family::RationalN { n, .. } => Some(1.0 / (1.0 + x.powf(*n))),
            Family::MixedRep4 { n, .. } => Some(x.powf(-4.0) - x.powf(-*n)),
            Family::ExpN { n, .. } => Some((-x.powf(*n)).exp()),
            Family::WoodSaxon { r, a, .. } => {
                let alpha = r / a;
                Some(1.0 / (1.0 + (x - alpha).exp()))
            }
            Family::SquareWell { .. } => Some(if x <= 1.0 { 1.0 } else { 0.0 }),
            Family::TruncatedExp { .. } => Some(if x <= 1.0 { (-x).exp() } else { 0.0 }),
            Family::Yukawa { .. } => Some((-x).exp() / x),
            Family::RationalCubed { .. } => Some(1.0 / (1.0 + x * x * x)),
        }
    }

    pub fn tail(&self) -> TailKind {
        match &self.family {
            Family::PowerLaw { .. } => TailKind::Confining,
            Family::LjPair { p_att, .. } => TailKind::Power { p: *p_att },
            Family::RationalN { n, .. } => TailKind::Power { p: *n },
            Family::MixedRep4 { .. } => TailKind::Power { p: 4.0 },
            Family::RationalCubed { .. } => TailKind::Power { p: 3.0 },
            Family::ExpN { .. } | Family::WoodSaxon { .. } | Family::Yukawa { .. } => {
                TailKind::Exponential
            }
            Family::SquareWell { .. } | Family::TruncatedExp { .. } => {
                TailKind::FiniteRange { x_edge: 1.0 }
            }
            Family::WConstant { .. } => TailKind::InverseSquare,
        }
    }

    /// Radii where V jumps (stage seams for integrators; derivative poles).
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.family {
            Family::SquareWell { r, .. } | Family::TruncatedExp { r, .. } => vec![*r],
            _ => Vec::new(),
        }
    }

    /// Finite-range wells keep the weak-binding lower limit even though
    /// their W picks up a boundary term.
    pub fn finite_range_lower_limit(&self) -> bool {
        matches!(
            self.family,
            Family::SquareWell { .. } | Family::TruncatedExp { .. }
        )
    }

    pub fn is_confining(&self) -> bool {
        matches!(self.family, Family::PowerLaw { .. })
    }

    /// V(r); r must be positive.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::InvalidInput(format!(
                "radius must be positive, got {r}"
            )));
        }
        Ok(self.eval_unchecked(r))
    }

    pub(crate) fn eval_unchecked(&self, r: f64) -> f64 {
        match &self.family {
            Family::PowerLaw { p, g } => g * r.powf(*p),
            Family::WConstant { a, b, r: rr } => {
                let x = r / rr;
                (a * x.powf(-6.0) - b * x.powf(-2.0)) / (rr * rr)
            }
            Family::LjPair {
                p_rep,
                p_att,
                g,
                r: rr,
            } => {
                let x = r / rr;
                g / (rr * rr) * (x.powf(-p_rep) - x.powf(-p_att))
            }
            Family::RationalN { n, g, r: rr } => {
                let x = r / rr;
                -g / (rr * rr) / (1.0 + x.powf(*n))
            }
            Family::MixedRep4 { n, g, r: rr } => {
                let x = r / rr;
                g / (rr * rr) * (x.powf(-*n) - x.powf(-4.0))
            }
            Family::ExpN { n, g, r: rr } => {
                let x = r / rr;
                -g / (rr * rr) * (-x.powf(*n)).exp()
            }
            Family::WoodSaxon { v0, r: rr, a } => -v0 / (1.0 + ((r - rr) / a).exp()),
            Family::SquareWell { v0, r: rr } => {
                if r <= *rr {
                    -v0
                } else {
                    0.0
                }
            }
            Family::TruncatedExp { v0, r: rr } => {
                if r <= *rr {
                    -v0 * (-r / rr).exp()
                } else {
                    0.0
                }
            }
            Family::Yukawa { g, r: rr } => -g / rr * (-r / rr).exp() / r,
            Family::RationalCubed { g, r: rr } => {
                let x = r / rr;
                -g / (rr * rr) / (1.0 + x * x * x)
            }
        }
    }

    /// Analytic V'(r); errors at jump radii.
    pub fn derivative(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::InvalidInput(format!(
                "radius must be positive, got {r}"
            )));
        }
        for b in self.breakpoints() {
            if (r - b).abs() <= 1e-12 * b {
                return Err(Error::InvalidInput(format!(
                    "potential discontinuous at r = {b}; derivative undefined"
                )));
            }
        }
        Ok(match &self.family {
            Family::PowerLaw { p, g } => g * p * r.powf(p - 1.0),
            Family::WConstant { a, b, r: rr } => {
                let x = r / rr;
                (-6.0 * a * x.powf(-7.0) + 2.0 * b * x.powf(-3.0)) / (rr * rr * rr)
            }
            Family::LjPair {
                p_rep,
                p_att,
                g,
                r: rr,
            } => {
                let x = r / rr;
                g / (rr * rr * rr) * (-p_rep * x.powf(-p_rep - 1.0) + p_att * x.powf(-p_att - 1.0))
            }
            Family::RationalN { n, g, r: rr } => {
                let x = r / rr;
                let d = 1.0 + x.powf(*n);
                g * n * x.powf(n - 1.0) / (rr * rr * rr * d * d)
            }
            Family::MixedRep4 { n, g, r: rr } => {
                let x = r / rr;
                g / (rr * rr * rr) * (-n * x.powf(-n - 1.0) + 4.0 * x.powf(-5.0))
            }
            Family::ExpN { n, g, r: rr } => {
                let x = r / rr;
                g * n * x.powf(n - 1.0) * (-x.powf(*n)).exp() / (rr * rr * rr)
            }
            Family::WoodSaxon { v0, r: rr, a } => {
                let e = ((r - rr) / a).exp();
                let d = 1.0 + e;
                v0 * e / (a * d * d)
            }
            Family::SquareWell { .. } => 0.0,
            Family::TruncatedExp { v0, r: rr } => {
                if r < *rr {
                    v0 / rr * (-r / rr).exp()
                } else {
                    0.0
                }
            }
            Family::Yukawa { g, r: rr } => {
                g / rr * (-r / rr).exp() * (1.0 / (r * rr) + 1.0 / (r * r))
            }
            Family::RationalCubed { g, r: rr } => {
                let x = r / rr;
                let d = 1.0 + x * x * x;
                g * 3.0 * x * x / (rr * rr * rr * d * d)
            }
        })
    }

    /// Moment kernel W(r) = -(6 V(r) + r V'(r)) r^2.
    pub fn w_of_r(&self, r: f64) -> Result<f64> {
        let v = self.eval(r)?;
        let vp = self.derivative(r)?;
        Ok(-(6.0 * v + r * vp) * r * r)
    }

    /// Extrema of -r^2 V and W over (0, inf): analytic critical points where
    /// the family has them, dense log-grid scan plus golden refinement
    /// otherwise. Unbounded functionals come back as `None`.
    pub fn shape_scan(&self, cfg: &ScanConfig) -> ShapeScan {
        let l = self.scale_length();
        let mut scan = ShapeScan {
            sup_neg_r2v: None,
            sup_w: None,
            inf_w: None,
            w_nonnegative: false,
            w_distributional: !self.breakpoints().is_empty(),
            r2_tail_warning: matches!(self.tail(), TailKind::InverseSquare),
            grid_points: cfg.points,
        };

        match &self.family {
            Family::PowerLaw { .. } => {
                // -r^2 V < 0 everywhere; the supremum 0 is a limit at r = 0.
                scan.sup_neg_r2v = Some(Extremum {
                    value: 0.0,
                    location: 0.0,
                });
                // W = -(6+p) g r^{p+2} is unbounded below.
                scan.sup_w = Some(Extremum {
                    value: 0.0,
                    location: 0.0,
                });
                scan.inf_w = None;
                return scan;
            }
            Family::WConstant { a, b, r } => {
                scan.sup_neg_r2v = Some(Extremum {
                    value: *b,
                    location: f64::INFINITY,
                });
                let w = 4.0 * b;
                scan.sup_w = Some(Extremum {
                    value: w,
                    location: *r,
                });
                scan.inf_w = Some(Extremum {
                    value: w,
                    location: *r,
                });
                scan.w_nonnegative = *b >= 0.0;
                let _ = a;
                return scan;
            }
            _ => {}
        }

        scan.sup_neg_r2v = match &self.family {
            Family::RationalCubed { g, r } => Some(Extremum {
                value: g * 2f64.powf(2.0 / 3.0) / 3.0,
                location: r * 2f64.cbrt(),
            }),
            Family::RationalN { n, g, r } => {
                // maximize x^2/(1+x^n): x^n = 2/(n-2)
                let xb = (2.0 / (n - 2.0)).powf(1.0 / n);
                Some(Extremum {
                    value: g * xb * xb * (n - 2.0) / n,
                    location: r * xb,
                })
            }
            Family::Yukawa { g, r } => Some(Extremum {
                value: g / std::f64::consts::E,
                location: *r,
            }),
            Family::ExpN { n, g, r } => {
                let xb = (2.0 / n).powf(1.0 / n);
                Some(Extremum {
                    value: g * xb * xb * (-2.0 / n).exp(),
                    location: r * xb,
                })
            }
            Family::SquareWell { v0, r } => Some(Extremum {
                value: v0 * r * r,
                location: *r,
            }),
            Family::LjPair { p_rep, p_att, g, r } => {
                // maximize x^{2-p_att} - x^{2-p_rep}
                let xb = ((p_rep - 2.0) / (p_att - 2.0)).powf(1.0 / (p_rep - p_att));
                let v = g * (xb.powf(2.0 - p_att) - xb.powf(2.0 - p_rep));
                Some(Extremum {
                    value: v,
                    location: r * xb,
                })
            }
            Family::MixedRep4 { n, g, r } => {
                let xb = ((n - 2.0) / 2.0).powf(1.0 / (n - 4.0));
                let v = g * (xb.powf(-2.0) - xb.powf(2.0 - n));
                Some(Extremum {
                    value: v,
                    location: r * xb,
                })
            }
            _ => self.scan_extremum(cfg, true, |r| -r * r * self.eval_unchecked(r)),
        };

        if scan.w_distributional {
            // paired jump contributions make W distributional; extrema of the
            // smooth part would misrepresent the kernel, so none are offered
            return scan;
        }

        let (sup_w, inf_w, w_nonneg) = self.w_extrema(cfg, l);
        scan.sup_w = sup_w;
        scan.inf_w = inf_w;
        scan.w_nonnegative = w_nonneg;
        scan
    }

    fn w_extrema(&self, cfg: &ScanConfig, l: f64) -> (Option<Extremum>, Option<Extremum>, bool) {
        let wtol = 1e-12 * self.coupling().unwrap_or(1.0).abs();
        match &self.family {
            Family::RationalCubed { g, r } => {
                // W = 3 g x^2 (2 + x^3) / (1 + x^3)^2, max 9g/4 at x = 1
                let sup = Extremum {
                    value: 2.25 * g,
                    location: *r,
                };
                let inf = Extremum {
                    value: 0.0,
                    location: 0.0,
                };
                (Some(sup), Some(inf), true)
            }
            Family::Yukawa { g, r } => {
                // W = g x (5 - x) e^{-x}; stationary at x = (7 -+ sqrt 29)/2
                let s29 = 29f64.sqrt();
                let xm = 0.5 * (7.0 - s29);
                let xp = 0.5 * (7.0 + s29);
                let w = |x: f64| g * x * (5.0 - x) * (-x).exp();
                (
                    Some(Extremum {
                        value: w(xm),
                        location: r * xm,
                    }),
                    Some(Extremum {
                        value: w(xp),
                        location: r * xp,
                    }),
                    false,
                )
            }
            Family::LjPair { p_rep, p_att, g, r } => {
                // W = g [ (p_rep - 6) x^{2-p_rep} + (6 - p_att) x^{2-p_att} ]
                let cp = p_rep - 6.0;
                let cq = 6.0 - p_att;
                if cp > 0.0 || (cp == 0.0 && cq > 0.0) {
                    // core term blows up positively
                    let inf = if cq >= 0.0 {
                        Some(Extremum {
                            value: 0.0,
                            location: f64::INFINITY,
                        })
                    } else {
                        // negative tail dip at x^(p_rep - p_att) = cp(p_rep-2)/(-cq (p_att-2))
                        self.scan_extremum(cfg, false, |rr| self.w_of_r(rr).unwrap_or(0.0))
                    };
                    let nonneg = cq >= 0.0;
                    (None, inf, nonneg)
                } else {
                    // repulsive-core coefficient drives W to -inf at origin
                    let sup = self.scan_extremum(cfg, true, |rr| self.w_of_r(rr).unwrap_or(0.0));
                    let _ = (g, r);
                    (sup, None, false)
                }
            }
            Family::MixedRep4 { n, .. } => {
                let cp = n - 6.0;
                if cp > 0.0 || *n == 6.0 {
                    (
                        None,
                        Some(Extremum {
                            value: 0.0,
                            location: f64::INFINITY,
                        }),
                        true,
                    )
                } else {
                    // n = 5: W = g(2 x^{-2} - x^{-3}), sup finite, inf -> -inf
                    let sup = self.scan_extremum(cfg, true, |rr| self.w_of_r(rr).unwrap_or(0.0));
                    (sup, None, false)
                }
            }
            _ => {
                let sup = self.scan_extremum(cfg, true, |rr| self.w_of_r(rr).unwrap_or(0.0));
                let inf = self.scan_extremum(cfg, false, |rr| self.w_of_r(rr).unwrap_or(0.0));
                let nonneg = match (&sup, &inf) {
                    (_, Some(e)) => e.value >= -wtol,
                    _ => false,
                };
                // decaying tails: W -> 0 at both ends, include the limits
                let sup = sup.map(|e| {
                    if e.value < 0.0 {
                        Extremum {
                            value: 0.0,
                            location: 0.0,
                        }
                    } else {
                        e
                    }
                });
                let inf = inf.map(|e| {
                    if e.value > 0.0 {
                        Extremum {
                            value: 0.0,
                            location: 0.0,
                        }
                    } else {
                        e
                    }
                });
                let _ = l;
                (sup, inf, nonneg)
            }
        }
    }

    /// Dense log-grid extremum search with golden-section refinement.
    fn scan_extremum<F: Fn(f64) -> f64>(
        &self,
        cfg: &ScanConfig,
        maximize: bool,
        f: F,
    ) -> Option<Extremum> {
        let l = self.scale_length();
        let lo = (cfg.span_low * l).ln();
        let hi = (cfg.span_high * l).ln();
        let n = cfg.points.max(16);
        let breaks = self.breakpoints();
        let mut best_i = 0usize;
        let mut best_v = f64::NEG_INFINITY;
        let sample = |i: usize| -> f64 {
            let t = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let mut r = t.exp();
            for b in &breaks {
                if (r - b).abs() < 1e-9 * b {
                    r *= 1.0 + 1e-7;
                }
            }
            r
        };
        let sgn = if maximize { 1.0 } else { -1.0 };
        for i in 0..n {
            let v = sgn * f(sample(i));
            if v.is_finite() && v > best_v {
                best_v = v;
                best_i = i;
            }
        }
        if !best_v.is_finite() {
            return None;
        }
        // refine between the neighbors of the best grid point
        let a = sample(best_i.saturating_sub(1));
        let b = sample((best_i + 1).min(n - 1));
        let (xr, fr) = golden_min(|r| -sgn * f(r), a, b, cfg.refine_rtol, 200);
        let (value, location) = if -fr > best_v {
            (sgn * -fr, xr)
        } else {
            (sgn * best_v, sample(best_i))
        };
        // a best value at the grid edge is either a finite limit (increments
        // shrink, e.g. a tail decaying to zero) or a divergence (increments
        // grow along the log grid); only the latter is unbounded
        let at_edge = best_i == 0 || best_i == n - 1;
        if at_edge {
            let dt = (hi - lo) / (n - 1) as f64;
            let inner = sgn * f(sample(if best_i == 0 { 1 } else { n - 2 }));
            let r_ext = if best_i == 0 {
                sample(0) * 0.01
            } else {
                sample(n - 1) * 100.0
            };
            let v_ext = sgn * f(r_ext);
            let dt_ext = 100f64.ln();
            let slope_in = (best_v - inner) / dt;
            let slope_out = (v_ext - best_v) / dt_ext;
            if v_ext.is_finite() && slope_out > 0.0 && slope_out >= slope_in.max(0.0) {
                return None;
            }
        }
        Some(Extremum { value, location })
    }

    /// L+ = sqrt(sup[-r^2 V]) - 1/2.
    pub fn l_plus(&self, cfg: &ScanConfig) -> Option<f64> {
        let scan = self.shape_scan(cfg);
        scan.sup_neg_r2v.map(|e| e.value.max(0.0).sqrt() - 0.5)
    }

    /// Largest r0 with V(r0) = e; the boundary of the classically allowed
    /// region for a state of energy e.
    pub fn classical_radius(&self, e: f64) -> Result<f64> {
        if self.is_confining() {
            if e <= 0.0 {
                return Err(Error::InvalidInput(
                    "confining potential: classical radius needs E > 0".into(),
                ));
            }
            if let Family::PowerLaw { p, g } = &self.family {
                return Ok((e / g).powf(1.0 / p));
            }
        }
        if e >= 0.0 {
            return Err(Error::InvalidInput(format!(
                "classical radius needs E < 0, got {e}"
            )));
        }
        let l = self.scale_length();
        // analytic inversion for the rational families
        match &self.family {
            Family::RationalN { n, g, r } => {
                let q = g / (e.abs() * r * r) - 1.0;
                if q <= 0.0 {
                    return Err(Error::InvalidInput(
                        "energy below the potential floor".into(),
                    ));
                }
                return Ok(r * q.powf(1.0 / n));
            }
            Family::RationalCubed { g, r } => {
                let q = g / (e.abs() * r * r) - 1.0;
                if q <= 0.0 {
                    return Err(Error::InvalidInput(
                        "energy below the potential floor".into(),
                    ));
                }
                return Ok(r * q.cbrt());
            }
            _ => {}
        }
        // locate the outermost sign change of V - e on a log grid
        let n = 4000usize;
        let lo = (1e-6 * l).ln();
        let mut hi_factor: f64 = 1e4;
        if let TailKind::Power { p } = self.tail() {
            if let Some(g) = self.coupling() {
                hi_factor = hi_factor.max(10.0 * (g / (e.abs() * l * l)).powf(1.0 / p));
            }
        }
        let hi = (hi_factor * l).ln();
        let h = (hi - lo) / (n - 1) as f64;
        let mut prev_r = lo.exp();
        let mut prev_s = self.eval_unchecked(prev_r) - e;
        let mut bracket: Option<(f64, f64)> = None;
        for i in 1..n {
            let r = (lo + h * i as f64).exp();
            let s = self.eval_unchecked(r) - e;
            if prev_s <= 0.0 && s > 0.0 {
                bracket = Some((prev_r, r));
            }
            prev_r = r;
            prev_s = s;
        }
        let (a, b) = bracket
            .ok_or_else(|| Error::InvalidInput(format!("no classical turning point at E = {e}")))?;
        let r0 = bisect(|r| self.eval_unchecked(r) - e, a, b, 1e-14 * l, 200);
        Ok(r0)
    }

    /// I, J and B functionals; closed forms where the family has them,
    /// adaptive quadrature otherwise.
    pub fn integral_functionals(&self) -> IntegralFunctionals {
        let pi = std::f64::consts::PI;
        let sqrt_pi = pi.sqrt();
        match &self.family {
            Family::PowerLaw { .. } => IntegralFunctionals {
                i: Some(-1.0),
                j: Some(0.0),
                b: None,
                v2_integrable: true,
            },
            Family::WConstant { .. } => IntegralFunctionals {
                // b/x tail: the I integrand ~ 1/x diverges logarithmically
                i: None,
                j: None,
                b: None,
                v2_integrable: true,
            },
            Family::RationalCubed { g, .. } => IntegralFunctionals {
                i: Some(-1.0 + g * 2.0 * pi / (3.0 * 3f64.sqrt())),
                j: Some(g * g * 2.0 * pi / (9.0 * 3f64.sqrt())),
                b: Some(gamma(4.0 / 3.0) * gamma(1.0 / 6.0) / sqrt_pi),
                v2_integrable: true,
            },
            Family::RationalN { n, g, .. } => {
                let i = g * pi / (n * (2.0 * pi / n).sin());
                let j = g * g / n * gamma(4.0 / n) * gamma(2.0 - 4.0 / n);
                IntegralFunctionals {
                    i: Some(-1.0 + i),
                    j: Some(j),
                    b: Some(gamma(1.0 + 1.0 / n) * gamma(0.5 - 1.0 / n) / sqrt_pi),
                    v2_integrable: true,
                }
            }
            Family::Yukawa { g, .. } => IntegralFunctionals {
                i: Some(-1.0 + g),
                j: Some(g * g / 4.0),
                b: Some((2.0 * pi).sqrt()),
                // int [V^-]^2 dr ~ int dr/r^2 diverges at the origin
                v2_integrable: false,
            },
            Family::ExpN { n, g, .. } => IntegralFunctionals {
                i: Some(-1.0 + g * gamma(2.0 / n) / n),
                j: Some(g * g * gamma(4.0 / n) / (n * 2f64.powf(4.0 / n))),
                b: Some(2f64.powf(1.0 / n) * gamma(1.0 + 1.0 / n)),
                v2_integrable: true,
            },
            Family::SquareWell { v0, r } => {
                let g = v0 * r * r;
                IntegralFunctionals {
                    i: Some(-1.0 + 0.5 * g),
                    j: Some(0.25 * g * g),
                    b: Some(1.0),
                    v2_integrable: true,
                }
            }
            Family::TruncatedExp { v0, r } => {
                let g = v0 * r * r;
                let e = std::f64::consts::E;
                // int_0^1 x e^-x = 1 - 2/e ; int_0^1 x^3 e^-2x ; int_0^1 e^-x/2
                let j_int_x3 = {
                    // int_0^1 x^3 e^{-2x} dx = 3/8 - (19/8) e^{-2}
                    let e2 = (-2f64).exp();
                    0.375 - e2 * (0.5 + 0.75 + 0.75 + 0.375)
                };
                IntegralFunctionals {
                    i: Some(-1.0 + g * (1.0 - 2.0 / e)),
                    j: Some(g * g * j_int_x3),
                    b: Some(2.0 * (1.0 - (-0.5f64).exp())),
                    v2_integrable: true,
                }
            }
            Family::LjPair {
                p_rep, p_att, g, ..
            } => {
                let (p, q) = (*p_rep, *p_att);
                // attractive part lives on x >= 1 only
                let i = g * (1.0 / (q - 2.0) - 1.0 / (p - 2.0));
                let delta = p - q;
                let s = (q - 2.0) / (2.0 * delta);
                let b = gamma(s) * gamma(1.5) / (delta * gamma(s + 1.5));
                let j = {
                    // int_1^inf x^3 (x^-q - x^-p)^2 dx, termwise
                    let t1 = 1.0 / (2.0 * q - 4.0);
                    let t2 = 2.0 / (p + q - 4.0);
                    let t3 = 1.0 / (2.0 * p - 4.0);
                    g * g * (t1 - t2 + t3)
                };
                IntegralFunctionals {
                    i: Some(i),
                    j: Some(j),
                    b: Some(b),
                    v2_integrable: true,
                }
            }
            Family::MixedRep4 { n, g, .. } => {
                let (p, q) = (*n, 4.0);
                let i = g * (1.0 / (q - 2.0) - 1.0 / (p - 2.0));
                let delta = p - q;
                let s = (q - 2.0) / (2.0 * delta);
                let b = gamma(s) * gamma(1.5) / (delta * gamma(s + 1.5));
                let j = {
                    let t1 = 1.0 / (2.0 * q - 4.0);
                    let t2 = 2.0 / (p + q - 4.0);
                    let t3 = 1.0 / (2.0 * p - 4.0);
                    g * g * (t1 - t2 + t3)
                };
                IntegralFunctionals {
                    i: Some(i),
                    j: Some(j),
                    b: Some(b),
                    v2_integrable: true,
                }
            }
            Family::WoodSaxon { v0, r, a } => {
                let g = v0 * a * a;
                let alpha = r / a;
                let v = |x: f64| 1.0 / (1.0 + (x - alpha).exp());
                let i = g * integral_semi_infinite(|x| x * v(x), 0.0, 1e-10);
                let j = g * g * integral_semi_infinite(|x| x.powi(3) * v(x) * v(x), 0.0, 1e-10);
                let b = adaptive_simpson(|x| v(x).sqrt(), 0.0, alpha + 60.0, 1e-10);
                IntegralFunctionals {
                    i: Some(-1.0 + i),
                    j: Some(j),
                    b: Some(b),
                    v2_integrable: true,
                }
            }
        }
    }
}

fn validate(family: &Family) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidInput(msg));
    match family {
        Family::PowerLaw { p, g } => {
            if *p <= 0.0 || *g <= 0.0 {
                return bad(format!("power-law needs p > 0 and g > 0, got p={p}, g={g}"));
            }
        }
        Family::LjPair { p_rep, p_att, g, r } => {
            if !(*p_att > 2.0 && p_rep > p_att) {
                return bad(format!(
                    "lj-pair needs p_rep > p_att > 2, got ({p_rep}, {p_att})"
                ));
            }
            if *g <= 0.0 || *r <= 0.0 {
                return bad("lj-pair needs g > 0 and R > 0".into());
            }
        }
        Family::RationalN { n, g, r } => {
            if *n < 3.0 {
                return bad(format!("rational-n needs n >= 3, got {n}"));
            }
            if *g <= 0.0 || *r <= 0.0 {
                return bad("rational-n needs g > 0 and R > 0".into());
            }
        }
        Family::MixedRep4 { n, g, r } => {
            if *n < 5.0 {
                return bad(format!("mixed-rep4 needs n >= 5, got {n}"));
            }
            if *g <= 0.0 || *r <= 0.0 {
                return bad("mixed-rep4 needs g > 0 and R > 0".into());
            }
        }
        Family::ExpN { n, g, r } => {
            if *n <= 0.0 || *g <= 0.0 || *r <= 0.0 {
                return bad("exp-n needs n > 0, g > 0, R > 0".into());
            }
        }
        Family::WoodSaxon { v0, r, a } => {
            if *v0 <= 0.0 || *r <= 0.0 || *a <= 0.0 {
                return bad("wood-saxon needs V0 > 0, R > 0, a > 0".into());
            }
        }
        Family::SquareWell { v0, r } | Family::TruncatedExp { v0, r } => {
            if *v0 <= 0.0 || *r <= 0.0 {
                return bad("well needs V0 > 0 and R > 0".into());
            }
        }
        Family::Yukawa { g, r } | Family::RationalCubed { g, r } => {
            if *g <= 0.0 || *r <= 0.0 {
                return bad("needs g > 0 and R > 0".into());
            }
        }
        Family::WConstant { a, b, r } => {
            if *a <= 0.0 || *b <= 0.0 || *r <= 0.0 {
                return bad("w-constant needs a > 0, b > 0, R > 0".into());
            }
        }
    }
    Ok(())
}
