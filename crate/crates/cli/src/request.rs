//! Flag and JSON forms of a computation request, and their resolution into
//! a concrete potential plus unit context.

use halo_core::{Error, Family, Potential, Result, UnitContext};
use serde::{Deserialize, Serialize};

/// Everything that pins down one state computation.  Serialized under
/// `inputs` in every JSON document; a saved document can be re-fed through
/// `--input` and resolves to the same request.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateInputs {
    pub subcommand: String,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_rep: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_att: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diffuseness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass_number: Option<f64>,
    pub units: String,
    pub ell: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
}

fn need(v: Option<f64>, flag: &str, family: &str) -> Result<f64> {
    v.ok_or_else(|| Error::InvalidInput(format!("family {family} needs --{flag}")))
}

impl StateInputs {
    /// The unit context named by `units` (with `--A` implying nuclear).
    pub fn unit_context(&self) -> Result<UnitContext> {
        match self.units.as_str() {
            "dimensionless" => Ok(UnitContext::dimensionless()),
            "helium" => Ok(UnitContext::helium()),
            "nuclear" => {
                let a = self.mass_number.ok_or_else(|| {
                    Error::InvalidInput("nuclear units need --A <mass number>".into())
                })?;
                if !(a >= 1.0) {
                    return Err(Error::InvalidInput("mass number must be >= 1".into()));
                }
                Ok(UnitContext::nuclear(a))
            }
            other => Err(Error::InvalidInput(format!(
                "unknown unit context {other:?}: use dimensionless, helium or nuclear"
            ))),
        }
    }

    /// Length unit defaults: the helium model range in helium mode, the
    /// nuclear radius for the nuclear well, 1 otherwise.
    fn default_range(&self) -> f64 {
        match self.units.as_str() {
            "helium" => halo_core::units::HELIUM_RANGE,
            "nuclear" if self.family == "wood-saxon" => {
                let a = self.mass_number.unwrap_or(1.0);
                halo_core::units::nuclear_alpha(a) * halo_core::units::NUCLEAR_DIFFUSENESS
            }
            _ => 1.0,
        }
    }

    fn default_diffuseness(&self) -> f64 {
        if self.units == "nuclear" {
            halo_core::units::NUCLEAR_DIFFUSENESS
        } else {
            1.0
        }
    }

    /// Build the potential.  `g` falls back to 1 for window-only requests
    /// that never solve at the given strength.
    pub fn potential(&self, g_fallback: Option<f64>) -> Result<Potential> {
        let units = self.unit_context()?;
        let f = self.family.as_str();
        let g = self.g.or(g_fallback);
        let range = self.range.unwrap_or_else(|| self.default_range());
        let family = match f {
            "power-law" => Family::PowerLaw {
                p: need(self.exponent, "exponent", f)?,
                g: need(g, "g", f)?,
            },
            "lj-pair" => Family::LjPair {
                p_rep: need(self.p_rep, "p-rep", f)?,
                p_att: need(self.p_att, "p-att", f)?,
                g: need(g, "g", f)?,
                r: range,
            },
            "attractive-pair" => {
                let n = need(self.exponent, "exponent", f)?;
                Family::LjPair {
                    p_rep: 2.0 * (n - 1.0),
                    p_att: n,
                    g: need(g, "g", f)?,
                    r: range,
                }
            }
            "rational-n" => Family::RationalN {
                n: need(self.exponent, "exponent", f)?,
                g: need(g, "g", f)?,
                r: range,
            },
            "mixed-rep4" => Family::MixedRep4 {
                n: need(self.exponent, "exponent", f)?,
                g: need(g, "g", f)?,
                r: range,
            },
            "exp-n" => Family::ExpN {
                n: need(self.exponent, "exponent", f)?,
                g: need(g, "g", f)?,
                r: range,
            },
            "wood-saxon" => {
                let a = self.diffuseness.unwrap_or_else(|| self.default_diffuseness());
                if self.range.is_none() && self.units != "nuclear" {
                    return Err(Error::InvalidInput(
                        "wood-saxon outside nuclear units needs --R".into(),
                    ));
                }
                Family::WoodSaxon {
                    v0: need(g, "g", f)? / (a * a),
                    r: range,
                    a,
                }
            }
            "square-well" => Family::SquareWell {
                v0: need(g, "g", f)? / (range * range),
                r: range,
            },
            "truncated-exp" => Family::TruncatedExp {
                v0: need(g, "g", f)? / (range * range),
                r: range,
            },
            "yukawa" => Family::Yukawa {
                g: need(g, "g", f)?,
                r: range,
            },
            "rational-cubed" => Family::RationalCubed {
                g: need(g, "g", f)?,
                r: range,
            },
            "w-constant" => Family::WConstant {
                a: need(self.w_a, "w-a", f)?,
                b: need(self.w_b, "w-b", f)?,
                r: range,
            },
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown family {other:?}; see halo solve --help for the list"
                )))
            }
        };
        Potential::new(family, units)
    }

}
