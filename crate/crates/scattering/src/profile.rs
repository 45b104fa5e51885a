//! Step-like initial profiles: the pure step `0 (x<0), A (x>0)` plus a compactly supported
//! perturbation, and their JSON description.

use crate::error::{ScatError, ScatResult};
use lpd_numerics_core::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

type C = Complex64;

/// A complex-valued perturbation supported in `[−ℓ, ℓ]`.
#[derive(Clone)]
pub enum Perturbation {
    None,
    /// `amplitude · exp(−((x − center)/width)²)`, truncated outside the support.
    GaussianBump { amplitude: C, center: f64, width: f64 },
    /// Piecewise-linear interpolation of samples; zero outside the sampled range.
    Table { x: Vec<f64>, values: Vec<C> },
    /// Arbitrary function, truncated outside the support.
    Custom(Arc<dyn Fn(f64) -> C + Send + Sync>),
}

impl fmt::Debug for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Perturbation::None => write!(f, "None"),
            Perturbation::GaussianBump { amplitude, center, width } => {
                write!(f, "GaussianBump({amplitude}, {center}, {width})")
            }
            Perturbation::Table { x, .. } => write!(f, "Table({} samples)", x.len()),
            Perturbation::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Initial datum `q₀ = q_step + perturbation` with step height `A` and dispersion `γ`.
#[derive(Debug, Clone)]
pub struct InitialProfile {
    pub amplitude: f64,
    pub gamma: f64,
    pub perturbation: Perturbation,
    /// Half-width `ℓ` of the perturbation support.
    pub support: f64,
}

impl InitialProfile {
    pub fn pure_step(amplitude: f64, gamma: f64) -> Self {
        InitialProfile { amplitude, gamma, perturbation: Perturbation::None, support: 0.0 }
    }

    pub fn new(amplitude: f64, gamma: f64, perturbation: Perturbation, support: f64) -> ScatResult<Self> {
        let p = InitialProfile { amplitude, gamma, perturbation, support };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> ScatResult<()> {
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(ScatError::InvalidProfile("step height A must be finite and non-negative".into()));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(ScatError::InvalidProfile("γ must be finite and non-negative".into()));
        }
        if !(self.support >= 0.0 && self.support.is_finite()) {
            return Err(ScatError::InvalidProfile("support half-width must be finite and ≥ 0".into()));
        }
        match &self.perturbation {
            Perturbation::GaussianBump { width, .. } if !(*width > 0.0) => {
                Err(ScatError::InvalidProfile("bump width must be positive".into()))
            }
            Perturbation::Table { x, values } => {
                if x.len() != values.len() || x.len() < 2 {
                    return Err(ScatError::InvalidProfile("table needs ≥ 2 samples of equal length".into()));
                }
                if x.windows(2).any(|w| !(w[0] < w[1])) {
                    return Err(ScatError::InvalidProfile("table abscissae must increase".into()));
                }
                if x[0] < -self.support || x[x.len() - 1] > self.support {
                    return Err(ScatError::InvalidProfile("table extends beyond the declared support".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Perturbation value (zero outside the support).
    pub fn perturbation_at(&self, x: f64) -> C {
        if x.abs() > self.support {
            return C::new(0.0, 0.0);
        }
        match &self.perturbation {
            Perturbation::None => C::new(0.0, 0.0),
            Perturbation::GaussianBump { amplitude, center, width } => {
                let s = (x - center) / width;
                amplitude * (-s * s).exp()
            }
            Perturbation::Table { x: xs, values } => {
                if x < xs[0] || x > xs[xs.len() - 1] {
                    return C::new(0.0, 0.0);
                }
                let k = xs.partition_point(|&v| v <= x).clamp(1, xs.len() - 1);
                let (x0, x1) = (xs[k - 1], xs[k]);
                let w = (x - x0) / (x1 - x0);
                values[k - 1] * (1.0 - w) + values[k] * w
            }
            Perturbation::Custom(f) => f(x),
        }
    }

    /// `q₀(x)`; at `x = 0` the value from the left (`0 + perturbation`) is returned.
    pub fn q0(&self, x: f64) -> C {
        let step = if x > 0.0 { self.amplitude } else { 0.0 };
        self.perturbation_at(x) + step
    }

    /// `q₀(x)` taking the one-sided limit from the right at the step.
    pub fn q0_right(&self, x: f64) -> C {
        let step = if x >= 0.0 { self.amplitude } else { 0.0 };
        self.perturbation_at(x) + step
    }

    /// Points where `q₀` (or its mirror) may be non-smooth, including `0`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.0];
        match &self.perturbation {
            Perturbation::None => {}
            Perturbation::Table { x, .. } => pts.extend(x.iter().copied()),
            _ => pts.extend([-self.support, self.support]),
        }
        let mirrored: Vec<f64> = pts.iter().map(|p| -p).collect();
        pts.extend(mirrored);
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        pts
    }

    /// Parse the JSON profile description.
    pub fn from_json(text: &str) -> ScatResult<Self> {
        let spec: ProfileSpec =
            serde_json::from_str(text).map_err(|e| ScatError::InvalidProfile(e.to_string()))?;
        spec.build()
    }
}

/// Serializable profile description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    #[serde(rename = "A")]
    pub amplitude: f64,
    pub gamma: f64,
    #[serde(default)]
    pub support: f64,
    #[serde(default)]
    pub perturbation: PerturbationSpec,
}

/// Serializable perturbation description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PerturbationSpec {
    #[default]
    None,
    GaussianBump {
        /// `[re, im]`
        amplitude: [f64; 2],
        center: f64,
        width: f64,
    },
    Table {
        x: Vec<f64>,
        re: Vec<f64>,
        #[serde(default)]
        im: Vec<f64>,
    },
}

impl ProfileSpec {
    pub fn build(&self) -> ScatResult<InitialProfile> {
        let perturbation = match &self.perturbation {
            PerturbationSpec::None => Perturbation::None,
            PerturbationSpec::GaussianBump { amplitude, center, width } => Perturbation::GaussianBump {
                amplitude: C::new(amplitude[0], amplitude[1]),
                center: *center,
                width: *width,
            },
            PerturbationSpec::Table { x, re, im } => {
                if !im.is_empty() && im.len() != re.len() {
                    return Err(ScatError::InvalidProfile("table re/im lengths differ".into()));
                }
                let values = re
                    .iter()
                    .enumerate()
                    .map(|(k, &r)| C::new(r, im.get(k).copied().unwrap_or(0.0)))
                    .collect();
                Perturbation::Table { x: x.clone(), values }
            }
        };
        InitialProfile::new(self.amplitude, self.gamma, perturbation, self.support)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_step_values() {
        let p = InitialProfile::pure_step(2.0, 0.1);
        assert_eq!(p.q0(-1.0), C::new(0.0, 0.0));
        assert_eq!(p.q0(1.0), C::new(2.0, 0.0));
        assert_eq!(p.q0(0.0), C::new(0.0, 0.0));
        assert_eq!(p.q0_right(0.0), C::new(2.0, 0.0));
    }

    #[test]
    fn bump_is_truncated_outside_support() {
        let p = InitialProfile::new(
            1.0,
            0.1,
            Perturbation::GaussianBump { amplitude: C::new(0.1, 0.0), center: 0.0, width: 0.5 },
            2.0,
        )
        .unwrap();
        assert!(p.q0(-1.0).norm() > 0.0);
        assert_eq!(p.q0(-2.5), C::new(0.0, 0.0));
        assert_eq!(p.q0(2.5), C::new(1.0, 0.0));
        assert_eq!(p.breakpoints(), vec![-2.0, 0.0, 2.0]);
    }

    #[test]
    fn table_interpolates_linearly() {
        let p = InitialProfile::new(
            1.0,
            0.0,
            Perturbation::Table { x: vec![-1.0, 0.0, 1.0], values: vec![C::new(0.0, 0.0), C::new(0.2, 0.0), C::new(0.0, 0.4)] },
            1.0,
        )
        .unwrap();
        assert!((p.perturbation_at(-0.5) - C::new(0.1, 0.0)).norm() < 1e-15);
        assert!((p.perturbation_at(0.5) - C::new(0.1, 0.2)).norm() < 1e-15);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let text = r#"{"A": 2.0, "gamma": 0.05, "support": 3.0,
            "perturbation": {"kind": "gaussian-bump", "amplitude": [0.1, 0.05], "center": 0.5, "width": 0.7}}"#;
        let p = InitialProfile::from_json(text).unwrap();
        assert_eq!(p.amplitude, 2.0);
        assert!(matches!(p.perturbation, Perturbation::GaussianBump { .. }));
        let spec: ProfileSpec = serde_json::from_str(text).unwrap();
        let again: ProfileSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, again);
        assert!(InitialProfile::from_json(r#"{"A": -1, "gamma": 0.1}"#).is_err());
        assert!(InitialProfile::from_json(r#"{"A": 1, "gamma": 0.1, "bogus": 1}"#).is_err());
        let bad_table = r#"{"A": 1, "gamma": 0.1, "support": 1,
            "perturbation": {"kind": "table", "x": [-2, 0], "re": [0, 0]}}"#;
        assert!(InitialProfile::from_json(bad_table).is_err());
    }
}
