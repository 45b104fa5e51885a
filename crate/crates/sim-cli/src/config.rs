//! Run configuration: one JSON document, checked in full before anything is computed.
//! Unknown keys are errors; every section is optional and falls back to the defaults
//! documented on its type.

use crate::error::{SimError, SimResult};
use crate::evolve::EvolveOptions;
use lpd_asymptotics::PowerBase;
use lpd_numerics_core::Complex64;
use lpd_pc_model::PhiMode;
use lpd_scattering::{
    Case, CaseChoice, InitialProfile, NumericScattering, PerturbationSpec, ProfileSpec, PureStep, Scattering,
    ScatteringData,
};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

/// A list of values or an evenly spaced range with `count ≥ 1` points (both ends included).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Range { start: f64, stop: f64, count: usize },
}

impl Grid {
    pub fn range(start: f64, stop: f64, count: usize) -> Self {
        Grid::Range { start, stop, count }
    }

    pub fn values(&self) -> SimResult<Vec<f64>> {
        let v = match self {
            Grid::List(v) => v.clone(),
            Grid::Range { start, stop, count } => match count {
                0 => return Err(SimError::Config("grid count must be at least 1".into())),
                1 => vec![*start],
                n => (0..*n).map(|k| start + (stop - start) * k as f64 / (*n - 1) as f64).collect(),
            },
        };
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(SimError::Config("grids must be non-empty and finite".into()));
        }
        Ok(v)
    }

    /// Parses `start:stop:count` or a comma-separated list.
    pub fn parse(text: &str) -> SimResult<Self> {
        let bad = |e: String| SimError::Config(format!("grid '{text}': {e}"));
        let parts: Vec<&str> = text.split(':').collect();
        let grid = match parts.as_slice() {
            [a, b, n] => Grid::Range {
                start: a.trim().parse().map_err(|e| bad(format!("{e}")))?,
                stop: b.trim().parse().map_err(|e| bad(format!("{e}")))?,
                count: n.trim().parse().map_err(|e| bad(format!("{e}")))?,
            },
            [list] => Grid::List(
                list.split(',').map(|s| s.trim().parse::<f64>().map_err(|e| bad(format!("{e}")))).collect::<SimResult<_>>()?,
            ),
            _ => return Err(bad("expected start:stop:count or a comma-separated list".into())),
        };
        grid.values()?;
        Ok(grid)
    }
}

/// Where the scattering data come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SourceKind {
    /// Closed form for the pure step, Jost integration otherwise.
    #[default]
    Auto,
    ClosedForm,
    Numeric,
}

/// `φ` evaluation mode (`--mode`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    Paper,
    #[default]
    Consistent,
}

impl ModeName {
    pub fn phi_mode(self) -> PhiMode {
        match self {
            ModeName::Paper => PhiMode::PaperFaithful,
            ModeName::Consistent => PhiMode::TaylorConsistent,
        }
    }
}

/// Case policy (`--case`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum CaseName {
    #[default]
    #[serde(rename = "auto")]
    Auto,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl CaseName {
    pub fn choice(self) -> CaseChoice {
        match self {
            CaseName::Auto => CaseChoice::Auto,
            CaseName::One => CaseChoice::Require(Case::One),
            CaseName::Two => CaseChoice::Require(Case::Two),
        }
    }
}

/// `scatter`: the ξ grid (default 100 points on `[−5, 5]`, avoiding `ξ = 0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScatterSection {
    pub xi: Grid,
}

impl Default for ScatterSection {
    fn default() -> Self {
        ScatterSection { xi: Grid::range(-5.0, 5.0, 100) }
    }
}

/// `phase`: the ray speeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhaseSection {
    pub mu: Grid,
}

impl Default for PhaseSection {
    fn default() -> Self {
        PhaseSection { mu: Grid::range(-1.5, 1.5, 31) }
    }
}

/// `delta`: positive ray speeds and the real ξ grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeltaSection {
    pub mu: Grid,
    pub xi: Grid,
}

impl Default for DeltaSection {
    fn default() -> Self {
        DeltaSection { mu: Grid::List(vec![0.5]), xi: Grid::range(-4.0, 4.0, 81) }
    }
}

/// `pcmodel`: positive ray speeds, the τ probes of the jump residual and the large-τ radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PcModelSection {
    pub mu: Grid,
    pub tau: Grid,
    pub fit_radius: f64,
}

impl Default for PcModelSection {
    fn default() -> Self {
        PcModelSection { mu: Grid::List(vec![0.5]), tau: Grid::List(vec![-2.0, -0.5, 0.5, 2.0]), fit_radius: 50.0 }
    }
}

/// `asymptote`: signed ray speeds `x/t` and times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AsymptoteSection {
    pub mu: Grid,
    pub t: Grid,
    pub power_base: PowerBase,
}

impl Default for AsymptoteSection {
    fn default() -> Self {
        AsymptoteSection {
            mu: Grid::List(vec![-0.3, 0.3]),
            t: Grid::List(vec![10.0, 100.0, 1000.0]),
            power_base: PowerBase::Four,
        }
    }
}

/// `soliton`: parameters, x grid and time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolitonSection {
    #[serde(rename = "A")]
    pub amplitude: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub x: Grid,
    pub t: f64,
}

impl Default for SolitonSection {
    fn default() -> Self {
        SolitonSection { amplitude: 2.0, alpha: 0.0, gamma: 0.05, x: Grid::range(-10.0, 10.0, 200), t: 0.0 }
    }
}

/// Initial data of `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialData {
    /// The profile amplitude with its jump smoothed over `width` (default `10h`).
    SmoothedStep { width: Option<f64> },
    Soliton {
        #[serde(rename = "A")]
        amplitude: f64,
        alpha: f64,
    },
}

/// `simulate`: grid, horizon, number of snapshots after the initial one, step control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulateSection {
    pub half_width: f64,
    pub h: f64,
    pub t_end: f64,
    pub snapshots: usize,
    pub initial: InitialData,
    pub options: EvolveOptions,
}

impl Default for SimulateSection {
    fn default() -> Self {
        SimulateSection {
            half_width: 10.0,
            h: 0.05,
            t_end: 0.05,
            snapshots: 1,
            initial: InitialData::SmoothedStep { width: None },
            options: EvolveOptions::default(),
        }
    }
}

/// `validate`: which checks to run (all when empty).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct ValidateSection {
    pub checks: Vec<u32>,
}

fn default_profile() -> ProfileSpec {
    ProfileSpec { amplitude: 1.0, gamma: 0.1, support: 0.0, perturbation: PerturbationSpec::None }
}

fn default_kappa() -> [f64; 2] {
    [1.0, 0.0]
}

/// The whole configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_profile")]
    pub profile: ProfileSpec,
    #[serde(default)]
    pub source: SourceKind,
    /// Residue normalisation `κ` as `[re, im]`.
    #[serde(default = "default_kappa")]
    pub kappa: [f64; 2],
    #[serde(default)]
    pub mode: ModeName,
    #[serde(default)]
    pub case: CaseName,
    #[serde(default)]
    pub scatter: ScatterSection,
    #[serde(default)]
    pub phase: PhaseSection,
    #[serde(default)]
    pub delta: DeltaSection,
    #[serde(default)]
    pub pcmodel: PcModelSection,
    #[serde(default)]
    pub asymptote: AsymptoteSection,
    #[serde(default)]
    pub soliton: SolitonSection,
    #[serde(default)]
    pub simulate: SimulateSection,
    #[serde(default)]
    pub validate: ValidateSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("the empty configuration is valid")
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> SimResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| SimError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> SimResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SimError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Semantic checks that the JSON schema cannot express.
    pub fn check(&self) -> SimResult<()> {
        self.initial_profile()?;
        if self.source == SourceKind::ClosedForm && self.profile.perturbation != PerturbationSpec::None {
            return Err(SimError::Config("the closed-form source requires a pure step (no perturbation)".into()));
        }
        if !(self.kappa[0].is_finite() && self.kappa[1].is_finite()) || self.kappa == [0.0, 0.0] {
            return Err(SimError::Config("kappa must be finite and nonzero".into()));
        }
        for g in [&self.scatter.xi, &self.phase.mu, &self.delta.mu, &self.delta.xi, &self.pcmodel.mu, &self.pcmodel.tau] {
            g.values()?;
        }
        for g in [&self.asymptote.mu, &self.asymptote.t, &self.soliton.x] {
            g.values()?;
        }
        if self.asymptote.t.values()?.iter().any(|&t| t <= 0.0) {
            return Err(SimError::Config("asymptote times must be positive".into()));
        }
        if !(self.pcmodel.fit_radius > 0.0) {
            return Err(SimError::Config("fit_radius must be positive".into()));
        }
        let s = &self.soliton;
        if !(s.amplitude > 0.0 && s.gamma > 0.0 && s.alpha.is_finite() && s.t.is_finite()) {
            return Err(SimError::Config("soliton needs A > 0, gamma > 0 and finite alpha, t".into()));
        }
        let sim = &self.simulate;
        if !(sim.t_end.is_finite() && sim.snapshots >= 1) {
            return Err(SimError::Config("simulate needs a finite t_end and at least one snapshot".into()));
        }
        if let InitialData::Soliton { amplitude, .. } = sim.initial {
            if !(amplitude > 0.0) {
                return Err(SimError::Config("simulated soliton needs A > 0".into()));
            }
        }
        for &id in &self.validate.checks {
            if !(1..=12).contains(&id) {
                return Err(SimError::Config(format!("unknown check {id}; valid checks are 1–12")));
            }
        }
        Ok(())
    }

    pub fn initial_profile(&self) -> SimResult<InitialProfile> {
        Ok(self.profile.build()?)
    }

    pub fn kappa(&self) -> Complex64 {
        Complex64::new(self.kappa[0], self.kappa[1])
    }

    /// The scattering source selected by `source`.
    pub fn scattering_source(&self) -> SimResult<Arc<dyn Scattering>> {
        let profile = self.initial_profile()?;
        let pure = self.profile.perturbation == PerturbationSpec::None;
        Ok(match (self.source, pure) {
            (SourceKind::Numeric, _) | (SourceKind::Auto, false) => Arc::new(NumericScattering::new(profile)?),
            _ => Arc::new(PureStep { amplitude: profile.amplitude }),
        })
    }

    pub fn scattering_data(&self) -> SimResult<ScatteringData> {
        Ok(ScatteringData::build(self.scattering_source()?, self.case.choice(), self.kappa())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_the_pure_step_default() {
        let cfg = RunConfig::from_json("{}").unwrap();
        assert_eq!(cfg.profile.amplitude, 1.0);
        assert_eq!(cfg, RunConfig::default());
        assert!(!cfg.scatter.xi.values().unwrap().contains(&0.0));
        assert!(!cfg.soliton.x.values().unwrap().contains(&0.0));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_json(r#"{"profil": {}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"scatter": {"xi": [1.0], "eta": 2}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"profile": {"A": -1.0, "gamma": 0.1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"validate": {"checks": [13]}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"kappa": [0.0, 0.0]}"#).is_err());
    }

    #[test]
    fn grids_from_ranges_lists_and_text() {
        let cfg = RunConfig::from_json(r#"{"scatter": {"xi": {"start": 1.0, "stop": 2.0, "count": 3}}, "case": "1",
            "mode": "paper"}"#)
        .unwrap();
        assert_eq!(cfg.scatter.xi.values().unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(cfg.case, CaseName::One);
        assert_eq!(cfg.mode.phi_mode(), PhiMode::PaperFaithful);
        assert_eq!(Grid::parse("-1:1:5").unwrap().values().unwrap(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(Grid::parse("0.5, 2").unwrap().values().unwrap(), vec![0.5, 2.0]);
        assert!(Grid::parse("1:2").is_err());
        assert!(Grid::parse("a,b").is_err());
        assert!(Grid::range(0.0, 1.0, 0).values().is_err());
    }

    #[test]
    fn closed_form_needs_a_pure_step() {
        let text = r#"{"source": "closed-form", "profile": {"A": 1.0, "gamma": 0.1, "support": 2.0,
            "perturbation": {"kind": "gaussian-bump", "amplitude": [0.1, 0.0], "center": 0.0, "width": 0.5}}}"#;
        assert!(RunConfig::from_json(text).is_err());
        let numeric = text.replace("closed-form", "numeric");
        assert!(RunConfig::from_json(&numeric).is_ok());
    }
}
