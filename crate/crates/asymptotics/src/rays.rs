//! Leading-order long-time asymptotics of `q(x, t)` along a ray `x = μt`.
//!
//! For `x > 0`, saddle `s` contributes
//! `Nₛ t^{−1/2 + (−1)ˢIm vₛ} e^{−2[χₛ+φₛ] − (−1)ˢ i Re vₛ ln t}` when `Im vₛ ∈ I₁ ∪ I₂` and
//! `−Lₛ t^{−1/2 − (−1)ˢIm vₛ} e^{2[χₛ+φₛ] + (−1)ˢ i Re vₛ ln t}` when `Im vₛ ∈ I₂ ∪ I₃`, on top
//! of the background `Aδ²(0, μ)`. For `x < 0` everything is evaluated on the ray `−μ` and
//! saddle `s` contributes `−Hₛ t^{−1/2 + (−1)ˢIm vₛ} e^{−2[χ̄ₛ+φ̄ₛ] + (−1)ˢ i Re vₛ ln t}` with
//! no background.

use crate::coefficients::{coefficients_hln, PowerBase, RayData};
use crate::error::{AsymError, AsymResult};
use crate::order::{error_order, ErrorOrder, Order};
use lpd_numerics_core::Complex64;
use lpd_pc_model::{local_phase_phi, PhiMode};
use lpd_phase::{PhaseGeometry, EDGE_GUARD};
use lpd_rh_factors::DeltaFunction;
use lpd_scattering::ScatteringData;
use serde::Serialize;

type C = Complex64;

/// Where `Im v` lies: `I₁ = (−1/2, −1/6]`, `I₂ = (−1/6, 1/6)`, `I₃ = [1/6, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Interval {
    I1,
    I2,
    I3,
}

pub fn classify_interval(im_v: f64) -> AsymResult<Interval> {
    const SIXTH: f64 = 1.0 / 6.0;
    if !(im_v.abs() < 0.5) {
        return Err(AsymError::Assumption(format!("Im v = {im_v} outside (−1/2, 1/2)")));
    }
    Ok(if im_v <= -SIXTH {
        Interval::I1
    } else if im_v < SIXTH {
        Interval::I2
    } else {
        Interval::I3
    })
}

/// Which family of formulas applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    XNeg,
    XPosI1,
    XPosI2,
    XPosI3,
    /// `x > 0` with the `Im vₛ` in different intervals: terms are included saddle by saddle.
    XPosMixed,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::XNeg => "x_neg",
            Branch::XPosI1 => "x_pos_i1",
            Branch::XPosI2 => "x_pos_i2",
            Branch::XPosI3 => "x_pos_i3",
            Branch::XPosMixed => "x_pos_mixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TermKind {
    H,
    L,
    N,
}

/// One leading term `amplitude · t^{t_exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingTerm {
    pub saddle: usize,
    pub kind: TermKind,
    /// `Hₛ`, `Lₛ` or `Nₛ`.
    pub coefficient: C,
    /// Signed coefficient times the `e^{±2[χₛ+φₛ]}` factor.
    pub amplitude: C,
    /// Complex power of `t`: the real part is `−1/2 ± Im vₛ`, the imaginary part carries the
    /// `ln t` oscillation.
    pub t_exponent: C,
    pub value: C,
}

/// Leading-order asymptotics at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticResult {
    pub x: f64,
    pub t: f64,
    pub mu: f64,
    pub branch: Branch,
    pub terms: Vec<LeadingTerm>,
    /// `Aδ²(0, μ)` for `x > 0`, exactly zero for `x < 0`.
    pub background: C,
    /// Both remainder orders on the ray used.
    pub error_orders: ErrorOrder,
    /// Remainder relevant to the branch: `R₁` (`I₁` and `x < 0`), `R₂` (`I₃`), `R₁ + R₂` otherwise.
    pub error_order: Order,
    pub value: C,
}

impl AsymptoticResult {
    /// `q − background`.
    pub fn oscillatory_part(&self) -> C {
        self.terms.iter().map(|t| t.value).sum()
    }
}

/// Evaluation choices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticOptions {
    pub phi_mode: PhiMode,
    pub power_base: PowerBase,
    /// Exclusion band around `μ = 0` and the critical speed.
    pub guard: f64,
}

impl Default for AsymptoticOptions {
    fn default() -> Self {
        AsymptoticOptions { phi_mode: PhiMode::TaylorConsistent, power_base: PowerBase::Four, guard: EDGE_GUARD }
    }
}

/// Asymptotics along one ray, reusable for many times.
#[derive(Debug, Clone)]
pub struct RayAsymptotics {
    /// Signed ray speed `x/t`.
    pub mu: f64,
    /// Data on the ray `|μ|`.
    pub ray: RayData,
    pub options: AsymptoticOptions,
    pub branch: Branch,
    pub intervals: [Interval; 3],
    pub error_orders: ErrorOrder,
}

impl RayAsymptotics {
    /// Builds `δ` on the ray `|μ|` and collects the saddle data.
    pub fn new(data: &ScatteringData, mu: f64, gamma: f64, options: AsymptoticOptions) -> AsymResult<Self> {
        let geometry = PhaseGeometry::admissible(mu.abs(), gamma, options.guard)
            .map_err(|e| AsymError::Regime(e.to_string()))?;
        let delta = DeltaFunction::build(data, &geometry)?;
        Self::from_ray(RayData::from_delta(&delta)?, mu < 0.0, options)
    }

    /// Uses ready ray data on `|μ|`; `negative` selects the `x < 0` half-line.
    pub fn from_ray(ray: RayData, negative: bool, options: AsymptoticOptions) -> AsymResult<Self> {
        let im = ray.im_v();
        let intervals = [classify_interval(im[0])?, classify_interval(im[1])?, classify_interval(im[2])?];
        let branch = if negative {
            Branch::XNeg
        } else if intervals.iter().all(|&k| k == intervals[0]) {
            match intervals[0] {
                Interval::I1 => Branch::XPosI1,
                Interval::I2 => Branch::XPosI2,
                Interval::I3 => Branch::XPosI3,
            }
        } else {
            Branch::XPosMixed
        };
        let v = [ray.saddles[0].v, ray.saddles[1].v, ray.saddles[2].v];
        let error_orders = error_order(v)?;
        let mu = if negative { -ray.geometry.mu } else { ray.geometry.mu };
        Ok(RayAsymptotics { mu, ray, options, branch, intervals, error_orders })
    }

    fn branch_order(&self) -> Order {
        match self.branch {
            Branch::XNeg | Branch::XPosI1 => self.error_orders.r1,
            Branch::XPosI3 => self.error_orders.r2,
            Branch::XPosI2 | Branch::XPosMixed => self.error_orders.combined(),
        }
    }

    /// `χₛ + φₛ` at the stationary point.
    fn phase_sum(&self, s: usize, t: f64) -> AsymResult<C> {
        let chi = self.ray.saddle(s)?.chi;
        Ok(chi + local_phase_phi(s, &self.ray.geometry, t, C::new(0.0, 0.0), self.options.phi_mode)?)
    }

    /// Leading-order `q(μt, t)`.
    pub fn evaluate(&self, t: f64) -> AsymResult<AsymptoticResult> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(AsymError::Domain(format!("time t = {t} must be positive")));
        }
        let coeff = coefficients_hln(&self.ray, self.options.power_base, t)?;
        let i = C::new(0.0, 1.0);
        let ln_t = t.ln();
        let mut terms = Vec::new();
        for s in 1..=3 {
            let sad = self.ray.saddle(s)?;
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            let p = self.phase_sum(s, t)?;
            let mut push = |kind: TermKind, coefficient: C, amplitude: C, t_exponent: C| {
                terms.push(LeadingTerm {
                    saddle: s,
                    kind,
                    coefficient,
                    amplitude,
                    t_exponent,
                    value: amplitude * (t_exponent * ln_t).exp(),
                });
            };
            if self.branch == Branch::XNeg {
                let h = coeff.h[s - 1];
                push(TermKind::H, h, -h * (-2.0 * p.conj()).exp(), -0.5 + sign * i * sad.v.conj());
                continue;
            }
            let interval = self.intervals[s - 1];
            if interval != Interval::I3 {
                let n = coeff.n[s - 1];
                push(TermKind::N, n, n * (-2.0 * p).exp(), -0.5 - sign * i * sad.v);
            }
            if interval != Interval::I1 {
                let l = coeff.l[s - 1];
                push(TermKind::L, l, -l * (2.0 * p).exp(), -0.5 + sign * i * sad.v);
            }
        }
        let background = if self.branch == Branch::XNeg { C::new(0.0, 0.0) } else { self.ray.background };
        let value = background + terms.iter().map(|t| t.value).sum::<C>();
        Ok(AsymptoticResult {
            x: self.mu * t,
            t,
            mu: self.mu,
            branch: self.branch,
            terms,
            background,
            error_orders: self.error_orders.clone(),
            error_order: self.branch_order(),
            value,
        })
    }
}

/// Leading-order `q(x, t)` for the data on the ray `μ = x/t`.
pub fn q_asymptotic(
    x: f64,
    t: f64,
    data: &ScatteringData,
    gamma: f64,
    options: AsymptoticOptions,
) -> AsymResult<AsymptoticResult> {
    if !(t > 0.0 && t.is_finite() && x.is_finite()) {
        return Err(AsymError::Domain(format!("need finite x and t > 0, got ({x}, {t})")));
    }
    RayAsymptotics::new(data, x / t, gamma, options)?.evaluate(t)
}
