//! Local model data at all three stationary points, the diagonal conjugators `Λₛ = e^{ηₛσ₃}`
//! and the leading coefficient matrices `Ξₛ` of the local solutions on small circles.

use crate::error::{PcError, PcResult};
use crate::model::LocalModel;
use crate::scaling::{local_phase_phi, PhiMode};
use lpd_numerics_core::{Complex64, Mat2};
use lpd_phase::PhaseGeometry;
use lpd_rh_factors::{regularized_reflections, DeltaFunction};

type C = Complex64;

/// Everything the local model at one stationary point depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalModelData {
    pub s: usize,
    pub lambda: f64,
    /// Positive curvature factor `cₛ`.
    pub curvature: f64,
    pub v: C,
    /// `χₛ(λₛ)`.
    pub chi: C,
    /// Regularised reflection coefficients at `λₛ`.
    pub r1: C,
    pub r2: C,
    /// `β`, `γ` of this saddle (conjugated for `s = 2`).
    pub beta: C,
    pub gamma: C,
    pub model: LocalModel,
    pub phi_mode: PhiMode,
}

/// Local model data at `λ₁, λ₂, λ₃` on one ray.
#[derive(Debug, Clone, PartialEq)]
pub struct SaddleSet {
    pub geometry: PhaseGeometry,
    pub models: [LocalModelData; 3],
    pub phi_mode: PhiMode,
}

fn i() -> C {
    C::new(0.0, 1.0)
}

impl SaddleSet {
    /// Builds the local data from `δ`: `v(λₛ)`, `χₛ(λₛ)` and `rⱼʳ(λₛ)`.
    pub fn build(delta: &DeltaFunction, phi_mode: PhiMode) -> PcResult<Self> {
        let ex = delta.exponents()?;
        let lambdas = delta.lambdas();
        let mut refl = [(C::new(0.0, 0.0), C::new(0.0, 0.0)); 3];
        for s in 0..3 {
            refl[s] = regularized_reflections(delta.data(), C::new(lambdas[s], 0.0))?;
        }
        Self::from_parts(delta.geometry().clone(), ex.v, ex.chi, refl, phi_mode)
    }

    /// Builds the local data from explicit exponents, regular parts and reflection values.
    pub fn from_parts(
        geometry: PhaseGeometry,
        v: [C; 3],
        chi: [C; 3],
        reflections: [(C, C); 3],
        phi_mode: PhiMode,
    ) -> PcResult<Self> {
        let mut out = Vec::with_capacity(3);
        for s in 1..=3 {
            let (r1, r2) = reflections[s - 1];
            let model = LocalModel::new(s, r1, r2, v[s - 1])?;
            let (beta, gamma) = model.coefficients();
            out.push(LocalModelData {
                s,
                lambda: geometry.lambda(s)?,
                curvature: geometry.curvature_factor(s).map_err(|e| PcError::Regime(e.to_string()))?,
                v: v[s - 1],
                chi: chi[s - 1],
                r1,
                r2,
                beta,
                gamma,
                model,
                phi_mode,
            });
        }
        let models: [LocalModelData; 3] = out.try_into().expect("three saddles");
        Ok(SaddleSet { geometry, models, phi_mode })
    }

    pub fn model(&self, s: usize) -> PcResult<&LocalModelData> {
        self.models
            .get(s.wrapping_sub(1))
            .ok_or_else(|| PcError::Domain(format!("saddle index {s} must be 1, 2 or 3")))
    }

    fn c(&self, s: usize) -> f64 {
        self.models[s - 1].curvature
    }

    /// `χₛ + φₛ` at the stationary point.
    pub fn phase_sum(&self, s: usize, t: f64) -> PcResult<C> {
        let m = self.model(s)?;
        Ok(m.chi + local_phase_phi(s, &self.geometry, t, C::new(0.0, 0.0), self.phi_mode)?)
    }

    /// Positive base of the power factor at `λ₁` and `λ₃`: `c₂/(4t c₁c₃)`.
    pub fn outer_base(&self, t: f64) -> f64 {
        self.c(2) / (4.0 * t * self.c(1) * self.c(3))
    }

    /// `ηₛ` with `Λₛ = e^{ηₛσ₃}`:
    /// `η₁ = χ₁ + φ₁ + (i/2)v₁ ln F`, `η₃ = χ₃ + φ₃ + (i/2)v₃ ln F` with `F = c₂/(4tc₁c₃)`, and
    /// `η₂ = χ₂ + φ₂ − (i/2)v₃ ln(1/(4tc₃)) − (i/2)v₂ ln(c₂/c₁)`.
    pub fn lambda_conjugator(&self, s: usize, t: f64) -> PcResult<C> {
        let base = self.phase_sum(s, t)?;
        let v = |k: usize| self.models[k - 1].v;
        Ok(match s {
            1 | 3 => base + 0.5 * i() * v(s) * self.outer_base(t).ln(),
            _ => {
                base - 0.5 * i() * v(3) * (1.0 / (4.0 * t * self.c(3))).ln()
                    - 0.5 * i() * v(2) * (self.c(2) / self.c(1)).ln()
            }
        })
    }

    /// Leading matrix `Ξₛ` in the closed form
    /// `Ξ₁ = −i/(2√c₁)[[0, βe^{2[χ₁+φ₁]}F^{iv₁}], [γe^{−2[χ₁+φ₁]}F^{−iv₁}, 0]]` (likewise `Ξ₃`), and
    /// `Ξ₂ = −i/(2√c₂)[[0, β₂e^{2[χ₂+φ₂]}F₂^{−iv₂}/F̃₂], [γ₂e^{−2[χ₂+φ₂]}F₂^{iv₂}F̃₂, 0]]` with
    /// `F₂ = 1/(4tc₂)`, `F̃₂ = (4tc₁)^{iv₂}(1/(4tc₃))^{−iv₃}`.
    pub fn xi_leading(&self, s: usize, t: f64) -> PcResult<Mat2> {
        let m = self.model(s)?;
        let e = (2.0 * self.phase_sum(s, t)?).exp();
        let pre = -i() / (2.0 * m.curvature.sqrt());
        let (up, down) = match s {
            1 | 3 => {
                let f = C::new(self.outer_base(t).ln(), 0.0);
                ((i() * m.v * f).exp(), (-i() * m.v * f).exp())
            }
            _ => {
                let ln_f2 = (1.0 / (4.0 * t * self.c(2))).ln();
                let ln_ft = i() * m.v * (4.0 * t * self.c(1)).ln()
                    - i() * self.models[2].v * (1.0 / (4.0 * t * self.c(3))).ln();
                ((-i() * m.v * ln_f2 - ln_ft).exp(), (i() * m.v * ln_f2 + ln_ft).exp())
            }
        };
        Ok(Mat2::offdiag(pre * m.beta * e * up, pre * m.gamma / e * down))
    }

    /// `Λₛ·res(m̂ₛ)·Λₛ⁻¹/(2√cₛ)`: the leading matrix obtained directly from the conjugator and
    /// the model's `1/τ` coefficient. Agrees with [`Self::xi_leading`] at `λ₁`, `λ₃`.
    pub fn xi_from_conjugator(&self, s: usize, t: f64) -> PcResult<Mat2> {
        let m = self.model(s)?;
        let eta = self.lambda_conjugator(s, t)?;
        let conj = Mat2::exp_sigma3(eta) * m.model.residue_matrix() * Mat2::exp_sigma3(-eta);
        Ok(conj * (1.0 / (2.0 * m.curvature.sqrt())))
    }

    /// `Ξₛʳ = −Ξₛ/√t`.
    pub fn xi_regular(&self, s: usize, t: f64) -> PcResult<Mat2> {
        Ok(self.xi_leading(s, t)? * (-1.0 / t.sqrt()))
    }
}
