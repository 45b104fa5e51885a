//! Explicit solution of the parabolic-cylinder model problem in terms of `D_a(z)`.
//!
//! The model `m̂(τ) = m(τ)·P(τ)·τ^{−ivσ₃}e^{iτ²σ₃/4}` is analytic off four rays at angles
//! `±π/4`, `±3π/4`, where it jumps by triangular factors, and tends to the identity as
//! `m̂ = I − (i/τ)[[0, β], [γ, 0]] + O(τ⁻²)`. The unbracketed part `m(τ)` has the constant
//! jump `J₀ = [[1 + r₁r₂, −r₂], [−r₁, 1]]` across the real line (`m₊ = m₋J₀`).

use crate::error::{PcError, PcResult};
use lpd_numerics_core::{complex_gamma, parabolic_cylinder_d, recip_gamma, Complex64, Mat2};
use std::f64::consts::{FRAC_PI_4, PI};

type C = Complex64;

/// Exponents this small are treated as zero when a reflection coefficient vanishes.
pub const ZERO_EXPONENT: f64 = 1e-12;
/// Relative tolerance on `e^{−2πv} = 1 + r₁r₂`.
pub const EXPONENT_CONSISTENCY: f64 = 1e-10;

fn i() -> C {
    C::new(0.0, 1.0)
}

/// `(β, γ)` with `β = −√(2π)e^{−πv/2}e^{iπ/4}/(r₁Γ(−iv))`,
/// `γ = −√(2π)e^{−πv/2}e^{−iπ/4}/(r₂Γ(iv))`; for `s = 2` both are conjugated.
/// `v = 0` gives `(0, 0)` exactly (`1/Γ(0) = 0`).
pub fn pc_coefficients(s: usize, r1: C, r2: C, v: C) -> PcResult<(C, C)> {
    if !(1..=3).contains(&s) {
        return Err(PcError::Domain(format!("saddle index {s} must be 1, 2 or 3")));
    }
    if v == C::new(0.0, 0.0) {
        return Ok((C::new(0.0, 0.0), C::new(0.0, 0.0)));
    }
    if r1 == C::new(0.0, 0.0) || r2 == C::new(0.0, 0.0) {
        // 1 + r₁r₂ = 1 up to rounding: the exponent is zero
        if v.norm() <= ZERO_EXPONENT {
            return Ok((C::new(0.0, 0.0), C::new(0.0, 0.0)));
        }
        return Err(PcError::Domain(format!("reflection coefficients must be nonzero when v = {v} ≠ 0")));
    }
    let k = (2.0 * PI).sqrt() * (-PI * v / 2.0).exp();
    let beta = -k * C::from_polar(1.0, FRAC_PI_4) * recip_gamma(-i() * v) / r1;
    let gamma = -k * C::from_polar(1.0, -FRAC_PI_4) * recip_gamma(i() * v) / r2;
    Ok(if s == 2 { (beta.conj(), gamma.conj()) } else { (beta, gamma) })
}

/// Open sectors cut out by the four rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// `0 < arg τ < π/4`
    Omega1,
    /// `π/4 < arg τ < 3π/4`
    Omega0,
    /// `3π/4 < arg τ < π`
    Omega2,
    /// `−π < arg τ < −3π/4`
    Omega2Star,
    /// `−3π/4 < arg τ < −π/4`
    Omega0Star,
    /// `−π/4 < arg τ < 0`
    Omega1Star,
}

impl Sector {
    pub fn is_upper(self) -> bool {
        matches!(self, Sector::Omega1 | Sector::Omega0 | Sector::Omega2)
    }
}

/// The four rays, named by angle, with orientation: `Σ₁` (π/4) and `Σ₂*` (−3π/4) point away
/// from the origin, `Σ₂` (3π/4) and `Σ₁*` (−π/4) towards it. The `+` side is on the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ray {
    Sigma1,
    Sigma2,
    Sigma1Star,
    Sigma2Star,
}

impl Ray {
    pub fn angle(self) -> f64 {
        match self {
            Ray::Sigma1 => FRAC_PI_4,
            Ray::Sigma2 => 3.0 * FRAC_PI_4,
            Ray::Sigma1Star => -FRAC_PI_4,
            Ray::Sigma2Star => -3.0 * FRAC_PI_4,
        }
    }

    /// `(+ side, − side)`.
    pub fn sides(self) -> (Sector, Sector) {
        match self {
            Ray::Sigma1 => (Sector::Omega0, Sector::Omega1),
            Ray::Sigma2 => (Sector::Omega0, Sector::Omega2),
            Ray::Sigma1Star => (Sector::Omega0Star, Sector::Omega1Star),
            Ray::Sigma2Star => (Sector::Omega0Star, Sector::Omega2Star),
        }
    }
}

/// Relative angular distance below which a point counts as lying on a ray.
pub const RAY_ANGLE_TOL: f64 = 1e-12;

/// Sector containing `τ`; the positive and negative real axes belong to `Ω₁` and `Ω₂`
/// (the model is continuous across them).
pub fn sector_of(tau: C) -> PcResult<Sector> {
    if tau == C::new(0.0, 0.0) || !tau.is_finite() {
        return Err(PcError::Domain(format!("model evaluated at τ = {tau}")));
    }
    if tau.im == 0.0 {
        return Ok(if tau.re > 0.0 { Sector::Omega1 } else { Sector::Omega2 });
    }
    let a = tau.arg();
    for ray in [Ray::Sigma1, Ray::Sigma2, Ray::Sigma1Star, Ray::Sigma2Star] {
        if (a - ray.angle()).abs() <= RAY_ANGLE_TOL {
            return Err(PcError::OnContour(tau));
        }
    }
    Ok(match a {
        a if a > 3.0 * FRAC_PI_4 => Sector::Omega2,
        a if a > FRAC_PI_4 => Sector::Omega0,
        a if a > 0.0 => Sector::Omega1,
        a if a > -FRAC_PI_4 => Sector::Omega1Star,
        a if a > -3.0 * FRAC_PI_4 => Sector::Omega0Star,
        _ => Sector::Omega2Star,
    })
}

/// Parabolic-cylinder model with reflection data `(r₁, r₂)` and exponent `v`,
/// `e^{−2πv} = 1 + r₁r₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcModel {
    pub r1: C,
    pub r2: C,
    pub v: C,
    /// `β` of [`pc_coefficients`].
    pub beta: C,
    /// `γ` of [`pc_coefficients`].
    pub gamma: C,
    /// `v/β` and `v/γ` evaluated without cancellation (finite at `v = 0`).
    v_over_beta: C,
    v_over_gamma: C,
}

impl PcModel {
    pub fn new(r1: C, r2: C, v: C) -> PcResult<Self> {
        let w = 1.0 + r1 * r2;
        let e = (-2.0 * PI * v).exp();
        if (e - w).norm() > EXPONENT_CONSISTENCY * (1.0 + w.norm()) {
            return Err(PcError::Domain(format!("e^(−2πv) = {e} does not match 1 + r1·r2 = {w}")));
        }
        if v.im.abs() >= 0.5 {
            return Err(PcError::Domain(format!("|Im v| = {} must be below 1/2", v.im.abs())));
        }
        let (beta, gamma) = pc_coefficients(1, r1, r2, v)?;
        let k = (PI * v / 2.0).exp() / (2.0 * PI).sqrt();
        // vΓ(−iv) = iΓ(1 − iv), vΓ(iv) = −iΓ(1 + iv)
        let v_over_beta = -i() * complex_gamma(1.0 - i() * v)? * r1 * k * C::from_polar(1.0, -FRAC_PI_4);
        let v_over_gamma = i() * complex_gamma(1.0 + i() * v)? * r2 * k * C::from_polar(1.0, FRAC_PI_4);
        Ok(PcModel { r1, r2, v, beta, gamma, v_over_beta, v_over_gamma })
    }

    /// Model with `r₂ = (e^{−2πv} − 1)/r₁`.
    pub fn from_exponent(r1: C, v: C) -> PcResult<Self> {
        if r1 == C::new(0.0, 0.0) {
            return Err(PcError::Domain("r1 must be nonzero".into()));
        }
        Self::new(r1, ((-2.0 * PI * v).exp() - 1.0) / r1, v)
    }

    fn d(&self, a: C, z: C) -> PcResult<C> {
        Ok(parabolic_cylinder_d(a, z)?)
    }

    /// `m(τ)` from the formulas valid for `Im τ ≥ 0`.
    pub fn m_upper(&self, tau: C) -> PcResult<Mat2> {
        let v = self.v;
        let iv = i() * v;
        let e_m3 = C::from_polar(1.0, -3.0 * FRAC_PI_4);
        let e_m1 = C::from_polar(1.0, -FRAC_PI_4);
        let m11 = (-3.0 * PI * v / 4.0).exp() * self.d(iv, e_m3 * tau)?;
        // (−iv/γ_c) with γ_c = −γ
        let m12 = i() * self.v_over_gamma * (PI * (v - i()) / 4.0).exp() * self.d(-iv - 1.0, e_m1 * tau)?;
        let m21 = i() * self.v_over_beta * (-3.0 * PI * (v + i()) / 4.0).exp() * self.d(iv - 1.0, e_m3 * tau)?;
        let m22 = (PI * v / 4.0).exp() * self.d(-iv, e_m1 * tau)?;
        Ok(Mat2::new(m11, m12, m21, m22))
    }

    /// `m(τ)` from the formulas valid for `Im τ ≤ 0`.
    pub fn m_lower(&self, tau: C) -> PcResult<Mat2> {
        let v = self.v;
        let iv = i() * v;
        let e_p1 = C::from_polar(1.0, FRAC_PI_4);
        let e_p3 = C::from_polar(1.0, 3.0 * FRAC_PI_4);
        let m11 = (PI * v / 4.0).exp() * self.d(iv, e_p1 * tau)?;
        let m12 = i() * self.v_over_gamma * (-3.0 * PI * (v - i()) / 4.0).exp() * self.d(-iv - 1.0, e_p3 * tau)?;
        let m21 = i() * self.v_over_beta * (PI * (v + i()) / 4.0).exp() * self.d(iv - 1.0, e_p1 * tau)?;
        let m22 = (-3.0 * PI * v / 4.0).exp() * self.d(-iv, e_p3 * tau)?;
        Ok(Mat2::new(m11, m12, m21, m22))
    }

    /// Constant jump of `m` across the real line.
    pub fn real_line_jump(&self) -> Mat2 {
        Mat2::new(1.0 + self.r1 * self.r2, -self.r2, -self.r1, C::new(1.0, 0.0))
    }

    /// Sector factor `P`.
    pub fn sector_matrix(&self, sector: Sector) -> Mat2 {
        let w = 1.0 + self.r1 * self.r2;
        match sector {
            Sector::Omega0 | Sector::Omega0Star => Mat2::identity(),
            Sector::Omega1 => Mat2::lower(self.r1),
            Sector::Omega2 => Mat2::upper(self.r2 / w),
            Sector::Omega2Star => Mat2::lower(-self.r1 / w),
            Sector::Omega1Star => Mat2::upper(-self.r2),
        }
    }

    /// `τ^{−iv}e^{iτ²/4}` with `arg τ` taken in the closure of the given sector.
    fn g_scalar(&self, tau: C, sector: Sector) -> C {
        let arg = if tau.im == 0.0 && tau.re < 0.0 {
            if sector.is_upper() {
                PI
            } else {
                -PI
            }
        } else {
            tau.arg()
        };
        let ln = C::new(tau.norm().ln(), arg);
        (-i() * self.v * ln + i() * tau * tau / 4.0).exp()
    }

    /// `m̂(τ)` computed with the formulas of the given sector (valid on its closure).
    pub fn matrix_in(&self, sector: Sector, tau: C) -> PcResult<Mat2> {
        if tau == C::new(0.0, 0.0) {
            return Err(PcError::Domain("model evaluated at τ = 0".into()));
        }
        let m = if sector.is_upper() { self.m_upper(tau)? } else { self.m_lower(tau)? };
        let g = self.g_scalar(tau, sector);
        Ok(m * self.sector_matrix(sector) * Mat2::diag(g, 1.0 / g))
    }

    /// `m̂(τ)` off the rays.
    pub fn matrix(&self, tau: C) -> PcResult<Mat2> {
        self.matrix_in(sector_of(tau)?, tau)
    }

    /// Jump `m̂₊ = m̂₋J` on a ray: `J = G⁻¹P₋⁻¹G` with `G = τ^{−ivσ₃}e^{iτ²σ₃/4}`.
    pub fn ray_jump(&self, ray: Ray, tau: C) -> Mat2 {
        let g2 = self.g_scalar(tau, ray.sides().0).powi(2);
        let w = 1.0 + self.r1 * self.r2;
        match ray {
            Ray::Sigma1 => Mat2::lower(-self.r1 * g2),
            Ray::Sigma2 => Mat2::upper(-self.r2 / w / g2),
            Ray::Sigma1Star => Mat2::upper(self.r2 / g2),
            Ray::Sigma2Star => Mat2::lower(self.r1 / w * g2),
        }
    }

    /// `lim τ(m̂(τ) − I) = −i[[0, β], [γ, 0]]`.
    pub fn residue_matrix(&self) -> Mat2 {
        Mat2::offdiag(-i() * self.beta, -i() * self.gamma)
    }
}

/// The local model at saddle `s`: the parabolic-cylinder model itself for `s ∈ {1, 3}` and its
/// mirror image `conj m̂(−τ̄)` for `s = 2`, where the quadratic phase has the opposite sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalModel {
    pub s: usize,
    pub base: PcModel,
}

impl LocalModel {
    pub fn new(s: usize, r1: C, r2: C, v: C) -> PcResult<Self> {
        if !(1..=3).contains(&s) {
            return Err(PcError::Domain(format!("saddle index {s} must be 1, 2 or 3")));
        }
        Ok(LocalModel { s, base: PcModel::new(r1, r2, v)? })
    }

    fn mirrored(&self) -> bool {
        self.s == 2
    }

    /// `(β, γ)` of this saddle (conjugated for `s = 2`).
    pub fn coefficients(&self) -> (C, C) {
        if self.mirrored() {
            (self.base.beta.conj(), self.base.gamma.conj())
        } else {
            (self.base.beta, self.base.gamma)
        }
    }

    pub fn matrix(&self, tau: C) -> PcResult<Mat2> {
        if self.mirrored() {
            Ok(self.base.matrix(-tau.conj())?.conj())
        } else {
            self.base.matrix(tau)
        }
    }

    /// `m` (without sector and phase factors) from the upper or lower formulas.
    pub fn m(&self, tau: C, upper: bool) -> PcResult<Mat2> {
        let (z, f) = if self.mirrored() { (-tau.conj(), true) } else { (tau, false) };
        let m = if upper { self.base.m_upper(z)? } else { self.base.m_lower(z)? };
        Ok(if f { m.conj() } else { m })
    }

    /// Jump of `m` across the real line, `m₊ = m₋J` (`+` from above).
    pub fn real_line_jump(&self) -> Mat2 {
        let j = self.base.real_line_jump();
        if self.mirrored() {
            j.conj()
        } else {
            j
        }
    }

    /// `lim τ(m̂ − I)`.
    pub fn residue_matrix(&self) -> Mat2 {
        let (b, g) = self.coefficients();
        Mat2::offdiag(-i() * b, -i() * g)
    }
}
