//! Isothermal gas law, Bernoulli function and the conserved quantities of
//! radially symmetric flow.
//!
//! The pressure law is `p = A rho`, so the sound speed `sqrt(A)` does not
//! depend on the state. Along a smooth radial flow the mass flux `r rho U1`,
//! the circulation `r U2` and the Bernoulli value
//! `B = (U1^2 + U2^2)/2 + A ln(rho)` are constant. Inward flow is encoded by
//! a negative radial velocity (and hence a negative mass flux).

use serde::Serialize;

use crate::error::{require, Result};

/// Isothermal gas, `p = A rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GasModel {
    a: f64,
}

impl GasModel {
    pub fn new(a: f64) -> Result<Self> {
        require(a.is_finite() && a > 0.0, || format!("A must be positive and finite, got {a}"))?;
        Ok(Self { a })
    }

    /// Squared sound speed.
    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn sound_speed(&self) -> f64 {
        self.a.sqrt()
    }

    #[inline]
    pub fn pressure(&self, rho: f64) -> f64 {
        self.a * rho
    }

    /// Bernoulli function `(u1^2 + u2^2)/2 + A ln(rho)`.
    #[inline]
    pub fn bernoulli(&self, rho: f64, u1: f64, u2: f64) -> f64 {
        0.5 * (u1 * u1 + u2 * u2) + self.a * rho.ln()
    }
}

/// Density and velocity prescribed on a circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryState {
    pub r: f64,
    pub rho: f64,
    pub u1: f64,
    pub u2: f64,
}

impl BoundaryState {
    pub fn new(r: f64, rho: f64, u1: f64, u2: f64) -> Self {
        Self { r, rho, u1, u2 }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        require(self.r.is_finite() && self.r > 0.0, || format!("data radius must be positive, got {}", self.r))?;
        require(self.rho.is_finite() && self.rho > 0.0, || format!("density must be positive, got {}", self.rho))?;
        require(self.u1.is_finite() && self.u2.is_finite(), || "velocity must be finite".into())
    }
}

/// The conserved triple `(m1, m2, B)` of a smooth radial flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    /// Mass flux per unit angle, `r rho U1`.
    pub m1: f64,
    /// Circulation, `r U2`.
    pub m2: f64,
    /// Bernoulli constant.
    pub b: f64,
}

impl Invariants {
    pub fn new(m1: f64, m2: f64, b: f64) -> Self {
        Self { m1, m2, b }
    }

    /// `K(r) = B - m2^2 / (2 r^2)`, the part of the Bernoulli constant left
    /// after removing the swirl kinetic energy at radius `r`.
    #[inline]
    pub fn reduced_bernoulli(&self, r: f64) -> f64 {
        self.b - 0.5 * self.m2 * self.m2 / (r * r)
    }

    /// Same flux and circulation, different Bernoulli constant.
    pub fn with_bernoulli(&self, b: f64) -> Self {
        Self { b, ..*self }
    }
}

/// Pointwise state of a radially symmetric flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowState {
    pub r: f64,
    pub rho: f64,
    pub u1: f64,
    pub u2: f64,
    pub p: f64,
    /// `U1^2 / A`
    pub m1sq: f64,
    /// `U2^2 / A`
    pub m2sq: f64,
    /// `|M|^2 = M1^2 + M2^2`
    pub msq: f64,
    /// Bernoulli value of this state.
    pub bern: f64,
}

impl FlowState {
    /// Builds the state from primitive variables.
    pub fn from_primitive(gas: &GasModel, r: f64, rho: f64, u1: f64, u2: f64) -> Self {
        let m1sq = u1 * u1 / gas.a();
        let m2sq = u2 * u2 / gas.a();
        Self {
            r,
            rho,
            u1,
            u2,
            p: gas.pressure(rho),
            m1sq,
            m2sq,
            msq: m1sq + m2sq,
            bern: gas.bernoulli(rho, u1, u2),
        }
    }

    /// Signed radial Mach number `U1 / sqrt(A)`.
    pub fn m1(&self, gas: &GasModel) -> f64 {
        self.u1 / gas.sound_speed()
    }

    /// Signed angular Mach number `U2 / sqrt(A)`.
    pub fn m2(&self, gas: &GasModel) -> f64 {
        self.u2 / gas.sound_speed()
    }
}

/// Conserved triple generated by boundary data.
pub fn invariants_from_boundary(gas: &GasModel, b: &BoundaryState) -> Result<Invariants> {
    b.validate()?;
    Ok(Invariants {
        m1: b.r * b.rho * b.u1,
        m2: b.r * b.u2,
        b: gas.bernoulli(b.rho, b.u1, b.u2),
    })
}

/// Reconstructs the state at radius `r` from a density and the invariants.
pub fn state_from_density(gas: &GasModel, inv: &Invariants, r: f64, rho: f64) -> Result<FlowState> {
    require(r.is_finite() && r > 0.0, || format!("radius must be positive, got {r}"))?;
    require(rho.is_finite() && rho > 0.0, || format!("density must be positive, got {rho}"))?;
    let u1 = inv.m1 / (r * rho);
    let u2 = inv.m2 / r;
    Ok(FlowState::from_primitive(gas, r, rho, u1, u2))
}

/// Bernoulli value of `s` minus the invariant constant.
pub fn bernoulli_residual(gas: &GasModel, inv: &Invariants, s: &FlowState) -> f64 {
    gas.bernoulli(s.rho, s.u1, s.u2) - inv.b
}
