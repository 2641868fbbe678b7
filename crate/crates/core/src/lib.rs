//! Steady, radially symmetric isothermal Euler flows with swirl in an annulus.
//!
//! * [`gas`]: pressure law, Bernoulli function, invariants and pointwise states.
//! * [`radial`]: density branches, sonic and limiting circles, smooth pattern
//!   classification, profiles and their ODE cross-check.
//! * [`shock`]: radial Rankine–Hugoniot jumps, shock fitting to an exit
//!   pressure and the downstream wave-pattern taxonomy.
//! * [`stability`]: background coefficients of the linearized mixed-type
//!   potential equation, their identities, and energy-estimate multipliers.

pub mod error;
pub mod gas;
pub mod numeric;
pub mod radial;
pub mod shock;
pub mod stability;

pub use error::{Error, Result};
pub use gas::{bernoulli_residual, invariants_from_boundary, state_from_density, BoundaryState, FlowState, GasModel, Invariants};
pub use radial::{Branch, FlowPattern};
