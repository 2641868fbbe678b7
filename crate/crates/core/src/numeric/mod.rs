//! Small numerical kernels used by the flow modules.

pub mod ode;
pub mod quad;
pub mod roots;
