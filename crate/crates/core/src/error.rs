use thiserror::Error;

/// Errors raised by the flow, shock and stability computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The algebraic density equation has no positive root at this radius
    /// (the radius lies inside the limiting circle).
    #[error("no density root at r = {radius}")]
    NoRoot { radius: f64 },

    /// The two density branches coincide to within the merge tolerance.
    #[error("density branches merge at r = {radius}")]
    BranchMerged { radius: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Boundary data sits exactly on a sonic threshold.
    #[error("degenerate boundary data: {0}")]
    DegenerateData(String),

    #[error("inadmissible jump: upstream radial Mach number squared {m1sq} is not above 1")]
    InadmissibleJump { m1sq: f64 },

    #[error("exit pressure {p_ex} outside the admissible window ({p1}, {p0})")]
    PressureOutOfWindow { p_ex: f64, p1: f64, p0: f64 },

    #[error("invalid background at r = {radius}: {reason}")]
    InvalidBackground { radius: f64, reason: String },

    #[error("|M|^2(r0) = {msq} <= 1, every w0 is admissible")]
    EmptyWindow { msq: f64 },

    #[error("multiplier w1 is not positive at r = {radius} (w1 = {value})")]
    NonPositiveW1 { radius: f64, value: f64 },

    #[error("coercivity constant sigma3 = {sigma3} is not positive (at r = {radius})")]
    NonPositiveSigma3 { sigma3: f64, radius: f64 },

    #[error("w0 = {w0} lies in the forbidden window ({lo}, {hi})")]
    W0Forbidden { w0: f64, lo: f64, hi: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidInput(msg()))
    }
}
