//! Closed-form quantities: the slack `E`, the extinction-time lower bound
//! and its random-walk ingredients, and exact birth-death hitting times.
//!
//! Everything that can overflow a double is carried as an exact rational
//! expression and evaluated in log space on request.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

mod birth_death;
mod slack;
mod theorem;
mod walk;

pub use birth_death::{
    exact_extinction_complete, exact_extinction_complete_f64, exact_hitting_time,
    exact_hitting_time_f64, BirthDeathChain,
};
pub use slack::{corollary_premise, slack_e, CorollaryPremise};
pub use theorem::{
    random_walk_bound_expr, theorem4_bound, BoundExpr, BoundInputs, BoundReport, TheoremOutcome,
};
pub use walk::{
    estimate_up_probability, gambler_up_probability, random_walk_lower_bound,
    regeneration_time, sample_walk_exit, WalkParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the random-walk bound needs lambda < mu (got lambda={lambda}, mu={mu})")]
    Domain { lambda: String, mu: String },
    #[error("state 0 is not reachable from state {0}")]
    Unreachable(usize),
}

pub(crate) fn invalid(msg: impl Into<String>) -> BoundError {
    BoundError::InvalidInput(msg.into())
}

/// Natural log of a positive big integer without overflowing f64.
fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("fits").ln()
    } else {
        let shift = bits - 64;
        let top: BigInt = x >> shift;
        top.to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of a positive rational.
pub(crate) fn ln_rational(x: &BigRational) -> f64 {
    debug_assert!(x.is_positive());
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// Lossy conversion that saturates instead of failing.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            let sign = if x.is_negative() { -1.0 } else { 1.0 };
            sign * ln_rational(&x.abs()).exp()
        }
    }
}
