use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::One;

use super::{invalid, BoundError};

/// `E = (2/Δ)((n+2)Δ/2 - W) = n + 2 - 2W/Δ`, exactly.
///
/// Requires `Δ >= 1` and `0 <= W <= nΔ/2`; the result is then at least 2.
pub fn slack_e(n: i64, max_degree: i64, cutwidth: i64) -> Result<Rational64, BoundError> {
    if max_degree < 1 {
        return Err(invalid(format!("max degree must be >= 1, got {max_degree}")));
    }
    if cutwidth < 0 || 2 * cutwidth > n * max_degree {
        return Err(invalid(format!(
            "CutWidth {cutwidth} outside [0, n*delta/2] for n={n}, delta={max_degree}"
        )));
    }
    Ok(Rational64::from_integer(n + 2) - Rational64::new(2 * cutwidth, max_degree))
}

/// Finite-n reading of the large-CutWidth corollary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryPremise {
    /// `W >= (9C/19) n Δ`.
    pub holds: bool,
    /// `19W - 9nΔ - 30Δ`, the numerator of the base of the bound at `I_0 = V`
    /// (the printed form drops the minus sign before `30Δ`).
    pub base_term: i64,
}

pub fn corollary_premise(
    n: i64,
    max_degree: i64,
    cutwidth: i64,
    c: &BigRational,
) -> Result<CorollaryPremise, BoundError> {
    if *c <= BigRational::one() {
        return Err(invalid(format!("C must exceed 1, got {c}")));
    }
    let lhs = BigRational::from_integer(BigInt::from(19 * cutwidth));
    let rhs = c * BigRational::from_integer(BigInt::from(9 * n * max_degree));
    Ok(CorollaryPremise {
        holds: lhs >= rhs,
        base_term: 19 * cutwidth - 9 * n * max_degree - 30 * max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn slack_examples() {
        // W = nΔ/2 gives the minimum E = 2
        assert_eq!(slack_e(6, 3, 9).unwrap(), Rational64::from_integer(2));
        // K4: n=4, Δ=3, W=4
        assert_eq!(slack_e(4, 3, 4).unwrap(), Rational64::new(10, 3));
        // P4: n=4, Δ=2, W=1
        assert_eq!(slack_e(4, 2, 1).unwrap(), Rational64::from_integer(5));
    }

    #[test]
    fn slack_rejects_out_of_range() {
        assert!(slack_e(4, 0, 0).is_err());
        assert!(slack_e(4, 2, 5).is_err());
        assert!(slack_e(4, 2, -1).is_err());
    }

    #[test]
    fn slack_at_least_two() {
        for n in 1..30 {
            for d in 1..10 {
                for w in 0..=(n * d / 2) {
                    assert!(slack_e(n, d, w).unwrap() >= Rational64::from_integer(2));
                }
            }
        }
    }

    #[test]
    fn corollary_examples() {
        // W = nΔ/2 with C = 1.01
        let p = corollary_premise(10, 4, 20, &ratio(101, 100)).unwrap();
        assert!(p.holds);
        assert_eq!(p.base_term, 19 * 20 - 9 * 40 - 120);
        // path graphs never qualify
        for n in 2..40 {
            assert!(!corollary_premise(n, 2, 1, &ratio(101, 100)).unwrap().holds);
        }
        // boundary: 9C/19 = 1/2 exactly, W = nΔ/2
        assert!(corollary_premise(10, 4, 20, &ratio(19, 18)).unwrap().holds);
        assert!(!corollary_premise(10, 4, 19, &ratio(19, 18)).unwrap().holds);
        assert!(corollary_premise(10, 4, 20, &ratio(1, 1)).is_err());
    }
}
