use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::{invalid, ln_rational, BoundError};

/// `scale · (base^exponent − 1)`, kept symbolic so that two routes to the
/// same bound can be compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundExpr {
    pub scale: BigRational,
    pub base: BigRational,
    pub exponent: BigRational,
}

/// Integer exponents up to this size are expanded exactly.
const EXACT_EXPONENT_LIMIT: u64 = 4096;

impl BoundExpr {
    /// Exact value when the exponent is a (small, non-negative) integer.
    pub fn exact(&self) -> Option<BigRational> {
        if !self.exponent.is_integer() || self.exponent.is_negative() {
            return None;
        }
        let e = self.exponent.to_integer().to_u64()?;
        if e > EXACT_EXPONENT_LIMIT {
            return None;
        }
        let power = Pow::pow(&self.base, BigInt::from(e));
        Some(&self.scale * (power - BigRational::one()))
    }

    /// `log10` of the value; `-inf` when the value is zero. Only meaningful
    /// for `base >= 1`, which every valid bound satisfies.
    pub fn log10(&self) -> f64 {
        if self.base <= BigRational::one() || self.exponent.is_zero() {
            return if self.base == BigRational::one() || self.exponent.is_zero() {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            };
        }
        let x = self.exponent.to_f64().unwrap_or(f64::INFINITY) * ln_rational(&self.base);
        // ln(e^x - 1) = x + ln(1 - e^{-x})
        let ln_term = x + (-(-x).exp()).ln_1p();
        (ln_rational(&self.scale) + ln_term) / std::f64::consts::LN_10
    }

    pub fn to_f64(&self) -> f64 {
        10f64.powf(self.log10())
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * (({})^({}) - 1)", self.scale, self.base, self.exponent)
    }
}

/// Inputs of the extinction-time lower bound from an initial infected set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInputs {
    pub gamma0: u64,
    pub max_degree: u64,
    pub slack: BigRational,
    pub budget: BigRational,
}

impl BoundInputs {
    pub fn new(
        gamma0: u64,
        max_degree: u64,
        slack: BigRational,
        budget: BigRational,
    ) -> Result<Self, BoundError> {
        if max_degree < 1 {
            return Err(invalid("max degree must be >= 1"));
        }
        if slack < BigRational::from_integer(2.into()) {
            return Err(invalid(format!("slack E must be >= 2, got {slack}")));
        }
        if !budget.is_positive() {
            return Err(invalid(format!("budget must be > 0, got {budget}")));
        }
        Ok(BoundInputs {
            gamma0,
            max_degree,
            slack,
            budget,
        })
    }

    /// `Δ(9E + 12) + 3r`, the least γ(I_0) for which the bound applies.
    pub fn threshold(&self) -> BigRational {
        let delta = BigRational::from_integer(self.max_degree.into());
        let nine = BigRational::from_integer(9.into());
        let twelve = BigRational::from_integer(12.into());
        let three = BigRational::from_integer(3.into());
        delta * (nine * &self.slack + twelve) + three * &self.budget
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremOutcome {
    ConditionUnmet { required: BigRational },
    Bound(BoundExpr),
}

impl TheoremOutcome {
    pub fn bound(&self) -> Option<&BoundExpr> {
        match self {
            TheoremOutcome::Bound(b) => Some(b),
            TheoremOutcome::ConditionUnmet { .. } => None,
        }
    }
}

/// Lower bound on `E[τ]` from `I_0`:
/// `(1/2r)(((γ0 − (9E+12)Δ)/(3r))^{γ0/(3Δ) − 1} − 1)` when
/// `γ0 >= Δ(9E+12) + 3r`. The exponent is used as is, without flooring.
pub fn theorem4_bound(b: &BoundInputs) -> TheoremOutcome {
    let gamma0 = BigRational::from_integer(b.gamma0.into());
    let required = b.threshold();
    if gamma0 < required {
        return TheoremOutcome::ConditionUnmet { required };
    }
    let delta = BigRational::from_integer(b.max_degree.into());
    let three = BigRational::from_integer(3.into());
    let nine_e_12 = BigRational::from_integer(9.into()) * &b.slack + BigRational::from_integer(12.into());
    TheoremOutcome::Bound(BoundExpr {
        scale: (BigRational::from_integer(2.into()) * &b.budget).recip(),
        base: (&gamma0 - nine_e_12 * &delta) / (&three * &b.budget),
        exponent: gamma0 / (three * delta) - BigRational::one(),
    })
}

/// `(1/2)((μ/λ)^{L−1} − 1)(1/λ)` for a walk with down-rate λ < up-rate μ and
/// ceiling `L` (any positive rational; integer in the walk itself).
pub fn random_walk_bound_expr(
    lambda: &BigRational,
    mu: &BigRational,
    level: &BigRational,
) -> Result<BoundExpr, BoundError> {
    if !lambda.is_positive() || lambda >= mu {
        return Err(BoundError::Domain {
            lambda: lambda.to_string(),
            mu: mu.to_string(),
        });
    }
    if *level < BigRational::one() {
        return Err(invalid(format!("level must be >= 1, got {level}")));
    }
    Ok(BoundExpr {
        scale: (BigRational::from_integer(2.into()) * lambda).recip(),
        base: mu / lambda,
        exponent: level - BigRational::one(),
    })
}

/// One row of the bound report CSV.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: usize,
    pub max_degree: usize,
    pub cutwidth: usize,
    pub slack: BigRational,
    pub gamma0: u64,
    pub budget: BigRational,
    pub outcome: TheoremOutcome,
}

impl BoundReport {
    pub const HEADER: &'static str = "n,delta,W,E,gamma0,r,condition,bound_log10";

    pub fn csv_row(&self) -> String {
        let (condition, log10) = match &self.outcome {
            TheoremOutcome::ConditionUnmet { .. } => ("unmet", String::new()),
            TheoremOutcome::Bound(b) => ("met", format!("{}", b.log10())),
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.max_degree,
            self.cutwidth,
            fmt_rational(&self.slack),
            self.gamma0,
            fmt_rational(&self.budget),
            condition,
            log10
        )
    }
}

/// Integers print bare, other values as `p/q`.
pub(crate) fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        let g = x.numer().gcd(x.denom());
        debug_assert!(g.is_one());
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn bound_by_direct_substitution() {
        // γ0=60, Δ=1, E=2, r=2: base (60-30)/6 = 5, exponent 19, scale 1/4
        let b = BoundInputs::new(60, 1, int(2), int(2)).unwrap();
        let out = theorem4_bound(&b);
        let expr = out.bound().unwrap();
        assert_eq!(expr.base, int(5));
        assert_eq!(expr.exponent, int(19));
        assert_eq!(expr.exact().unwrap(), int(4_768_371_582_031));
        let log = expr.log10();
        assert!((log - 4_768_371_582_031f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn small_graphs_do_not_meet_the_condition() {
        // K4: γ0=4, Δ=3, E=10/3, r=1
        let k4 = BoundInputs::new(4, 3, ratio(10, 3), int(1)).unwrap();
        assert_eq!(
            theorem4_bound(&k4),
            TheoremOutcome::ConditionUnmet { required: int(3 * 42 + 3) }
        );
        // P4: γ0=1, Δ=2, E=5, r=1
        let p4 = BoundInputs::new(1, 2, int(5), int(1)).unwrap();
        assert!(theorem4_bound(&p4).bound().is_none());
    }

    #[test]
    fn boundary_gives_zero() {
        // γ0 exactly at the threshold: base 1, value 0
        let b = BoundInputs::new(36, 1, int(2), int(2)).unwrap();
        let expr = theorem4_bound(&b).bound().cloned().unwrap();
        assert_eq!(expr.base, int(1));
        assert_eq!(expr.exact().unwrap(), int(0));
        assert_eq!(expr.log10(), f64::NEG_INFINITY);
    }

    #[test]
    fn input_validation() {
        assert!(BoundInputs::new(10, 0, int(2), int(1)).is_err());
        assert!(BoundInputs::new(10, 1, ratio(3, 2), int(1)).is_err());
        assert!(BoundInputs::new(10, 1, int(2), int(0)).is_err());
    }

    #[test]
    fn walk_expression() {
        let e = random_walk_bound_expr(&int(1), &int(2), &int(3)).unwrap();
        assert_eq!(e.exact().unwrap(), ratio(3, 2));
        assert!(random_walk_bound_expr(&int(2), &int(2), &int(3)).is_err());
        assert!(random_walk_bound_expr(&int(3), &int(2), &int(3)).is_err());
    }

    #[test]
    fn log10_handles_huge_values() {
        let e = BoundExpr {
            scale: ratio(1, 2),
            base: int(10),
            exponent: int(5000),
        };
        assert!(e.exact().is_none());
        assert!((e.log10() - (5000.0 - 2f64.log10())).abs() < 1e-9);
    }

    #[test]
    fn report_row() {
        let b = BoundInputs::new(60, 1, int(2), int(2)).unwrap();
        let row = BoundReport {
            n: 30,
            max_degree: 1,
            cutwidth: 15,
            slack: int(2),
            gamma0: 60,
            budget: int(2),
            outcome: theorem4_bound(&b),
        }
        .csv_row();
        assert!(row.starts_with("30,1,15,2,60,2,met,12.67"));
        let k4 = BoundReport {
            n: 4,
            max_degree: 3,
            cutwidth: 4,
            slack: ratio(10, 3),
            gamma0: 4,
            budget: int(1),
            outcome: theorem4_bound(&BoundInputs::new(4, 3, ratio(10, 3), int(1)).unwrap()),
        };
        assert_eq!(k4.csv_row(), "4,3,4,10/3,4,1,unmet,");
    }
}
