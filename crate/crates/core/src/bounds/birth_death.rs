//! Expected hitting time of state 0 for finite birth-death chains.

use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{invalid, rational_to_f64, BoundError};

/// Rates on states `0..=top`; `0` is absorbing, jumps above `top` are
/// ignored (the top state reflects).
#[derive(Debug, Clone, PartialEq)]
pub struct BirthDeathChain<R> {
    pub up: Vec<R>,
    pub down: Vec<R>,
}

impl<R: Clone + Zero> BirthDeathChain<R> {
    pub fn new(up: Vec<R>, down: Vec<R>) -> Result<Self, BoundError> {
        if up.len() != down.len() || up.len() < 2 {
            return Err(invalid("need matching up/down rates for at least states 0 and 1"));
        }
        Ok(BirthDeathChain { up, down })
    }

    pub fn top(&self) -> usize {
        self.up.len() - 1
    }
}

impl BirthDeathChain<BigRational> {
    /// Walk reflected at `level`: up μ / down λ on `1..level`, down λ at `level`.
    pub fn reflecting_walk(lambda: &BigRational, mu: &BigRational, level: usize) -> Self {
        let mut up = vec![mu.clone(); level + 1];
        let mut down = vec![lambda.clone(); level + 1];
        up[0] = BigRational::zero();
        down[0] = BigRational::zero();
        up[level] = BigRational::zero();
        BirthDeathChain { up, down }
    }

    /// Infected-count chain of the SIS process on `K_n` under any policy
    /// that always spends the full budget `r` on infected vertices:
    /// up-rate `k(n−k)`, down-rate `r`.
    pub fn complete_graph_sis(n: usize, budget: &BigRational) -> Self {
        let up = (0..=n)
            .map(|k| BigRational::from_integer(BigInt::from(k * (n - k))))
            .collect();
        let mut down = vec![budget.clone(); n + 1];
        down[0] = BigRational::zero();
        BirthDeathChain { up, down }
    }
}

trait Field:
    Clone
    + Zero
    + One
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl Field for f64 {}
impl Field for BigRational {}

/// Solves `(u_k + d_k) h_k − d_k h_{k−1} − u_k h_{k+1} = 1` for `k = 1..=m`
/// with `h_0 = 0`, by forward elimination and back substitution.
fn solve<R: Field>(chain: &BirthDeathChain<R>, start: usize) -> Result<R, BoundError> {
    let top = chain.top();
    if start > top {
        return Err(invalid(format!("start {start} above top state {top}")));
    }
    if start == 0 {
        return Ok(R::zero());
    }
    // Highest state reachable from `start`.
    let mut m = start;
    while m < top && !chain.up[m].is_zero() {
        m += 1;
    }
    if (1..=m).any(|k| chain.down[k].is_zero()) {
        return Err(BoundError::Unreachable(start));
    }
    let up = |k: usize| if k == m { R::zero() } else { chain.up[k].clone() };

    // Row k: a_k h_{k-1} + b_k h_k + c_k h_{k+1} = 1
    let mut c_prime = vec![R::zero(); m + 1];
    let mut d_prime = vec![R::zero(); m + 1];
    for k in 1..=m {
        let a = R::zero() - chain.down[k].clone();
        let b = up(k) + chain.down[k].clone();
        let c = R::zero() - up(k);
        let (denom, rhs) = if k == 1 {
            (b, R::one())
        } else {
            (
                b - a.clone() * c_prime[k - 1].clone(),
                R::one() - a * d_prime[k - 1].clone(),
            )
        };
        c_prime[k] = c / denom.clone();
        d_prime[k] = rhs / denom;
    }
    let mut h = vec![R::zero(); m + 2];
    for k in (1..=m).rev() {
        h[k] = d_prime[k].clone() - c_prime[k].clone() * h[k + 1].clone();
    }
    Ok(h[start].clone())
}

/// Exact expected time to reach `0` from `start`.
pub fn exact_hitting_time(
    chain: &BirthDeathChain<BigRational>,
    start: usize,
) -> Result<BigRational, BoundError> {
    solve(chain, start)
}

pub fn exact_hitting_time_f64(chain: &BirthDeathChain<f64>, start: usize) -> Result<f64, BoundError> {
    solve(chain, start)
}

/// Exact `E[τ]` from full infection on `K_n` with budget `r`.
///
/// With `T_k` the expected time to first step from `k` down to `k − 1`,
/// `T_n = 1/r` and `T_k = (1 + k(n−k) T_{k+1}) / r`; the answer is
/// `T_1 + .. + T_n`.
pub fn exact_extinction_complete(n: usize, budget: &BigRational) -> Result<BigRational, BoundError> {
    if n < 2 {
        return Err(invalid(format!("need n >= 2, got {n}")));
    }
    if *budget <= BigRational::zero() {
        return Err(invalid(format!("need r > 0, got {budget}")));
    }
    let mut step = budget.recip();
    let mut total = step.clone();
    for k in (1..n).rev() {
        let up = BigRational::from_integer(BigInt::from(k * (n - k)));
        step = (BigRational::one() + up * step) / budget;
        total += &step;
    }
    Ok(total)
}

pub fn exact_extinction_complete_f64(n: usize, budget: f64) -> Result<f64, BoundError> {
    let r = BigRational::from_float(budget).ok_or_else(|| invalid("budget must be finite"))?;
    exact_extinction_complete(n, &r).map(|v| rational_to_f64(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn reflecting_walk_hand_solve() {
        // λ=1, μ=2, L=3: h1=7, h2=10, h3=11
        let chain = BirthDeathChain::reflecting_walk(&int(1), &int(2), 3);
        let h: Vec<_> = (1..=3).map(|s| exact_hitting_time(&chain, s).unwrap()).collect();
        assert_eq!(h, vec![int(7), int(10), int(11)]);
    }

    #[test]
    fn single_state() {
        let chain = BirthDeathChain::new(vec![0.0, 0.0], vec![0.0, 4.0]).unwrap();
        assert_eq!(exact_hitting_time_f64(&chain, 1).unwrap(), 0.25);
        assert_eq!(exact_hitting_time_f64(&chain, 0).unwrap(), 0.0);
    }

    #[test]
    fn complete_graph_examples() {
        assert_eq!(exact_extinction_complete(2, &int(1)).unwrap(), int(3));
        assert_eq!(exact_extinction_complete(3, &int(1)).unwrap(), int(11));
        let k3 = BirthDeathChain::complete_graph_sis(3, &int(1));
        assert_eq!(exact_hitting_time(&k3, 3).unwrap(), int(11));
        assert!(exact_extinction_complete(1, &int(1)).is_err());
        assert!(exact_extinction_complete(3, &int(0)).is_err());
    }

    #[test]
    fn complete_graph_grows_with_n() {
        let mut prev = exact_extinction_complete(2, &int(1)).unwrap();
        for n in 3..=15 {
            let cur = exact_extinction_complete(n, &int(1)).unwrap();
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn float_and_exact_agree() {
        let exact = BirthDeathChain::reflecting_walk(&int(1), &int(3), 12);
        let float = BirthDeathChain::new(
            exact.up.iter().map(rational_to_f64).collect(),
            exact.down.iter().map(rational_to_f64).collect(),
        )
        .unwrap();
        for s in 0..=12 {
            let a = rational_to_f64(&exact_hitting_time(&exact, s).unwrap());
            let b = exact_hitting_time_f64(&float, s).unwrap();
            assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }
    }

    #[test]
    fn unreachable_zero() {
        let chain = BirthDeathChain::new(vec![0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(exact_hitting_time_f64(&chain, 1), Err(BoundError::Unreachable(1)));
        // an absorbing barrier above the start is harmless when never reached
        let chain = BirthDeathChain::new(vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(exact_hitting_time_f64(&chain, 1).unwrap(), 1.0);
    }
}
