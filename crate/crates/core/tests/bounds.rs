use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::One;

use epigraph::bounds::{
    corollary_premise, exact_hitting_time, gambler_up_probability, random_walk_bound_expr,
    random_walk_lower_bound, slack_e, theorem4_bound, BirthDeathChain, BoundInputs, TheoremOutcome,
    WalkParams,
};
use epigraph::crusade::cutwidth;
use epigraph::graph::{generate, GraphKind};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

#[test]
fn slack_from_computed_cutwidth() {
    let k4 = generate(GraphKind::Complete, 4, None).unwrap();
    let w = cutwidth(&k4).unwrap() as i64;
    assert_eq!(slack_e(4, 3, w).unwrap(), Rational64::new(10, 3));
    let p4 = generate(GraphKind::Path, 4, None).unwrap();
    let w = cutwidth(&p4).unwrap() as i64;
    assert_eq!(slack_e(4, 2, w).unwrap(), Rational64::from_integer(5));
    assert_eq!(slack_e(6, 4, 12).unwrap(), Rational64::from_integer(2));
    assert!(slack_e(4, 2, 5).is_err());
}

#[test]
fn theorem_examples() {
    let b = BoundInputs::new(60, 1, q(2, 1), q(2, 1)).unwrap();
    let expr = theorem4_bound(&b).bound().cloned().unwrap();
    // (5^19 - 1) / 4
    let five19 = BigInt::from(5).pow(19u32);
    let want = BigRational::new(five19 - 1, 4.into());
    assert_eq!(expr.exact().unwrap(), want);
    assert_eq!(want, BigRational::from_integer(4_768_371_582_031i64.into()));
    assert!((expr.log10() - 4_768_371_582_031f64.log10()).abs() < 1e-12);

    let k4 = BoundInputs::new(4, 3, q(10, 3), q(1, 1)).unwrap();
    assert!(matches!(theorem4_bound(&k4), TheoremOutcome::ConditionUnmet { .. }));
    let p4 = BoundInputs::new(1, 2, q(5, 1), q(1, 1)).unwrap();
    assert!(matches!(theorem4_bound(&p4), TheoremOutcome::ConditionUnmet { .. }));
}

#[test]
fn theorem_is_the_walk_bound() {
    for (gamma0, delta, e, r) in [(60u64, 1u64, q(2, 1), q(2, 1)), (500, 3, q(7, 2), q(5, 3))] {
        let b = BoundInputs::new(gamma0, delta, e.clone(), r.clone()).unwrap();
        let g0 = BigRational::from_integer(gamma0.into());
        let d = BigRational::from_integer(delta.into());
        let mu = &g0 / q(3, 1) - (q(3, 1) * &e + q(4, 1)) * &d;
        let level = &g0 / (q(3, 1) * &d);
        let walk = random_walk_bound_expr(&r, &mu, &level).unwrap();
        assert_eq!(theorem4_bound(&b).bound(), Some(&walk));
    }
}

#[test]
fn walk_examples() {
    let w = WalkParams::new(1.0, 2.0, 3, 2).unwrap();
    assert_eq!(random_walk_lower_bound(&w).unwrap(), 1.5);
    assert!(random_walk_lower_bound(&WalkParams::new(2.0, 2.0, 3, 2).unwrap()).is_err());
    let half = WalkParams::new(1.0, 2.0, 2, 1).unwrap();
    assert!((gambler_up_probability(&half) - 2.0 / 3.0).abs() < 1e-15);

    let chain = BirthDeathChain::reflecting_walk(&q(1, 1), &q(2, 1), 3);
    let h: Vec<BigRational> = (1..=3).map(|s| exact_hitting_time(&chain, s).unwrap()).collect();
    assert_eq!(h, [q(7, 1), q(10, 1), q(11, 1)]);

    let single = BirthDeathChain::new(vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(3, 1)]).unwrap();
    assert_eq!(exact_hitting_time(&single, 1).unwrap(), q(1, 3));

    let k3 = BirthDeathChain::complete_graph_sis(3, &BigRational::one());
    assert_eq!(exact_hitting_time(&k3, 3).unwrap(), q(11, 1));
}

#[test]
fn corollary_examples() {
    // W = nΔ/2 with C = 1.01
    let p = corollary_premise(10, 4, 20, &q(101, 100)).unwrap();
    assert!(p.holds);
    assert_eq!(p.base_term, 19 * 20 - 9 * 40 - 30 * 4);
    for n in 2..=12 {
        assert!(!corollary_premise(n, 2, 1, &q(101, 100)).unwrap().holds);
    }
    // Boundary: 19W = 9CnΔ exactly
    let edge = corollary_premise(10, 2, 10, &q(19, 18)).unwrap();
    assert!(edge.holds);
    assert!(!corollary_premise(10, 2, 10, &q(20, 18)).unwrap().holds);
    assert!(corollary_premise(4, 1, 2, &BigRational::one()).is_err());
}
