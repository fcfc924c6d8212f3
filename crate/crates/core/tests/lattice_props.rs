use proptest::prelude::*;

use canonical_core::algebra::{ArmPath, Arrow, CanonicalAlgebra, Vertex};
use canonical_core::scalar::ratio_i64;
use canonical_core::weight::{
    normal_form, shifted_is_negative, sufficient_translation_bound, translation_bound,
};
use canonical_core::{LElement, Rational, WeightSequence};

fn weights() -> impl Strategy<Value = WeightSequence> {
    prop::collection::vec(2i64..=9, 2..=5).prop_map(|p| WeightSequence::new(p).unwrap())
}

fn element(w: WeightSequence) -> impl Strategy<Value = LElement> {
    let t = w.len();
    (-6i64..=6, prop::collection::vec(-20i64..=20, t))
        .prop_map(move |(a, l)| normal_form(a, &l, &w).unwrap())
}

fn weights_and_element() -> impl Strategy<Value = (WeightSequence, LElement)> {
    weights().prop_flat_map(|w| (Just(w.clone()), element(w)))
}

proptest! {
    #[test]
    fn normal_form_is_idempotent((w, e) in weights_and_element()) {
        let again = normal_form(e.c_coeff(), e.coeffs(), &w).unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn group_laws((w, e) in weights_and_element()) {
        prop_assert_eq!(e.add(&w.zero()).unwrap(), e.clone());
        prop_assert_eq!(e.add(&e.neg()).unwrap(), w.zero());
    }

    #[test]
    fn dualizing_identity(w in weights()) {
        let sum_x = (1..=w.len()).fold(w.zero(), |acc, i| acc.add(&w.generator(i)).unwrap());
        let lhs = w.dualizing_element().add(&sum_x).unwrap();
        let t = w.len() as i64;
        prop_assert_eq!(lhs, normal_form(t - 2, &vec![0; w.len()], &w).unwrap());
    }

    #[test]
    fn addition_commutes((w, e) in weights_and_element(), a in -3i64..=3, l in prop::collection::vec(0i64..9, 5)) {
        let f = normal_form(a, &l[..w.len()], &w).unwrap();
        prop_assert_eq!(e.add(&f).unwrap(), f.add(&e).unwrap());
    }

    /// Above the sufficient bound every shift is negative, for 20 steps.
    #[test]
    fn shifted_determinants_are_negative(a in -2i64..=1, l in prop::collection::vec(0i64..9, 3)) {
        let w = WeightSequence::new(vec![2, 3, 7]).unwrap();
        let l: Vec<i64> = l.iter().zip(w.weights()).map(|(x, p)| x % p).collect();
        let d = normal_form(a, &l, &w).unwrap();
        let n0 = sufficient_translation_bound(std::slice::from_ref(&d), &w).unwrap().unwrap();
        for n in n0 + 1..=n0 + 20 {
            prop_assert!(shifted_is_negative(&d, n));
        }
    }

    #[test]
    fn arrows_chain_along_arms(w in weights()) {
        let lambdas: Vec<Rational> = (0..w.len() as i64 - 1).map(|i| ratio_i64(i, 1)).collect();
        let alg = CanonicalAlgebra::new(w, lambdas).unwrap();
        let mut seen = std::collections::HashSet::new();
        for &a in alg.arrows() {
            prop_assert!(seen.insert((a.arm, a.step)));
            if a.step < alg.weight(a.arm) {
                let next = Arrow { arm: a.arm, step: a.step + 1 };
                prop_assert_eq!(alg.target(a), alg.source(next));
            }
        }
        for r in alg.relations() {
            for p in [r.lhs, r.first, r.second] {
                let arrows: Vec<Arrow> = p.arrows().collect();
                prop_assert_eq!(alg.source(arrows[0]), Vertex::Zero);
                prop_assert_eq!(alg.target(*arrows.last().unwrap()), Vertex::Top);
                prop_assert_eq!(p, ArmPath { arm: p.arm, from: 1, to: alg.weight(p.arm) });
            }
        }
    }
}

/// The closed form undercounts for (2,3,7): det = 0 has N = 2 but
/// c + ω - τ³·0 = 2x_2 + 2x_3 >= 0.
#[test]
fn closed_form_bound_counterexample() {
    let w = WeightSequence::new(vec![2, 3, 7]).unwrap();
    let d = w.zero();
    assert_eq!(translation_bound(std::slice::from_ref(&d), &w).unwrap(), 2);
    assert!(!shifted_is_negative(&d, 3));
    let lhs = w
        .canonical()
        .add(&w.dualizing_element())
        .unwrap()
        .sub(&d.tau_det(3))
        .unwrap();
    assert_eq!(lhs.to_text(), "0;0,2,2");
    assert!(sufficient_translation_bound(&[d], &w).unwrap().unwrap() >= 3);
}
