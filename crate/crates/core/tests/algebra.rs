mod common;

use std::sync::Arc;

use acl_core::dyadic::Dyadic;
use acl_core::lattice::{lattice_from_spec, FiniteResiduatedLattice};
use acl_core::semantics::{random_step, sample_rng};
use acl_core::usc::StepFunction;
use proptest::prelude::*;

use common::{first_mismatch, sample_pair, ALL_OPS, BUILTINS};

fn lattice(i: usize) -> Arc<FiniteResiduatedLattice> {
    lattice_from_spec(BUILTINS[i]).unwrap()
}

fn step(l: &Arc<FiniteResiduatedLattice>, grid: u32, seed: u64) -> StepFunction {
    random_step(l, grid, &mut sample_rng(seed, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_operation_matches_its_pointwise_definition(li in 0..5usize, seed in any::<u64>()) {
        let l = lattice(li);
        let (f, g) = sample_pair(&l, 4, seed, 0);
        for op in ALL_OPS {
            prop_assert_eq!(first_mismatch(op, &f, &g), None, "{:?} on {} and {}", op, f, g);
        }
    }

    #[test]
    fn truncated_difference_is_residual_to_sum(li in 0..5usize, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let l = lattice(li);
        let (f, g, h) = (step(&l, 4, a), step(&l, 4, b), step(&l, 4, c));
        prop_assert_eq!(f.ominus(&g).unwrap().leq(&h).unwrap(), f.leq(&g.oplus(&h).unwrap()).unwrap());
    }

    #[test]
    fn residual_is_right_adjoint_to_otimes(li in 0..5usize, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        // `g ≤ f ⊗ h` exactly when `f → g ≤ h`, in the continuous order.
        let l = lattice(li);
        let (f, g, h) = (step(&l, 4, a), step(&l, 4, b), step(&l, 4, c));
        prop_assert_eq!(f.residual(&g).unwrap().leq(&h).unwrap(), g.leq(&f.otimes(&h).unwrap()).unwrap());
    }

    #[test]
    fn half_is_left_adjoint_to_double_and_j_to_jstar(li in 0..5usize, a in any::<u64>(), b in any::<u64>()) {
        let l = lattice(li);
        let (f, g) = (step(&l, 4, a), step(&l, 4, b));
        prop_assert_eq!(f.half().leq(&g).unwrap(), f.leq(&g.double()).unwrap());
        prop_assert_eq!(f.jmap().leq(&g).unwrap(), f.leq(&g.jstar()).unwrap());
    }

    #[test]
    fn alpha_and_beta_are_mutually_inverse(li in 0..5usize, a in any::<u64>()) {
        let l = lattice(li);
        let f = step(&l, 5, a);
        prop_assert_eq!(f.alpha().beta(), f.clone());
        prop_assert_eq!(f.beta().alpha(), f);
    }

    #[test]
    fn sum_is_commutative_associative_with_unit_zero(li in 0..5usize, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let l = lattice(li);
        let (f, g, h) = (step(&l, 4, a), step(&l, 4, b), step(&l, 4, c));
        prop_assert_eq!(f.oplus(&g).unwrap(), g.oplus(&f).unwrap());
        prop_assert_eq!(f.oplus(&g).unwrap().oplus(&h).unwrap(), f.oplus(&g.oplus(&h).unwrap()).unwrap());
        prop_assert_eq!(f.oplus(&StepFunction::bottom(&l)).unwrap(), f);
    }

    #[test]
    fn order_is_a_partial_order_with_extremes(li in 0..5usize, a in any::<u64>(), b in any::<u64>()) {
        let l = lattice(li);
        let (f, g) = (step(&l, 4, a), step(&l, 4, b));
        prop_assert!(f.leq(&f).unwrap());
        prop_assert!(StepFunction::bottom(&l).leq(&f).unwrap());
        prop_assert!(f.leq(&StepFunction::top(&l)).unwrap());
        if f.leq(&g).unwrap() && g.leq(&f).unwrap() {
            prop_assert_eq!(&f, &g);
        }
        let (j, m) = (f.join(&g).unwrap(), f.meet(&g).unwrap());
        prop_assert!(f.leq(&j).unwrap() && g.leq(&j).unwrap());
        prop_assert!(m.leq(&f).unwrap() && m.leq(&g).unwrap());
    }

    #[test]
    fn distance_is_zero_exactly_on_equal_functions(li in 0..5usize, a in any::<u64>(), b in any::<u64>()) {
        let l = lattice(li);
        let (f, g) = (step(&l, 4, a), step(&l, 4, b));
        prop_assert!(f.dist(&f).unwrap().is_zero());
        prop_assert_eq!(f.dist(&g).unwrap().is_zero(), f == g);
        prop_assert_eq!(f.dist(&g).unwrap(), g.dist(&f).unwrap());
    }
}

#[test]
fn constants_add_and_subtract_as_truncated_reals() {
    let l = lattice(1);
    for p in 0..=8 {
        for q in 0..=8 {
            let (dp, dq) = (Dyadic::frac(p, 3), Dyadic::frac(q, 3));
            let (cp, cq) = (
                StepFunction::constant(&l, &dp),
                StepFunction::constant(&l, &dq),
            );
            assert_eq!(
                cp.oplus(&cq).unwrap(),
                StepFunction::constant(&l, &dp.trunc_add(&dq))
            );
            assert_eq!(
                cp.ominus(&cq).unwrap(),
                StepFunction::constant(&l, &dp.trunc_sub(&dq))
            );
        }
    }
}

#[test]
fn literals_round_trip_through_display() {
    for spec in BUILTINS {
        let l = lattice_from_spec(spec).unwrap();
        for i in 0..50 {
            let f = random_step(&l, 4, &mut sample_rng(11, i));
            assert_eq!(StepFunction::parse_literal(&l, &f.to_string()).unwrap(), f);
        }
    }
}
