mod common;

use acl_core::lattice::{
    classify, dm_completion, lattice_from_spec, order_isomorphic, parse_lattice_file, random_poset,
    validate, write_lattice_file, FinitePoset,
};
use acl_core::semantics::sample_rng;
use proptest::prelude::*;

use common::{every_pair_has_bounds, is_greatest_lower_bound, is_least_upper_bound, BUILTINS};

#[test]
fn residual_is_the_unique_adjoint_on_every_builtin() {
    for spec in BUILTINS {
        let l = lattice_from_spec(spec).unwrap();
        for a in l.elements() {
            for b in l.elements() {
                let r = l.residual(a, b);
                for c in l.elements() {
                    assert_eq!(l.leq(l.otimes(a, c), b), l.leq(c, r), "{spec}: {a} {b} {c}");
                }
                let candidates: Vec<_> = l
                    .elements()
                    .filter(|&x| {
                        l.elements()
                            .all(|c| l.leq(l.otimes(a, c), b) == l.leq(c, x))
                    })
                    .collect();
                assert_eq!(candidates, vec![r]);
            }
        }
    }
}

#[test]
fn classification_of_the_builtins() {
    let expect = [
        ("luk:2", true, true),
        ("luk:3", false, true),
        ("luk:4", false, true),
        ("godel:3", true, false),
        ("bool:2", true, true),
    ];
    for (spec, locale, involutive) in expect {
        let c = classify(&lattice_from_spec(spec).unwrap());
        assert_eq!(
            (c.is_locale, c.is_involutive, c.is_boolean),
            (locale, involutive, locale && involutive),
            "{spec}"
        );
    }
}

#[test]
fn lattice_files_round_trip() {
    for spec in BUILTINS {
        let l = lattice_from_spec(spec).unwrap();
        let back = validate(&parse_lattice_file(&write_lattice_file(&l)).unwrap()).unwrap();
        assert_eq!(back.size(), l.size());
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(back.otimes(a, b), l.otimes(a, b));
                assert_eq!(back.leq(a, b), l.leq(a, b));
            }
        }
    }
}

#[test]
fn completing_a_lattice_changes_nothing() {
    for spec in BUILTINS {
        let p = FinitePoset::of_lattice(&lattice_from_spec(spec).unwrap());
        let c = dm_completion(&p);
        assert_eq!(c.size(), p.size());
        assert!(order_isomorphic(&c.order, &p));
    }
}

proptest! {
    #[test]
    fn completion_is_a_dense_lattice_extension(n in 1usize..7, density in 0.0f64..1.0, seed in any::<u64>()) {
        let p = random_poset(n, density, &mut sample_rng(seed, 0));
        let c = dm_completion(&p);
        prop_assert!(every_pair_has_bounds(&c.order));
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(p.leq(a, b), c.order.leq(c.embedding[a], c.embedding[b]));
            }
        }
        for x in 0..c.size() {
            let below: Vec<usize> = c.embedding.iter().copied().filter(|&e| c.order.leq(e, x)).collect();
            let above: Vec<usize> = c.embedding.iter().copied().filter(|&e| c.order.leq(x, e)).collect();
            prop_assert!(is_least_upper_bound(&c.order, &below, x));
            prop_assert!(is_greatest_lower_bound(&c.order, &above, x));
        }
        let twice = dm_completion(&c.order);
        prop_assert!(order_isomorphic(&twice.order, &c.order));
    }
}
