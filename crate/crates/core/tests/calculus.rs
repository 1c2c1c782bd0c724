use std::sync::Arc;

use acl_core::calculus::{check_proof, prove, rule_instance, ProofTree, RuleParams, SystemConfig};
use acl_core::dyadic::Dyadic;
use acl_core::lattice::lattice_from_spec;
use acl_core::semantics::{sequent_valid, Valuation};
use acl_core::syntax::{parse_sequent, SystemId};
use acl_core::usc::StepFunction;

fn cflew() -> SystemConfig {
    SystemConfig::new(SystemId::Cflew).with_n_max(1)
}

/// The two premises of the recovery rule at `n = 1` for `γ = v` each have
/// short cut-free proofs, yet the conclusion it licenses fails at
/// `v = 3/8` over the two-element chain.
#[test]
fn recovery_rule_at_one_derives_a_refutable_sequent() {
    let sys = SystemId::Cflew;
    let a = "(d(3/4) + al al (v + d(1/4))) /\\ (d(1/2) + al al (v + d(1/2)))";
    let premises = [
        format!("eps(3/4), oa oa (v, eps(1/4)) |- {a}"),
        format!("eps(1/2), oa oa (v, eps(1/2)) |- {a}"),
    ];
    let children: Vec<ProofTree> = premises
        .iter()
        .map(|p| {
            let s = parse_sequent(p, sys).unwrap();
            prove(&s, &cflew(), 10)
                .proof()
                .cloned()
                .unwrap_or_else(|| panic!("no proof of {p}"))
        })
        .collect();
    let conclusion = parse_sequent(&format!("v, eps(1/2) |- {a}"), sys).unwrap();
    let tree = ProofTree::node("6.b", conclusion.clone(), children).with_params(RuleParams {
        n: Some(1),
        d: None,
    });
    assert_eq!(check_proof(&tree, &cflew()), Ok(()));
    assert!(rule_instance(
        &cflew(),
        "6.b",
        &RuleParams {
            n: Some(1),
            d: None
        }
    )
    .is_some());

    let chain = lattice_from_spec("luk:2").unwrap();
    let v = StepFunction::constant(&chain, &Dyadic::frac(3, 3));
    let val = Valuation::new(Arc::clone(&chain)).with("v", v).unwrap();
    for p in &premises {
        assert!(
            sequent_valid(&parse_sequent(p, sys).unwrap(), &val).unwrap(),
            "{p}"
        );
    }
    assert!(!sequent_valid(&conclusion, &val).unwrap());
}
