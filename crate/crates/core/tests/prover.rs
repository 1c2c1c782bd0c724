use acl_core::calculus::{check_proof, prove, ProofTree, SystemConfig};
use acl_core::lattice::lattice_from_spec;
use acl_core::semantics::{countermodel_search, SamplerSpec};
use acl_core::syntax::{parse_sequent, Sequent, SystemId};

/// Lattices over which a system is sound.
fn models(sys: SystemId) -> &'static [&'static str] {
    match sys {
        SystemId::Ljk => &["godel:3", "bool:2", "luk:2"],
        SystemId::Incflew => &["luk:2", "luk:3", "luk:4", "bool:2"],
        SystemId::Inljk => &["luk:2", "bool:2"],
        _ => &["luk:2", "luk:3", "luk:4", "godel:3", "bool:2"],
    }
}

const CORPUS: [(&str, SystemId); 12] = [
    ("a |- a", SystemId::Cflew),
    ("a, b |- a + b", SystemId::Cflew),
    ("a, a |- 2 a", SystemId::Cflew),
    ("a + a |- 2 a", SystemId::Cflew),
    ("a, b |- a", SystemId::Cflew),
    ("a |- a /\\ b", SystemId::Cflew),
    ("a \\/ b |- a", SystemId::Cflew),
    ("a |- 0", SystemId::Cflew),
    ("2 a |- a + a", SystemId::Ljk),
    ("a |- a, a", SystemId::Incflew),
    ("!!a |- a", SystemId::Inljk),
    ("a |- !!a", SystemId::Incflew),
];

fn parsed(text: &str, sys: SystemId) -> Sequent {
    parse_sequent(text, sys).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn found_proofs_check_print_and_parse_back() {
    for (text, sys) in CORPUS {
        let cfg = SystemConfig::new(sys);
        let s = parsed(text, sys);
        let out = prove(&s, &cfg, 8);
        let proof = out
            .proof()
            .unwrap_or_else(|| panic!("{text} in {}: {out:?}", sys.name()));
        assert_eq!(check_proof(proof, &cfg), Ok(()), "{text}");
        let back = ProofTree::parse(&proof.to_string(), sys).unwrap();
        assert_eq!(check_proof(&back, &cfg), Ok(()), "{text}");
        assert_eq!(back.to_string(), proof.to_string());
    }
}

#[test]
fn proved_sequents_have_no_sampled_countermodel() {
    let spec = SamplerSpec::random(3, 200, 1);
    for (text, sys) in CORPUS {
        let s = parsed(text, sys);
        if prove(&s, &SystemConfig::new(sys), 8).proof().is_none() {
            continue;
        }
        for l in models(sys) {
            let l = lattice_from_spec(l).unwrap();
            assert_eq!(
                countermodel_search(&s, &l, &spec).unwrap(),
                None,
                "{text} over {}",
                l.name()
            );
        }
    }
}

#[test]
fn a_tree_with_a_wrong_conclusion_is_rejected() {
    let sys = SystemId::Cflew;
    let cfg = SystemConfig::new(sys);
    let proof = prove(&parsed("a, a |- 2 a", sys), &cfg, 6)
        .proof()
        .cloned()
        .unwrap();
    let mut bad = proof.clone();
    bad.conclusion = parsed("a |- 2 a", sys);
    assert!(check_proof(&bad, &cfg).is_err());
}

#[test]
fn refutable_sequents_are_not_proved_and_have_countermodels() {
    let spec = SamplerSpec::random(3, 200, 1);
    let l = lattice_from_spec("luk:3").unwrap();
    for text in ["a |- a + a", "a |- b", "2 a |- a + a", "a |- 1"] {
        let s = parsed(text, SystemId::Cflew);
        assert!(
            prove(&s, &SystemConfig::new(SystemId::Cflew), 6)
                .proof()
                .is_none(),
            "{text}"
        );
        assert!(
            countermodel_search(&s, &l, &spec).unwrap().is_some(),
            "{text}"
        );
    }
}

#[test]
fn cut_free_search_matches_search_with_cut_on_small_goals() {
    for (text, sys) in CORPUS.into_iter().take(6) {
        let s = parsed(text, sys);
        let with_cut = prove(&s, &SystemConfig::new(sys).with_cut(true), 6);
        let d = with_cut
            .proof()
            .map(|p| p.height())
            .unwrap_or_else(|| panic!("{text}"));
        assert!(
            prove(&s, &SystemConfig::new(sys), 2 * d).proof().is_some(),
            "{text}"
        );
    }
}
