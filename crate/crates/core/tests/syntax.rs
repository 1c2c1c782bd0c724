use acl_core::dyadic::Dyadic;
use acl_core::syntax::{
    parse_formula, parse_sequent, parse_structure, BinOp, Formula, SUnOp, Sequent, Structure,
    SystemId, UnOp,
};
use proptest::prelude::*;

fn dyadic_inside() -> impl Strategy<Value = Dyadic> {
    (1u32..5).prop_flat_map(|n| (1i64..(1 << n)).prop_map(move |k| Dyadic::frac(k, n)))
}

fn formula() -> impl Strategy<Value = Formula> {
    formula_with(true)
}

/// Formulas, with negation and the involutive fusion only when `involutive`.
fn formula_with(involutive: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["a", "b", "u", "v", "x1"]).prop_map(Formula::atom),
        Just(Formula::Zero),
        Just(Formula::One),
        dyadic_inside().prop_map(Formula::Const),
    ];
    let mut unary = vec![
        UnOp::Double,
        UnOp::Half,
        UnOp::Jstar,
        UnOp::Jmap,
        UnOp::Alpha,
        UnOp::BoxAlpha,
    ];
    let mut binary = vec![BinOp::Plus, BinOp::Minus, BinOp::Meet, BinOp::Join];
    if involutive {
        unary.push(UnOp::Neg);
        binary.push(BinOp::Odot);
    }
    let un = prop::sample::select(unary);
    let bin = prop::sample::select(binary);
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (un.clone(), inner.clone()).prop_map(|(o, f)| Formula::un(o, f)),
            (bin.clone(), inner.clone(), inner).prop_map(|(o, a, b)| Formula::bin(o, a, b)),
        ]
    })
}

fn structure() -> impl Strategy<Value = Structure> {
    let leaf = prop_oneof![
        3 => formula_with(false).prop_map(Structure::leaf),
        1 => Just(Structure::Eps),
        1 => dyadic_inside().prop_map(Structure::EpsD),
    ];
    let op = prop::sample::select(vec![SUnOp::O2, SUnOp::B2, SUnOp::OA]);
    leaf.prop_recursive(3, 12, 2, move |inner| {
        prop_oneof![
            (op.clone(), inner.clone()).prop_map(|(o, s)| Structure::un(o, s)),
            (inner.clone(), inner).prop_map(|(a, b)| Structure::comma(a, b)),
        ]
    })
}

/// Re-nests every comma chain to the right, so structures that differ only
/// in how `,` associates compare equal.
fn right_nested(s: &Structure) -> Structure {
    fn items(s: &Structure, out: &mut Vec<Structure>) {
        match s {
            Structure::Comma(a, b) => {
                items(a, out);
                items(b, out);
            }
            other => out.push(right_nested(other)),
        }
    }
    match s {
        Structure::Comma(..) => {
            let mut parts = Vec::new();
            items(s, &mut parts);
            let last = parts.pop().expect("a comma has two sides");
            parts
                .into_iter()
                .rev()
                .fold(last, |acc, x| Structure::comma(x, acc))
        }
        Structure::Unary(op, inner) => Structure::un(*op, right_nested(inner)),
        leaf => leaf.clone(),
    }
}

proptest! {
    #[test]
    fn formulas_round_trip_through_display(f in formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text, SystemId::Inljk).unwrap(), f, "{}", text);
    }

    #[test]
    fn structures_round_trip_through_display(s in structure()) {
        let text = s.to_string();
        let back = parse_structure(&text, SystemId::Inmgl).unwrap();
        prop_assert_eq!(right_nested(&back), right_nested(&s), "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn one_sided_sequents_round_trip(s in structure(), f in formula_with(false)) {
        let seq = Sequent::one_sided(s, f);
        let text = seq.to_string();
        let back = parse_sequent(&text, SystemId::Mgl).unwrap();
        prop_assert_eq!(right_nested(&back.lhs), right_nested(&seq.lhs), "{}", text);
        prop_assert_eq!(back.rhs, seq.rhs, "{}", text);
    }

    #[test]
    fn atoms_are_listed_once_each(f in formula()) {
        let atoms = f.atoms();
        let mut sorted = atoms.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), atoms.len());
        for a in &atoms {
            prop_assert!(f.to_string().contains(a.as_str()));
        }
    }
}

#[test]
fn malformed_input_is_rejected() {
    for text in ["", "a +", "(a", "a |- ", "d(3/5)", "a |- b |- c", "2 2"] {
        assert!(parse_sequent(text, SystemId::Cflew).is_err(), "{text:?}");
    }
}
