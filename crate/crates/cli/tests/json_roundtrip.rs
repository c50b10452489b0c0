use braces_cli::render::{json, parse_json};
use braces_core::{Atom, Expr, Flavor, Generator, Scalar, Word};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Atom> {
    let leaf = (1u32..=5, -2i32..=3).prop_map(|(i, d)| Atom::Gen(Generator::new(i, d)));
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop::collection::vec(inner, 1..=3).prop_map(|atoms| Atom::Nabla(Word::new(atoms)))
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let flavor = prop_oneof![Just(Flavor::Commutative), Just(Flavor::Noncommutative)];
    let term = (-50i64..=50, 1i64..=12, prop::collection::vec(atom(), 0..=4))
        .prop_map(|(n, d, atoms)| (Scalar::new(n.into(), d.into()), Word::new(atoms)));
    (flavor, prop::collection::vec(term, 0..=6)).prop_map(|(f, terms)| Expr::normalize(terms, f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn json_round_trips(e in expr()) {
        let rendered = json(&e);
        prop_assert_eq!(parse_json(&rendered).unwrap(), e.clone());
        // rendering is a function of the expression alone
        prop_assert_eq!(json(&parse_json(&rendered).unwrap()), rendered);
    }
}
