use group_expr::{jordan_assemble, GroupTerm};
use num_bigint::BigUint;
use proptest::prelude::*;

fn arb_top() -> impl Strategy<Value = GroupTerm> {
    prop_oneof![
        (1u64..5).prop_map(GroupTerm::sym),
        (1u64..6).prop_map(GroupTerm::cyc),
        (3u64..6).prop_map(GroupTerm::dih),
    ]
}

fn arb_term() -> impl Strategy<Value = GroupTerm> {
    let leaf = prop_oneof![
        Just(GroupTerm::Trivial),
        (1u64..5).prop_map(GroupTerm::sym),
        (1u64..6).prop_map(GroupTerm::cyc),
        (1u64..6).prop_map(GroupTerm::dih),
    ];
    leaf.prop_recursive(3, 16, 4, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..4).prop_map(GroupTerm::direct),
            (inner.clone(), arb_top()).prop_map(|(b, t)| GroupTerm::wreath(b, t)),
            (
                proptest::collection::vec((inner, prop_oneof![Just(1u64), Just(2), Just(4)]), 0..3),
                prop_oneof![Just(GroupTerm::klein()), Just(GroupTerm::cyc(2)), Just(GroupTerm::dih(2))],
            )
                .prop_map(|(os, top)| GroupTerm::semidirect(os, top)),
        ]
    })
}

proptest! {
    #[test]
    fn normalize_preserves_order(t in arb_term()) {
        prop_assert_eq!(t.normalize().order(), t.order());
    }

    #[test]
    fn normalize_is_idempotent(t in arb_term()) {
        let n = t.normalize();
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn normalize_ignores_direct_factor_order(mut fs in proptest::collection::vec(arb_term(), 2..5)) {
        let a = GroupTerm::direct(fs.clone()).normalize();
        fs.reverse();
        prop_assert_eq!(GroupTerm::direct(fs).normalize(), a);
    }

    #[test]
    fn json_round_trip(t in arb_term()) {
        let s = serde_json::to_string(&t).unwrap();
        let back: GroupTerm = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn jordan_order_formula(classes in proptest::collection::vec((arb_term(), 1u64..4), 1..4)) {
        let expected: BigUint = classes
            .iter()
            .map(|(t, c)| t.order().pow(*c as u32) * (1..=*c).product::<u64>())
            .product();
        prop_assert_eq!(jordan_assemble(&classes).order(), expected);
    }
}

#[test]
fn json_schema_matches_documented_shape() {
    assert_eq!(serde_json::to_string(&GroupTerm::sym(3)).unwrap(), r#"{"t":"sym","k":3}"#);
    assert_eq!(serde_json::to_string(&GroupTerm::cyc(2)).unwrap(), r#"{"t":"cyc","k":2}"#);
    let w = GroupTerm::wreath(GroupTerm::cyc(2), GroupTerm::sym(2));
    assert_eq!(
        serde_json::to_string(&w).unwrap(),
        r#"{"t":"wreath","base":{"t":"cyc","k":2},"top":{"t":"sym","k":2}}"#
    );
    let sd = GroupTerm::semidirect(vec![(GroupTerm::sym(3), 4)], GroupTerm::klein());
    assert_eq!(
        serde_json::to_string(&sd).unwrap(),
        r#"{"t":"semidirect","orbits":[{"f":{"t":"sym","k":3},"m":4}],"top":{"t":"direct","fs":[{"t":"cyc","k":2},{"t":"cyc","k":2}]}}"#
    );
    assert_eq!(serde_json::to_string(&GroupTerm::Trivial).unwrap(), r#"{"t":"trivial"}"#);
}
