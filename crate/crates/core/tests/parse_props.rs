mod common;

use common::class_on;
use mukai::charclasses::chern_character;
use mukai::cohomology::{k3, product, projective_space, torus};
use mukai::parse::{parse_class, parse_kexpr, ParseErrorKind};
use mukai::SpaceRef;
use proptest::prelude::*;

fn spaces() -> Vec<SpaceRef> {
    let (p1, p2, t1) = (projective_space(1), projective_space(2), torus(1));
    vec![
        p2.clone(),
        torus(2),
        k3(),
        product(&p1, &p2),
        product(&t1, &p1),
        product(&product(&p1, &t1), &p1),
    ]
}

fn kexpr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("O".to_string()),
        Just("T".to_string()),
        (1i64..=3, proptest::bool::ANY).prop_map(|(k, neg)| format!("O({}{k}*H)", if neg { "-" } else { "" })),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| format!("dual({e})")),
            (inner.clone(), -2i64..=2).prop_map(|(e, n)| format!("({e})[{n}]")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} * {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("({a}) - ({b})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rendered_classes_reparse(v in proptest::sample::select(spaces()).prop_flat_map(class_on)) {
        let text = v.render();
        prop_assert_eq!(parse_class(&text, v.space()).unwrap(), v.clone());
        let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse_class(&squeezed, v.space()).unwrap(), v);
    }

    #[test]
    fn rendered_kexprs_reparse(text in kexpr_text()) {
        let p2 = projective_space(2);
        let e = parse_kexpr(&text, &p2).unwrap();
        let again = parse_kexpr(&e.to_string(), &p2).unwrap();
        prop_assert_eq!(&again, &e);
        prop_assert_eq!(chern_character(&again).unwrap(), chern_character(&e).unwrap());
        prop_assert_eq!(parse_kexpr(&e.to_string(), &p2).unwrap().to_string(), e.to_string());
    }

    #[test]
    fn garbage_never_panics(text in "[-+*/^()#0-9HiOT \\[\\],a-z]{0,24}") {
        let p2 = projective_space(2);
        let _ = parse_class(&text, &p2);
        let _ = parse_kexpr(&text, &p2);
    }
}

#[test]
fn unknown_basis_name() {
    let err = parse_class("2*H + K", &projective_space(2)).unwrap_err();
    assert_eq!(err.pos, 6);
    assert_eq!(err.kind, ParseErrorKind::UnknownName("K".into()));
    assert!(err.to_string().contains("position 6"));
}

#[test]
fn syntax_errors_list_expected_tokens() {
    let err = parse_kexpr("dual O", &projective_space(1)).unwrap_err();
    match err.kind {
        ParseErrorKind::Syntax { expected, .. } => assert_eq!(expected, vec!["`(`".to_string()]),
        other => panic!("unexpected {other:?}"),
    }
    let err = parse_class("H +", &projective_space(1)).unwrap_err();
    assert_eq!(err.pos, 3);
    assert!(err.to_string().contains("end of input"));
}

#[test]
fn box_needs_a_product() {
    let err = parse_kexpr("box(O, O)", &projective_space(1)).unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::Math(mukai::Error::NotAProduct(_))));
}

#[test]
fn exponents_are_bounded() {
    let p2 = projective_space(2);
    assert!(parse_class("2^100000", &p2).is_err());
    assert_eq!(parse_class("(1 + H)^1024", &p2).unwrap(), parse_class("1 + 1024*H + 523776*H^2", &p2).unwrap());
}
