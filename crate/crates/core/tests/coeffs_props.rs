use mukai::coeffs::{mat_mul, mat_vec, solve_linear, identity, invert, Matrix};
use mukai::{Error, GaussRat};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
        .prop_map(|(a, b, c, d)| &GaussRat::ratio(a, b) + &(&GaussRat::ratio(c, d) * &GaussRat::i()))
}

fn nonzero() -> impl Strategy<Value = GaussRat> {
    gauss().prop_filter("nonzero", |g| !g.is_zero())
}

/// `L U` with unit lower `L` and upper `U` carrying a nonzero diagonal.
fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    (proptest::collection::vec(gauss(), n * n), proptest::collection::vec(gauss(), n * n), proptest::collection::vec(nonzero(), n))
        .prop_map(move |(l, u, d)| {
            let lower: Matrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { GaussRat::one() } else if j < i { l[i * n + j].clone() } else { GaussRat::zero() }).collect())
                .collect();
            let upper: Matrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else if j > i { u[i * n + j].clone() } else { GaussRat::zero() }).collect())
                .collect();
            mat_mul(&lower, &upper)
        })
}

proptest! {
    #[test]
    fn field_axioms(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &GaussRat::zero(), a.clone());
        prop_assert_eq!(&a * &GaussRat::one(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(a.div(&a).unwrap(), GaussRat::one());
        } else {
            prop_assert_eq!(a.inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn conjugation(a in gauss(), b in gauss()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        let n = &a * &a.conj();
        prop_assert!(n.is_real());
        prop_assert_eq!(n, GaussRat::from_rational(a.norm()));
    }

    #[test]
    fn display_round_trip(a in gauss()) {
        prop_assert_eq!(a.to_string().parse::<GaussRat>().unwrap(), a.clone());
        prop_assert_eq!(a.to_compact().parse::<GaussRat>().unwrap(), a);
    }

    #[test]
    fn powers(a in nonzero(), m in -4i64..=4, n in -4i64..=4) {
        prop_assert_eq!(&a.pow(m).unwrap() * &a.pow(n).unwrap(), a.pow(m + n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn solve_recovers_solution(
        (m, x) in (1usize..=16).prop_flat_map(|n| (invertible(n), proptest::collection::vec(gauss(), n)))
    ) {
        let b = mat_vec(&m, &x);
        prop_assert_eq!(solve_linear(&m, &b).unwrap(), x);
        let inv = invert(&m).unwrap();
        prop_assert_eq!(mat_mul(&m, &inv), identity(m.len()));
    }
}

#[test]
fn singular_systems_are_rejected() {
    let m: Matrix = vec![
        vec![1.into(), 2.into(), 3.into()],
        vec![2.into(), 4.into(), 6.into()],
        vec![0.into(), 1.into(), GaussRat::i()],
    ];
    assert_eq!(solve_linear(&m, &[1.into(), 2.into(), 3.into()]), Err(Error::Singular { size: 3, rank: 2 }));
    assert!(matches!(solve_linear(&m, &[1.into()]), Err(Error::Shape { .. })));
}
