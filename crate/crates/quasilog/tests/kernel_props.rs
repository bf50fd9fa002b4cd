//! Property tests of the exact kernel: field axioms, substitution and
//! division round trips, determinant agreement, commuting derivatives.

use proptest::prelude::*;
use quasilog::cyclotomic::CycScalar;
use quasilog::poly::{MPoly, Monomial, PolyMatrix};

const COND: u32 = 12;

fn scalar_strategy() -> impl Strategy<Value = CycScalar> {
    // small rational coordinates on the power basis of the conductor-12 field
    proptest::collection::vec((-6i64..=6, 1i64..=4), 4).prop_map(|coords| {
        let mut acc = CycScalar::zero(COND);
        for (k, (num, den)) in coords.into_iter().enumerate() {
            let c = CycScalar::fraction(COND, num, den);
            let z = CycScalar::zeta_pow(COND, k as i64);
            acc = &acc + &(&c * &z);
        }
        acc
    })
}

fn poly_strategy(nvars: usize, deg: u16) -> impl Strategy<Value = MPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0..=deg, nvars), -5i64..=5),
        0..8,
    )
    .prop_map(move |terms| {
        let mut p = MPoly::zero(nvars, COND);
        for (exps, c) in terms {
            if c != 0 {
                p = &p + &MPoly::from_term(nvars, Monomial(exps), CycScalar::from_int(COND, c));
            }
        }
        p
    })
}

/// Invertible 2x2 matrix as a product of unit-triangular shears and a
/// diagonal of units.
fn invertible2_strategy() -> impl Strategy<Value = Vec<Vec<CycScalar>>> {
    ((-3i64..=3), (-3i64..=3), prop::bool::ANY).prop_map(|(a, b, flip)| {
        let c = |n: i64| CycScalar::from_int(COND, n);
        // [[1, a], [0, 1]] * [[1, 0], [b, 1]], optionally negating a row
        let m = vec![
            vec![&c(1) + &c(a * b), c(a)],
            vec![c(b), c(1)],
        ];
        if flip {
            vec![m[1].clone(), m[0].clone()]
        } else {
            m
        }
    })
}

fn invert2(m: &[Vec<CycScalar>]) -> Vec<Vec<CycScalar>> {
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let inv = det.inv();
    vec![
        vec![&m[1][1] * &inv, -&(&m[0][1] * &inv)],
        vec![-&(&m[1][0] * &inv), &m[0][0] * &inv],
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn substitution_round_trip(p in poly_strategy(2, 4), t in invertible2_strategy()) {
        let forward = p.subst_linear(&t, None);
        let back = forward.subst_linear(&invert2(&t), None);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn division_round_trip(q in poly_strategy(2, 3), a in -3i64..=3, b in -3i64..=3, k in 0usize..=6) {
        prop_assume!(a != 0 || b != 0);
        let alpha = {
            let x1 = MPoly::var(2, COND, 0).scale(&CycScalar::from_int(COND, a));
            let x2 = MPoly::var(2, COND, 1).scale(&CycScalar::from_int(COND, b));
            &x1 + &x2
        };
        let prod = &alpha.pow(k) * &q;
        let back = prod.div_linear_power(&alpha, k).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn partials_commute(p in poly_strategy(3, 5), u in proptest::collection::vec(-3i64..=3, 3), v in proptest::collection::vec(-3i64..=3, 3)) {
        let uu: Vec<CycScalar> = u.into_iter().map(|n| CycScalar::from_int(COND, n)).collect();
        let vv: Vec<CycScalar> = v.into_iter().map(|n| CycScalar::from_int(COND, n)).collect();
        prop_assert_eq!(p.partial(&uu).partial(&vv), p.partial(&vv).partial(&uu));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_matches_cofactor(entries in proptest::collection::vec(poly_strategy(2, 2), 9)) {
        let rows: Vec<Vec<MPoly>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let m = PolyMatrix::from_rows(rows);
        prop_assert_eq!(m.det(), m.det_cofactor());
    }
}
