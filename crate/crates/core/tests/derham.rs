use bgg_core::derham::{exterior_d, homotopy_check_derham, interior_euler, koszul_poincare};
use bgg_core::forms::{
    form_to_proxy, polyform_from_json, polyform_to_json, proxy_to_form, FormBasis, PolyForm,
    ProxyField, ValueSpace, ValueTag,
};
use bgg_core::ratpoly::{rat, BasisMode, Poly, Rational};
use proptest::prelude::*;

/// Random scalar `k`-form on ℝⁿ with polynomial degree at most 3.
fn form() -> impl Strategy<Value = PolyForm> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| {
            let basis =
                FormBasis::polynomial(n, k, ValueSpace::new(ValueTag::R, n), 3, BasisMode::UpTo);
            let len = basis.len();
            prop::collection::vec((-4i64..=4, 1i64..=3), len).prop_map(move |c| {
                let coords: Vec<Rational> = c.into_iter().map(|(p, q)| rat(p, q)).collect();
                basis.from_coords(&coords)
            })
        })
}

fn vector_form() -> impl Strategy<Value = PolyForm> {
    (0usize..=3).prop_flat_map(|k| {
        let basis =
            FormBasis::polynomial(3, k, ValueSpace::new(ValueTag::V, 3), 2, BasisMode::UpTo);
        let len = basis.len();
        prop::collection::vec(-3i64..=3, len).prop_map(move |c| {
            let coords: Vec<Rational> = c.into_iter().map(|x| rat(x, 1)).collect();
            basis.from_coords(&coords)
        })
    })
}

#[test]
fn koszul_of_constant_two_form() {
    // 2-form proxy (0, 0, 1) is dx₁∧dx₂; its Koszul image is ½(−x₂, x₁, 0)
    let u = proxy_to_form(
        &ProxyField::Vector(vec![Poly::zero(3), Poly::zero(3), Poly::one(3)]),
        3,
        2,
        ValueSpace::new(ValueTag::R, 3),
    )
    .unwrap();
    let p = koszul_poincare(&u).unwrap();
    let half = rat(1, 2);
    let expected = ProxyField::Vector(vec![
        Poly::var(3, 1).scale(&-half.clone()),
        Poly::var(3, 0).scale(&half),
        Poly::zero(3),
    ]);
    assert_eq!(form_to_proxy(&p).unwrap(), expected);
}

#[test]
fn homotopy_holds_in_all_dimensions() {
    for n in 1..=3 {
        for k in 0..=n {
            let report = homotopy_check_derham(n, k, 4);
            assert!(report.passed, "n={n} k={k}: {:?}", report.counterexample);
        }
    }
}

proptest! {
    #[test]
    fn d_squared_vanishes(u in form()) {
        prop_assert!(exterior_d(&exterior_d(&u)).is_zero());
    }

    #[test]
    fn contraction_squared_vanishes(u in form()) {
        prop_assume!(u.k() >= 2);
        prop_assert!(interior_euler(&interior_euler(&u).unwrap()).unwrap().is_zero());
        prop_assert!(koszul_poincare(&koszul_poincare(&u).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn homotopy_formula(u in form()) {
        // dP + Pd = I, except on 0-forms where the constant part survives
        let d_p = if u.k() == 0 {
            u.at_origin()
        } else {
            exterior_d(&koszul_poincare(&u).unwrap())
        };
        let p_d = if u.k() == u.n() {
            PolyForm::zero(u.n(), u.k(), u.value())
        } else {
            koszul_poincare(&exterior_d(&u)).unwrap()
        };
        prop_assert_eq!(d_p.add(&p_d), u);
    }

    #[test]
    fn vector_valued_homotopy(u in vector_form()) {
        let d_p = if u.k() == 0 {
            u.at_origin()
        } else {
            exterior_d(&koszul_poincare(&u).unwrap())
        };
        let p_d = if u.k() == 3 {
            PolyForm::zero(3, 3, u.value())
        } else {
            koszul_poincare(&exterior_d(&u)).unwrap()
        };
        prop_assert_eq!(d_p.add(&p_d), u);
    }

    #[test]
    fn json_round_trip(u in form()) {
        prop_assert_eq!(polyform_from_json(&polyform_to_json(&u)).unwrap(), u);
    }

    #[test]
    fn proxy_round_trip(u in vector_form()) {
        let back = proxy_to_form(&form_to_proxy(&u).unwrap(), 3, u.k(), u.value()).unwrap();
        prop_assert_eq!(back, u);
    }
}
