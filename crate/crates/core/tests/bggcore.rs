use bgg_core::bggcore::{
    diagram_from_json, diagram_to_json, twisted_from_json, BggFamily, BuiltinDiagram, Complexified,
    DiagramSpec, ElementBasis, HomotopyFamily, TwistedElement,
};
use bgg_core::ratpoly::{rat, BasisMode, Rational};
use proptest::prelude::*;

const DIAGRAMS: [BuiltinDiagram; 4] = [
    BuiltinDiagram::Hessian,
    BuiltinDiagram::Elasticity,
    BuiltinDiagram::DivDiv,
    BuiltinDiagram::OneD,
];

/// Random element of `Yⁱ` with coefficient degree at most 2.
fn element() -> impl Strategy<Value = (DiagramSpec, TwistedElement)> {
    (0..DIAGRAMS.len())
        .prop_flat_map(|d| {
            let spec = DiagramSpec::builtin(DIAGRAMS[d]);
            let n = spec.n();
            (Just(spec), 0..=n)
        })
        .prop_flat_map(|(spec, degree)| {
            let basis = ElementBasis::polynomial(&spec, degree, 2, BasisMode::UpTo);
            let len = basis.len();
            prop::collection::vec(-3i64..=3, len).prop_map(move |c| {
                let coords: Vec<Rational> = c.into_iter().map(|x| rat(x, 1)).collect();
                (spec.clone(), basis.from_coords(&coords))
            })
        })
}

#[test]
fn builtin_diagrams_survive_json() {
    for which in DIAGRAMS {
        let spec = DiagramSpec::builtin(which);
        let json = diagram_to_json(&spec);
        let back = diagram_from_json(&json).unwrap();
        assert_eq!(diagram_to_json(&back), json, "{}", which.name());
        assert_eq!(back.rows(), spec.rows());
    }
}

#[test]
fn malformed_diagrams_are_rejected() {
    for bad in ["", "{}", "[1,2]", r#"{"name":"x","n":3,"rows":[]}"#] {
        assert!(diagram_from_json(bad).is_err(), "{bad:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn element_json_round_trip((_spec, u) in element()) {
        prop_assert_eq!(twisted_from_json(&u.to_json()).unwrap(), u);
    }

    #[test]
    fn s_t_s_is_s((spec, u) in element()) {
        prop_assume!(u.degree() < spec.n());
        let s = spec.s_apply(&u).unwrap();
        let sts = spec.s_apply(&spec.t_apply(&s).unwrap()).unwrap();
        prop_assert_eq!(sts, s);
    }

    #[test]
    fn projection_is_idempotent((spec, u) in element()) {
        let pu = spec.proj_upsilon(&u).unwrap();
        prop_assert!(spec.in_upsilon(&pu).unwrap());
        prop_assert_eq!(spec.proj_upsilon(&pu).unwrap(), pu);
    }

    #[test]
    fn f_is_invertible((spec, u) in element()) {
        let f = spec.f_iso(&u, false).unwrap();
        prop_assert_eq!(spec.f_iso(&f, true).unwrap(), u);
    }

    #[test]
    fn twisted_d_squared_vanishes((spec, u) in element()) {
        prop_assume!(u.degree() + 2 <= spec.n());
        let dd = spec.twisted_d(&spec.twisted_d(&u).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn b_inverts_a_on_upsilon((spec, u) in element()) {
        let v = spec.proj_upsilon(&u).unwrap();
        prop_assert_eq!(spec.b_map(&spec.a_map(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn bgg_homotopy((spec, u) in element()) {
        prop_assume!(u.degree() >= 1 && u.degree() < spec.n());
        let v = spec.proj_upsilon(&u).unwrap();
        let dp = spec.bgg_d(&spec.bgg_poincare(&v).unwrap()).unwrap();
        let pd = spec.bgg_poincare(&spec.bgg_d(&v).unwrap()).unwrap();
        prop_assert_eq!(dp.add(&pd), v);
    }

    #[test]
    fn bgg_d_squared_vanishes((spec, u) in element()) {
        prop_assume!(u.degree() + 2 <= spec.n());
        let v = spec.proj_upsilon(&u).unwrap();
        prop_assert!(spec.bgg_d(&spec.bgg_d(&v).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn complexified_p_squared_vanishes((spec, u) in element()) {
        prop_assume!(u.degree() >= 2);
        let fam = Complexified::new(BggFamily(&spec), 2).unwrap();
        let v = spec.proj_upsilon(&u).unwrap();
        let pp = fam.p(&fam.p(&v).unwrap()).unwrap();
        prop_assert!(pp.is_zero());
    }
}
