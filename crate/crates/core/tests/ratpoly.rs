use bgg_core::ratpoly::{
    format_rational, monomial_basis, parse_rational, rat, BasisMode, LinearOp, Monomial, Poly,
    Rational,
};
use proptest::prelude::*;

const N: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, N), rational()), 0..6).prop_map(
        |terms| {
            let mut p = Poly::zero(N);
            for (e, c) in terms {
                p.add_term(Monomial::new(e), c);
            }
            p
        },
    )
}

fn matrix(max: usize) -> impl Strategy<Value = LinearOp> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, c), r).prop_map(move |rows| {
            let rows: Vec<Vec<Rational>> = rows
                .into_iter()
                .map(|row| row.into_iter().map(|x| rat(x, 1)).collect())
                .collect();
            LinearOp::from_dense(&rows, c)
        })
    })
}

#[test]
fn parses_and_formats_examples() {
    assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
    assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
    assert_eq!(format_rational(&rat(4, 2)), "2");
    assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
    for bad in ["", "1/0", "a/2", "1//2", "1.5"] {
        assert!(parse_rational(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn basis_sizes_match_binomials() {
    // dim 𝒫_r(ℝ³) = C(r+3, 3), dim ℋ_r(ℝ³) = C(r+2, 2)
    for r in 0..7u32 {
        let up_to = monomial_basis(3, r, BasisMode::UpTo).len();
        let homog = monomial_basis(3, r, BasisMode::Homogeneous).len();
        let r = r as usize;
        assert_eq!(up_to, (r + 1) * (r + 2) * (r + 3) / 6);
        assert_eq!(homog, (r + 1) * (r + 2) / 2);
    }
}

proptest! {
    #[test]
    fn rational_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), axis in 0..N) {
        let lhs = (&a * &b).partial_derivative(axis).unwrap();
        let rhs = &(&a.partial_derivative(axis).unwrap() * &b)
            + &(&a * &b.partial_derivative(axis).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_components_sum_to_poly(a in poly()) {
        let mut sum = Poly::zero(N);
        for (r, part) in a.homogeneous_components() {
            prop_assert!(part.is_homogeneous_of(r));
            sum = &sum + &part;
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let rki = m.rank_kernel_image();
        let kernel = &rki.kernel;
        prop_assert_eq!(rki.rank + kernel.ncols(), m.ncols());
        prop_assert!(m.mul(kernel).is_zero());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn pseudo_inverse_identities(m in matrix(5)) {
        let p = m.pseudo_inverse();
        prop_assert_eq!(m.mul(&p).mul(&m), m.clone());
        prop_assert_eq!(p.mul(&m).mul(&p), p.clone());
        let mp = m.mul(&p);
        prop_assert_eq!(mp.mul(&mp), mp);
    }
}
