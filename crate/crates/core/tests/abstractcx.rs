use bgg_core::abstractcx::{
    check_homotopy, check_modified, complex_from_json, conjugate_by_exp_k, euler_characteristic,
    harmonic_homotopy, modify_hat_tilde, perturb_homotopy, random_complex, random_grid,
    random_perturbation, random_reduction, seeded_rng, subcomplex_from_l, FiniteComplex,
    HomotopySet, KFamily,
};
use bgg_core::ratpoly::{rat, LinearOp};
use proptest::prelude::*;

fn passes(c: &FiniteComplex, h: &HomotopySet) -> bool {
    check_homotopy(c, h).unwrap().iter().all(|r| r.passed)
}

/// `∂²: 𝒫₄ → 𝒫₂` in the monomial bases, with double integration as `P`.
fn second_derivative() -> (FiniteComplex, HomotopySet) {
    let mut d = LinearOp::zeros(3, 5);
    for j in 2..5 {
        d.set(j - 2, j, rat((j * (j - 1)) as i64, 1));
    }
    let mut p = LinearOp::zeros(5, 3);
    for j in 0..3 {
        p.set(j + 2, j, rat(1, ((j + 1) * (j + 2)) as i64));
    }
    let c = FiniteComplex::new(vec![5, 3], vec![d]).unwrap();
    let h = HomotopySet::from_p(&c, vec![p]).unwrap();
    (c, h)
}

#[test]
fn second_derivative_complex() {
    let (c, h) = second_derivative();
    assert!(passes(&c, &h));
    assert_eq!(c.cohomology_dims(), vec![2, 0]);
    // L⁰ keeps the affine part, L¹ vanishes
    assert_eq!(h.l(0).rank(), 2);
    assert!(h.l(1).is_zero());
    let sub = subcomplex_from_l(&c, &h).unwrap();
    assert!(sub.equal);
    assert_eq!(sub.sub_dims, vec![2, 0]);
}

#[test]
fn zero_k_is_trivial_conjugation() {
    let (c, h) = second_derivative();
    let k = KFamily::new(&c, vec![LinearOp::zeros(5, 5), LinearOp::zeros(3, 3)]).unwrap();
    assert!(k.exp(0, false).is_identity());
    let conj = conjugate_by_exp_k(&c, &k, &h).unwrap();
    assert!(conj.intertwines);
    assert_eq!(conj.twisted.d(0), c.d(0));
    assert_eq!(conj.homotopy.p(1), h.p(1));
}

#[test]
fn euler_characteristic_examples() {
    assert_eq!(euler_characteristic(&[105, 120, 24, 3]), 6);
    assert_eq!(euler_characteristic(&[1, 1]), 0);
    assert_eq!(euler_characteristic(&[35, 60, 32, 3]), 4);
}

#[test]
fn generation_is_deterministic() {
    let a = random_complex(17, &[3, 4, 2]).unwrap();
    let b = random_complex(17, &[3, 4, 2]).unwrap();
    assert_eq!(a.complex.to_json(), b.complex.to_json());
}

fn dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=5, 2..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn harmonic_homotopy_recovers_cohomology(seed in any::<u64>(), dims in dims()) {
        let rc = random_complex(seed, &dims).unwrap();
        let c = &rc.complex;
        prop_assert_eq!(c.cohomology_dims(), rc.cohomology.clone());
        let chi: i64 = rc.cohomology.iter().enumerate()
            .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum();
        prop_assert_eq!(c.euler_characteristic(), chi);
        let h = harmonic_homotopy(c, None).unwrap();
        prop_assert!(passes(c, &h));
        for i in 0..c.len() {
            prop_assert_eq!(h.l(i).rank(), rc.cohomology[i]);
        }
        prop_assert!(subcomplex_from_l(c, &h).unwrap().equal);
    }

    #[test]
    fn complex_json_round_trip(seed in any::<u64>(), dims in dims()) {
        let c = random_complex(seed, &dims).unwrap().complex;
        let back = complex_from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), c.to_json());
    }

    #[test]
    fn perturbation_keeps_homotopy(seed in any::<u64>(), dims in dims()) {
        let c = random_complex(seed, &dims).unwrap().complex;
        let h = harmonic_homotopy(&c, None).unwrap();
        let y = random_perturbation(&mut seeded_rng(seed), &dims);
        let h2 = perturb_homotopy(&c, &h, &y).unwrap();
        prop_assert!(passes(&c, &h2));
        let m = modify_hat_tilde(&c, &h2).unwrap();
        prop_assert!(check_modified(&c, &m).iter().all(|r| r.passed));
    }

    #[test]
    fn conjugation_transports_homotopy(seed in 0u64..1000) {
        let (c, k) = random_grid(seed, 3, 3).unwrap();
        let h = harmonic_homotopy(&c, None).unwrap();
        let conj = conjugate_by_exp_k(&c, &k, &h).unwrap();
        prop_assert!(conj.intertwines);
        prop_assert!(passes(&conj.twisted, &conj.homotopy));
        for i in 0..c.len() {
            prop_assert_eq!(conj.homotopy.l(i).rank(), h.l(i).rank());
        }
    }

    #[test]
    fn reduction_transports_homotopy(seed in 0u64..1000) {
        let red = random_reduction(seed, 3, 3).unwrap();
        prop_assert!(red.is_valid());
        let h = harmonic_homotopy(&red.big, None).unwrap();
        let reduced = red.reduce(&h).unwrap();
        prop_assert!(passes(&red.small, &reduced));
    }
}
