use bgg_core::derham::exterior_d;
use bgg_core::verify::{
    degree0_kernel_basis, dims_rows, euler_characteristic, verify_enriched_complex,
    verify_polynomial_complex, SequenceName,
};

#[test]
fn every_sequence_passes_at_its_first_degree() {
    for name in SequenceName::ALL {
        let r = name.min_r().max(4);
        let report = verify_polynomial_complex(name, r, false).unwrap();
        assert!(report.passed, "{name:?} r={r}: {report:?}");
        assert!(report.is_complex);
        assert_eq!(
            report.euler_characteristic,
            euler_characteristic(&report.dims)
        );
    }
}

#[test]
fn reversed_basis_order_gives_same_ranks() {
    for name in [
        SequenceName::PolyElast,
        SequenceName::PolyHess,
        SequenceName::PolyDivDiv,
        SequenceName::HomogElast,
    ] {
        let a = verify_polynomial_complex(name, 4, false).unwrap();
        let b = verify_polynomial_complex(name, 4, true).unwrap();
        assert_eq!(a.dims, b.dims);
        assert_eq!(a.ranks, b.ranks);
        assert_eq!(a.cohomology, b.cohomology);
    }
}

#[test]
fn kernels_of_first_operator() {
    // rigid motions, affine functions, and ℝ³ plus the Euler field
    for (name, dim) in [
        (SequenceName::PolyElast, 6),
        (SequenceName::PolyHess, 4),
        (SequenceName::PolyDivDiv, 4),
    ] {
        let basis = degree0_kernel_basis(name, 3).unwrap();
        assert_eq!(basis.len(), dim, "{name:?}");
        for u in &basis {
            assert!(u.degree().unwrap_or(0) <= 1, "{name:?}: {u}");
        }
    }
}

#[test]
fn rigid_motions_have_skew_gradient() {
    for u in degree0_kernel_basis(SequenceName::PolyElast, 3).unwrap() {
        // grad w is constant and skew, so its derivative vanishes
        assert!(exterior_d(&exterior_d(&u)).is_zero());
    }
}

#[test]
fn expected_euler_characteristics() {
    for (name, chi) in [
        (SequenceName::PolyElast, 6),
        (SequenceName::PolyHess, 4),
        (SequenceName::PolyDivDiv, 4),
    ] {
        for r in 4..=6 {
            let rows = dims_rows(&verify_polynomial_complex(name, r, false).unwrap());
            let alt: i64 = rows
                .iter()
                .map(|row| {
                    if row.slot % 2 == 0 {
                        row.dim as i64
                    } else {
                        -(row.dim as i64)
                    }
                })
                .sum();
            assert_eq!(alt, chi, "{name:?} r={r}");
        }
    }
}

#[test]
fn enriched_elasticity_at_degree_two() {
    let report = verify_enriched_complex(2).unwrap();
    assert!(report.passed, "{report:?}");
    assert_eq!(report.dims, vec![60, 102, 78, 30]);
    assert_eq!(report.cohomology, vec![6, 0, 0, 0]);
    assert!(report.d_closed && report.p_closed && report.homotopy);
    assert!(report.unenriched_counterexample.is_some());
}

#[test]
fn sequence_names_parse() {
    for name in SequenceName::ALL {
        assert_eq!(name.to_string().parse::<SequenceName>().unwrap(), name);
    }
    assert!("no-such".parse::<SequenceName>().is_err());
}
