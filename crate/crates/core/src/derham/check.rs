use super::ops::{exterior_d, koszul_poincare};
use crate::forms::{polyform_to_json, FormBasis, ValueSpace, ValueTag};
use crate::ratpoly::BasisMode;
use crate::report::CheckReport;

/// Checks `dP + Pd = I` on every scalar monomial `k`-form on ℝⁿ of
/// coefficient degree ≤ `r_max` (`k ≥ 1`), or `Pd u = u − u(0)` when `k = 0`.
pub fn homotopy_check_derham(n: usize, k: usize, r_max: u32) -> CheckReport {
    let identity = if k == 0 {
        "P·d(u) = u − u(0)"
    } else {
        "d·P + P·d = I"
    };
    let mut report = CheckReport::new(format!("{identity} (n={n}, k={k}, deg≤{r_max})"));
    let value = ValueSpace::new(ValueTag::R, n);
    let basis = FormBasis::polynomial(n, k, value, r_max as i64, BasisMode::UpTo);
    for u in basis.elements() {
        let du = exterior_d(&u);
        let ok = if k == 0 {
            koszul_poincare(&du)
                .map(|pd| pd == u.sub(&u.at_origin()))
                .unwrap_or(false)
        } else {
            match (koszul_poincare(&u), koszul_poincare(&du)) {
                (Ok(pu), Ok(pdu)) => exterior_d(&pu).add(&pdu) == u,
                _ => false,
            }
        };
        report.record(ok, || polyform_to_json(&u));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_pass() {
        assert!(homotopy_check_derham(3, 1, 4).passed);
        assert!(homotopy_check_derham(3, 3, 3).passed);
        assert!(homotopy_check_derham(2, 0, 3).passed);
    }
}
