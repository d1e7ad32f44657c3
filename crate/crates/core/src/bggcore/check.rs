use rayon::prelude::*;

use super::diagram::{BuiltinDiagram, DiagramSpec};
use super::element::{ElementBasis, TwistedElement};
use super::family::{
    check_complex_property, check_d_squared, check_homotopy, upsilon_samples, BggFamily,
    Complexified, TwistedFamily,
};
use super::proxy::{bgg_from_proxy, bgg_to_proxy, expected_proxy_operator};
use crate::derham::proxy_operator;
use crate::error::Result;
use crate::forms::ProxyField;
use crate::ratpoly::{int, rat, BasisMode, Monomial, Poly};
use crate::report::{CheckReport, SuiteReport};

fn run<T: Sync>(
    report: &mut CheckReport,
    items: &[T],
    test: impl Fn(&T) -> Result<bool> + Sync,
    show: impl Fn(&T) -> String,
) {
    let results: Vec<Result<bool>> = items.par_iter().map(&test).collect();
    for (item, ok) in items.iter().zip(results) {
        report.record(matches!(ok, Ok(true)), || show(item));
    }
}

fn y_basis(spec: &DiagramSpec, degree: usize, r: u32) -> Vec<TwistedElement> {
    ElementBasis::polynomial(spec, degree, r as i64, BasisMode::UpTo)
        .elements()
        .collect()
}

/// `d_V P_V + P_V d_V = I` (and `d_V P_V d_V = d_V` in degree 0) on full
/// monomial bases of `Y`.
pub fn homotopy_check_twisted(spec: &DiagramSpec, r_max: u32) -> CheckReport {
    check_homotopy(&TwistedFamily(spec), r_max)
}

/// `𝒟𝒫 + 𝒫𝒟 = I` (and `𝒟𝒫𝒟 = 𝒟` in degree 0) on the projections of full
/// monomial bases onto `Υ`.
pub fn homotopy_check_bgg(spec: &DiagramSpec, r_max: u32) -> CheckReport {
    check_homotopy(&BggFamily(spec), r_max)
}

/// `d(I − PS) = (I − PS) d_V` and `F(I − PS) = I` on `Y`.
pub fn check_f_iso(spec: &DiagramSpec, r_max: u32) -> CheckReport {
    let mut report = CheckReport::new(format!(
        "d(I − PS) = (I − PS)d_V, F∘F⁻¹ = I ({}, deg≤{r_max})",
        spec.name()
    ));
    for i in 0..=spec.n() {
        let samples = y_basis(spec, i, r_max);
        run(
            &mut report,
            &samples,
            |u| {
                let finv = spec.f_iso(u, true)?;
                let lhs = spec.exterior_d(&finv)?;
                let rhs = spec.f_iso(&spec.twisted_d(u)?, true);
                let rhs = match rhs {
                    Ok(v) => v,
                    // degree n + 1 elements are zero; F⁻¹ is the identity there
                    Err(_) => spec.twisted_d(u)?,
                };
                Ok(lhs == rhs && spec.f_iso(&finv, false)? == *u)
            },
            |u| u.to_json(),
        );
    }
    report
}

/// `d_V∘d_V = 0`, `𝒟∘𝒟 = 0`, `A𝒟 = d_V A`, `𝒟B = B d_V`, `BA = I` on `Υ`
/// (and `Y` for `B`).
pub fn check_cochain(spec: &DiagramSpec, r_max: u32) -> Vec<CheckReport> {
    let n = spec.n();
    let mut a_d = CheckReport::new(format!("A𝒟 = d_V A ({}, deg≤{r_max})", spec.name()));
    let mut d_b = CheckReport::new(format!("𝒟B = B d_V ({}, deg≤{r_max})", spec.name()));
    let mut b_a = CheckReport::new(format!("BA = I on Υ ({}, deg≤{r_max})", spec.name()));
    for i in 0..=n {
        let ups = upsilon_samples(spec, i, r_max, BasisMode::UpTo);
        run(
            &mut b_a,
            &ups,
            |u| Ok(spec.b_map(&spec.a_map(u)?)? == *u),
            |u| u.to_json(),
        );
        if i < n {
            run(
                &mut a_d,
                &ups,
                |u| Ok(spec.a_map(&spec.bgg_d(u)?)? == spec.twisted_d(&spec.a_map(u)?)?),
                |u| u.to_json(),
            );
            let ys = y_basis(spec, i, r_max);
            run(
                &mut d_b,
                &ys,
                |u| Ok(spec.bgg_d(&spec.b_map(u)?)? == spec.b_map(&spec.twisted_d(u)?)?),
                |u| u.to_json(),
            );
        }
    }
    vec![
        check_d_squared(&TwistedFamily(spec), r_max),
        check_d_squared(&BggFamily(spec), r_max),
        a_d,
        d_b,
        b_a,
    ]
}

/// `𝒟ⁱ` agrees, with its fixed sign, with the classical operator on
/// proxies (see [`expected_proxy_operator`]).
pub fn check_proxy_agreement(which: BuiltinDiagram, r_max: u32) -> CheckReport {
    let spec = DiagramSpec::builtin(which);
    let mut report = CheckReport::new(format!(
        "𝒟 matches signed proxy operators ({}, deg≤{r_max})",
        spec.name()
    ));
    for i in 0..spec.n() {
        let Some((op, sign)) = expected_proxy_operator(which, i) else {
            continue;
        };
        let samples = upsilon_samples(&spec, i, r_max, BasisMode::UpTo);
        run(
            &mut report,
            &samples,
            |u| {
                let lhs = bgg_to_proxy(&spec, &spec.bgg_d(u)?)?;
                let field = bgg_to_proxy(&spec, u)?;
                let rhs = proxy_operator(op, &field)?;
                let rhs =
                    rhs.reshape_like(rhs.flatten().iter().map(|p| p.scale(&int(sign))).collect())?;
                Ok(lhs == rhs)
            },
            |u| format!("{} on {}", op.name(), u.to_json()),
        );
    }
    report
}

/// Cross product `a × b` of polynomial 3-vectors.
fn cross(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    (0..3)
        .map(|k| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            &(&a[i] * &b[j]) - &(&a[j] * &b[i])
        })
        .collect()
}

/// Cesàro–Volterra reconstruction on the elasticity complex:
/// `𝒫¹(def w) = w − w(0) + ½ x × (curl w)(0)` for every vector monomial `w`.
pub fn check_cesaro_volterra(r_max: u32) -> CheckReport {
    let spec = DiagramSpec::builtin(BuiltinDiagram::Elasticity);
    let mut report = CheckReport::new(format!(
        "𝒫¹(def w) = w − w(0) + ½x × curl w(0) (deg≤{r_max})"
    ));
    let samples = upsilon_samples(&spec, 0, r_max, BasisMode::UpTo);
    let x: Vec<Poly> = (0..3).map(|i| Poly::var(3, i)).collect();
    run(
        &mut report,
        &samples,
        |u| {
            let ProxyField::Vector(w) = bgg_to_proxy(&spec, u)? else {
                return Ok(false);
            };
            let ProxyField::Vector(curl) =
                proxy_operator(crate::derham::ProxyOp::Curl, &ProxyField::Vector(w.clone()))?
            else {
                return Ok(false);
            };
            let curl0: Vec<Poly> = curl
                .iter()
                .map(|p| Poly::constant(3, p.constant_term()))
                .collect();
            let rot = cross(&x, &curl0);
            let expected: Vec<Poly> = (0..3)
                .map(|k| {
                    let mut e = &w[k] - &Poly::constant(3, w[k].constant_term());
                    e.add_scaled(&rot[k], &rat(1, 2));
                    e
                })
                .collect();
            let got = spec.bgg_poincare(&spec.bgg_d(u)?)?;
            Ok(got == bgg_from_proxy(&spec, 0, &ProxyField::Vector(expected))?)
        },
        |u| u.to_json(),
    );
    report
}

/// Complexified `𝒫̃` keeps the homotopy relation and satisfies `𝒫̃∘𝒫̃ = 0`.
pub fn check_complexify(spec: &DiagramSpec, r_max: u32) -> Vec<CheckReport> {
    match Complexified::new(BggFamily(spec), r_max) {
        Ok(fam) => vec![
            check_homotopy(&fam, r_max),
            check_complex_property(&fam, r_max),
        ],
        Err(e) => {
            let mut report = CheckReport::new(format!("complexify precondition ({})", spec.name()));
            report.record(false, || e.to_string());
            vec![report]
        }
    }
}

/// Coefficient-degree shift of `𝒫ⁱ` on homogeneous inputs: `𝒫ⁱ` maps
/// `ℋ_s` into `ℋ_{s+shift}` where `shift` is the total order of `𝒟^{i−1}`.
pub fn bgg_degree_shift(spec: &DiagramSpec, degree: usize) -> Option<u32> {
    let from = spec.active_row(degree)?;
    let to = spec.active_row(degree - 1)?;
    // each row step contributes one extra derivative
    Some(1 + to.abs_diff(from) as u32)
}

/// `𝒫ⁱ(ℋ_s ⊗ Υⁱ) ⊂ ℋ_{s+shift} ⊗ Υ^{i−1}` for `s ≤ r_max`.
pub fn check_homogeneous_grading(spec: &DiagramSpec, r_max: u32) -> CheckReport {
    let mut report = CheckReport::new(format!(
        "𝒫 preserves homogeneous grading ({}, deg≤{r_max})",
        spec.name()
    ));
    for i in 1..=spec.n() {
        let Some(shift) = bgg_degree_shift(spec, i) else {
            report.record(false, || format!("Υ^{i} not concentrated in one row"));
            continue;
        };
        for s in 0..=r_max {
            let samples = upsilon_samples(spec, i, s, BasisMode::Homogeneous);
            run(
                &mut report,
                &samples,
                |u| {
                    let p = spec.bgg_poincare(u)?;
                    Ok(p.is_homogeneous_of(s + shift) && spec.in_upsilon(&p)?)
                },
                |u| format!("s={s}: {}", u.to_json()),
            );
        }
    }
    report
}

/// On the 1D diagram: `𝒫(x^r) = x^{r+2}/((r+1)(r+2))` and `∂²𝒫 = I`.
pub fn check_oned(r_max: u32) -> CheckReport {
    let spec = DiagramSpec::builtin(BuiltinDiagram::OneD);
    let mut report = CheckReport::new(format!(
        "1D: 𝒫(x^r) = x^(r+2)/((r+1)(r+2)), ∂²𝒫 = I (r≤{r_max})"
    ));
    let rs: Vec<u32> = (0..=r_max).collect();
    let mono = |r: u32, c| Poly::term(Monomial::new(vec![r]), c);
    run(
        &mut report,
        &rs,
        |&r| {
            let u = bgg_from_proxy(&spec, 1, &ProxyField::Scalar(mono(r, int(1))))?;
            let p = spec.bgg_poincare(&u)?;
            let c = rat(1, ((r + 1) * (r + 2)) as i64);
            let expected = bgg_from_proxy(&spec, 0, &ProxyField::Scalar(mono(r + 2, c)))?;
            Ok(p == expected && spec.bgg_d(&p)? == u)
        },
        |r| format!("x^{r}"),
    );
    report
}

/// Every BGG check for one diagram.
pub fn bgg_suite(spec: &DiagramSpec, r_max: u32) -> SuiteReport {
    let mut checks = vec![
        homotopy_check_twisted(spec, r_max),
        check_f_iso(spec, r_max),
    ];
    checks.extend(check_cochain(spec, r_max));
    checks.push(homotopy_check_bgg(spec, r_max));
    if let Ok(which) = spec.name().parse::<BuiltinDiagram>() {
        if expected_proxy_operator(which, 0).is_some() {
            checks.push(check_proxy_agreement(which, r_max));
        }
        if which == BuiltinDiagram::Elasticity {
            checks.push(check_cesaro_volterra(r_max));
        }
        if which == BuiltinDiagram::OneD {
            checks.push(check_oned(r_max + 2));
        }
    }
    checks.push(check_homogeneous_grading(spec, r_max));
    checks.extend(check_complexify(spec, r_max));
    SuiteReport::new(format!("bgg {}", spec.name()), checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elasticity_shifts() {
        let spec = DiagramSpec::builtin(BuiltinDiagram::Elasticity);
        let shifts: Vec<u32> = (1..=3)
            .map(|i| bgg_degree_shift(&spec, i).unwrap())
            .collect();
        assert_eq!(shifts, vec![1, 2, 1]);
    }

    #[test]
    fn oned_suite_passes() {
        let spec = DiagramSpec::builtin(BuiltinDiagram::OneD);
        let suite = bgg_suite(&spec, 4);
        assert!(suite.passed, "{:?}", suite.first_failure());
    }
}
