use rayon::prelude::*;

use super::diagram::DiagramSpec;
use super::element::{ElementBasis, TwistedElement};
use crate::error::{AlgebraError, Result};
use crate::ratpoly::BasisMode;
use crate::report::CheckReport;

/// A complex of polynomial elements `V⁰ → … → Vⁿ` with a degree −1
/// operator `P` meant to satisfy `dP + Pd = I` in positive degrees.
pub trait HomotopyFamily: Sync {
    fn label(&self) -> String;

    /// Highest degree `n`; `d` vanishes on degree `n`.
    fn top(&self) -> usize;

    fn d(&self, u: &TwistedElement) -> Result<TwistedElement>;

    /// Defined for degrees `1..=n`.
    fn p(&self, u: &TwistedElement) -> Result<TwistedElement>;

    /// Spanning set of the degree-`degree` space, coefficient degree ≤ `r`.
    fn samples(&self, degree: usize, r: u32) -> Vec<TwistedElement>;
}

/// Row-wise de Rham complexes of a diagram with the Koszul operator.
pub struct DeRhamFamily<'a>(pub &'a DiagramSpec);

/// `(Y, d_V)` with `P_V = F P F⁻¹`.
pub struct TwistedFamily<'a>(pub &'a DiagramSpec);

/// `(Υ, 𝒟)` with `𝒫 = B P_V A`.
pub struct BggFamily<'a>(pub &'a DiagramSpec);

fn y_samples(spec: &DiagramSpec, degree: usize, r: u32) -> Vec<TwistedElement> {
    ElementBasis::polynomial(spec, degree, r as i64, BasisMode::UpTo)
        .elements()
        .collect()
}

/// Nonzero projections of the monomial basis of `Yⁱ` onto `Υⁱ`, without
/// repeats.
pub fn upsilon_samples(
    spec: &DiagramSpec,
    degree: usize,
    r: u32,
    mode: BasisMode,
) -> Vec<TwistedElement> {
    let basis = ElementBasis::polynomial(spec, degree, r as i64, mode);
    let mut out: Vec<TwistedElement> = Vec::new();
    for e in basis.elements() {
        let u = spec
            .proj_upsilon(&e)
            .expect("basis element matches diagram");
        if !u.is_zero() && !out.contains(&u) {
            out.push(u);
        }
    }
    out
}

impl HomotopyFamily for DeRhamFamily<'_> {
    fn label(&self) -> String {
        format!("de Rham rows of {}", self.0.name())
    }

    fn top(&self) -> usize {
        self.0.n()
    }

    fn d(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.0.exterior_d(u)
    }

    fn p(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.0.koszul(u)
    }

    fn samples(&self, degree: usize, r: u32) -> Vec<TwistedElement> {
        y_samples(self.0, degree, r)
    }
}

impl HomotopyFamily for TwistedFamily<'_> {
    fn label(&self) -> String {
        format!("twisted complex of {}", self.0.name())
    }

    fn top(&self) -> usize {
        self.0.n()
    }

    fn d(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.0.twisted_d(u)
    }

    fn p(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.0.twisted_poincare(u)
    }

    fn samples(&self, degree: usize, r: u32) -> Vec<TwistedElement> {
        y_samples(self.0, degree, r)
    }
}

impl HomotopyFamily for BggFamily<'_> {
    fn label(&self) -> String {
        format!("BGG complex of {}", self.0.name())
    }

    fn top(&self) -> usize {
        self.0.n()
    }

    fn d(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.0.bgg_d(u)
    }

    fn p(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.0.bgg_poincare(u)
    }

    fn samples(&self, degree: usize, r: u32) -> Vec<TwistedElement> {
        upsilon_samples(self.0, degree, r, BasisMode::UpTo)
    }
}

/// `P̃ⁱ = Pⁱ − D^{i−2} P^{i−1} Pⁱ` (and `P̃¹ = P¹`), which keeps the homotopy
/// relation and satisfies `P̃∘P̃ = 0`.
pub struct Complexified<F> {
    inner: F,
}

impl<F: HomotopyFamily> Complexified<F> {
    /// Checks `dP + Pd = I` in positive degrees on all samples of
    /// coefficient degree ≤ `r_check` before wrapping.
    pub fn new(inner: F, r_check: u32) -> Result<Self> {
        let report = homotopy_report(&inner, r_check, false);
        if !report.passed {
            return Err(AlgebraError::Precondition(format!(
                "{} violates dP + Pd = I: {}",
                inner.label(),
                report.counterexample.unwrap_or_default()
            )));
        }
        Ok(Complexified { inner })
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: HomotopyFamily> HomotopyFamily for Complexified<F> {
    fn label(&self) -> String {
        format!("complexified {}", self.inner.label())
    }

    fn top(&self) -> usize {
        self.inner.top()
    }

    fn d(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.inner.d(u)
    }

    fn p(&self, u: &TwistedElement) -> Result<TwistedElement> {
        let pu = self.inner.p(u)?;
        if u.degree() < 2 {
            return Ok(pu);
        }
        let ppu = self.inner.p(&pu)?;
        Ok(pu.sub(&self.inner.d(&ppu)?))
    }

    fn samples(&self, degree: usize, r: u32) -> Vec<TwistedElement> {
        self.inner.samples(degree, r)
    }
}

pub(crate) fn homotopy_holds<F: HomotopyFamily + ?Sized>(
    f: &F,
    u: &TwistedElement,
) -> Result<bool> {
    let i = u.degree();
    if i == 0 {
        let du = f.d(u)?;
        return Ok(f.d(&f.p(&du)?)? == du);
    }
    let mut lhs = f.d(&f.p(u)?)?;
    if i < f.top() {
        lhs = lhs.add(&f.p(&f.d(u)?)?);
    }
    Ok(lhs == *u)
}

fn homotopy_report<F: HomotopyFamily + ?Sized>(
    f: &F,
    r_max: u32,
    include_zero: bool,
) -> CheckReport {
    let mut report = CheckReport::new(format!(
        "dP + Pd = I, dPd = d in degree 0 ({}, deg≤{r_max})",
        f.label()
    ));
    let first = if include_zero { 0 } else { 1 };
    for i in first..=f.top() {
        let samples = f.samples(i, r_max);
        let results: Vec<Result<bool>> = samples.par_iter().map(|u| homotopy_holds(f, u)).collect();
        for (u, ok) in samples.iter().zip(results) {
            report.record(matches!(ok, Ok(true)), || {
                format!("degree {i}: {}", u.to_json())
            });
        }
    }
    report
}

/// Checks the null-homotopy relation in every degree on all samples of
/// coefficient degree ≤ `r_max`; in degree 0 checks `dPd = d`.
pub fn check_homotopy<F: HomotopyFamily + ?Sized>(f: &F, r_max: u32) -> CheckReport {
    homotopy_report(f, r_max, true)
}

/// Checks `P∘P = 0` in degrees `2..=n`.
pub fn check_complex_property<F: HomotopyFamily + ?Sized>(f: &F, r_max: u32) -> CheckReport {
    let mut report = CheckReport::new(format!("P∘P = 0 ({}, deg≤{r_max})", f.label()));
    for i in 2..=f.top() {
        let samples = f.samples(i, r_max);
        let results: Vec<Result<bool>> = samples
            .par_iter()
            .map(|u| f.p(u).and_then(|pu| f.p(&pu)).map(|ppu| ppu.is_zero()))
            .collect();
        for (u, ok) in samples.iter().zip(results) {
            report.record(matches!(ok, Ok(true)), || {
                format!("degree {i}: {}", u.to_json())
            });
        }
    }
    report
}

/// Checks `d∘d = 0` in degrees `0..n−1`.
pub fn check_d_squared<F: HomotopyFamily + ?Sized>(f: &F, r_max: u32) -> CheckReport {
    let mut report = CheckReport::new(format!("d∘d = 0 ({}, deg≤{r_max})", f.label()));
    for i in 0..f.top().saturating_sub(1) {
        let samples = f.samples(i, r_max);
        let results: Vec<Result<bool>> = samples
            .par_iter()
            .map(|u| f.d(u).and_then(|du| f.d(&du)).map(|ddu| ddu.is_zero()))
            .collect();
        for (u, ok) in samples.iter().zip(results) {
            report.record(matches!(ok, Ok(true)), || {
                format!("degree {i}: {}", u.to_json())
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bggcore::BuiltinDiagram;

    #[test]
    fn oned_families() {
        let spec = DiagramSpec::builtin(BuiltinDiagram::OneD);
        assert!(check_homotopy(&DeRhamFamily(&spec), 4).passed);
        assert!(check_homotopy(&TwistedFamily(&spec), 4).passed);
        assert!(check_homotopy(&BggFamily(&spec), 4).passed);
    }

    /// A family whose P is off by a factor violates the precondition.
    struct Halved<'a>(DeRhamFamily<'a>);

    impl HomotopyFamily for Halved<'_> {
        fn label(&self) -> String {
            "halved".into()
        }
        fn top(&self) -> usize {
            self.0.top()
        }
        fn d(&self, u: &TwistedElement) -> Result<TwistedElement> {
            self.0.d(u)
        }
        fn p(&self, u: &TwistedElement) -> Result<TwistedElement> {
            Ok(self.0.p(u)?.scale(&crate::ratpoly::rat(1, 2)))
        }
        fn samples(&self, degree: usize, r: u32) -> Vec<TwistedElement> {
            self.0.samples(degree, r)
        }
    }

    #[test]
    fn complexify_rejects_bad_input() {
        let spec = DiagramSpec::builtin(BuiltinDiagram::OneD);
        assert!(matches!(
            Complexified::new(Halved(DeRhamFamily(&spec)), 2),
            Err(AlgebraError::Precondition(_))
        ));
    }
}
