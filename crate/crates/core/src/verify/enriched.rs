use rayon::prelude::*;
use serde::Serialize;

use crate::bggcore::family::homotopy_holds;
use crate::bggcore::{
    upsilon_samples, BggFamily, BuiltinDiagram, Complexified, DiagramSpec, ElementBasis,
    HomotopyFamily, TwistedElement,
};
use crate::error::Result;
use crate::ratpoly::{BasisMode, LinearOp};

/// Result of checking the enriched elasticity complex
/// `Σⁱ = 𝒫_r⊗Υⁱ + 𝒫̃(𝒫_r⊗Υⁱ⁺¹)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnrichedReport {
    pub r: u32,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
    /// `𝒟Σⁱ ⊂ Σⁱ⁺¹`
    pub d_closed: bool,
    /// `𝒫̃Σⁱ ⊂ Σⁱ⁻¹`
    pub p_closed: bool,
    /// `𝒟𝒫̃ + 𝒫̃𝒟 = I` on every generator of positive degree, `𝒟𝒫̃𝒟 = 𝒟` in degree 0.
    pub homotopy: bool,
    /// A generator `u ∈ 𝒫_r⊗Υⁱ` with `𝒫̃u ∉ 𝒫_r⊗Υⁱ⁻¹`, if one exists.
    pub unenriched_counterexample: Option<String>,
    pub passed: bool,
}

/// Columns are the coordinates of `elems` in `basis`.
fn span_matrix(basis: &ElementBasis, elems: &[TwistedElement]) -> Result<LinearOp> {
    let mut entries = Vec::new();
    for (j, u) in elems.iter().enumerate() {
        entries.extend(basis.coords(u)?.into_iter().map(|(i, v)| (i, j, v)));
    }
    LinearOp::from_triplets(basis.len(), elems.len(), entries)
}

/// `true` when every element of `extra` lies in the span of `gens`.
fn spans(basis: &ElementBasis, gens: &[TwistedElement], extra: &[TwistedElement]) -> Result<bool> {
    let base = span_matrix(basis, gens)?;
    let all = LinearOp::hstack(&[&base, &span_matrix(basis, extra)?]);
    Ok(base.rank() == all.rank())
}

/// Builds the enriched elasticity complex for polynomial degree `r` and
/// checks closure under `𝒟` and `𝒫̃`, the homotopy relation and its
/// cohomology (`H⁰` the six rigid motions, zero above).
pub fn verify_enriched_complex(r: u32) -> Result<EnrichedReport> {
    let spec = DiagramSpec::builtin(BuiltinDiagram::Elasticity);
    let family = Complexified::new(BggFamily(&spec), r.min(2))?;
    let top = spec.n();
    let base: Vec<Vec<TwistedElement>> = (0..=top)
        .map(|i| upsilon_samples(&spec, i, r, BasisMode::UpTo))
        .collect();
    let gens: Vec<Vec<TwistedElement>> = (0..=top)
        .map(|i| {
            let mut g = base[i].clone();
            if i < top {
                let lifted: Vec<Result<TwistedElement>> =
                    base[i + 1].par_iter().map(|u| family.p(u)).collect();
                for u in lifted {
                    let u = u?;
                    if !u.is_zero() {
                        g.push(u);
                    }
                }
            }
            Ok(g)
        })
        .collect::<Result<_>>()?;
    let images: Vec<Vec<TwistedElement>> = gens
        .iter()
        .map(|g| {
            g.par_iter()
                .filter(|u| u.degree() < top)
                .map(|u| family.d(u))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let lifts: Vec<Vec<TwistedElement>> = gens
        .iter()
        .map(|g| {
            g.par_iter()
                .filter(|u| u.degree() > 0)
                .map(|u| family.p(u))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // one coordinate basis per degree, wide enough for every generator and image
    let max_deg = gens
        .iter()
        .flatten()
        .chain(images.iter().flatten())
        .chain(lifts.iter().flatten())
        .filter_map(TwistedElement::poly_degree)
        .max()
        .unwrap_or(0);
    let bases: Vec<ElementBasis> = (0..=top)
        .map(|i| ElementBasis::polynomial(&spec, i, max_deg as i64, BasisMode::UpTo))
        .collect();

    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    let mut d_closed = true;
    let mut p_closed = true;
    for i in 0..=top {
        dims.push(span_matrix(&bases[i], &gens[i])?.rank());
        if i < top {
            ranks.push(span_matrix(&bases[i + 1], &images[i])?.rank());
            d_closed &= spans(&bases[i + 1], &gens[i + 1], &images[i])?;
        } else {
            ranks.push(0);
        }
        if i > 0 {
            p_closed &= spans(&bases[i - 1], &gens[i - 1], &lifts[i])?;
        }
    }
    let cohomology: Vec<usize> = (0..=top)
        .map(|i| dims[i] - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
        .collect();

    let homotopy = gens
        .iter()
        .flatten()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|u| homotopy_holds(&family, u))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|ok| ok);

    let mut unenriched_counterexample = None;
    'outer: for i in 1..=top {
        for u in &base[i] {
            let pu = family.p(u)?;
            if !spans(&bases[i - 1], &base[i - 1], std::slice::from_ref(&pu))? {
                unenriched_counterexample =
                    Some(format!("degree {i}: {} ↦ {}", u.to_json(), pu.to_json()));
                break 'outer;
            }
        }
    }

    let mut expected = vec![0; top + 1];
    expected[0] = 6;
    let passed = d_closed && p_closed && homotopy && cohomology == expected;
    Ok(EnrichedReport {
        r,
        dims,
        ranks,
        cohomology,
        d_closed,
        p_closed,
        homotopy,
        unenriched_counterexample,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enriched_r1() {
        let rep = verify_enriched_complex(1).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.unenriched_counterexample.is_some());
    }
}
