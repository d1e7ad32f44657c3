use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::abstractcx::euler_characteristic;
use crate::derham::{proxy_operator, ProxyOp};
use crate::error::{AlgebraError, Result};
use crate::forms::{form_to_proxy, proxy_to_form, FormBasis, PolyForm, ValueSpace, ValueTag};
use crate::ratpoly::{BasisMode, LinearOp};

/// Named polynomial sequences built from proxy operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceName {
    /// `𝒫_r⊗𝕍 → 𝒫_{r−1}⊗𝕊 → 𝒫_{r−3}⊗𝕊 → 𝒫_{r−4}⊗𝕍` via def, inc, div.
    PolyElast,
    /// `𝒫_r → 𝒫_{r−2}⊗𝕊 → 𝒫_{r−3}⊗𝕋 → 𝒫_{r−4}⊗𝕍` via hess, curl, div.
    PolyHess,
    /// `𝒫_r⊗𝕍 → 𝒫_{r−1}⊗𝕋 → 𝒫_{r−2}⊗𝕊 → 𝒫_{r−4}` via dev grad, sym curl, div div.
    PolyDivDiv,
    /// `𝒫_r → 𝒫_{r−2}⊗𝕊𝕋 → 𝒫_{r−3}⊗𝕊𝕋 → 𝒫_{r−5}` via dev hess, sym curl, div div.
    PolyConfHess,
    /// `𝒫_r⊗𝕍 → 𝒫_{r−1}⊗𝕊𝕋 → 𝒫_{r−4}⊗𝕊𝕋 → 𝒫_{r−5}⊗𝕍` via dev def, (cot), div.
    /// The middle operator is not available, so its rank is not computed.
    PolyConfDef,
    /// `ℋ_{r+4}⊗𝕍 → ℋ_{r+3}⊗𝕊 → ℋ_{r+1}⊗𝕊 → ℋ_r⊗𝕍` via def, inc, div.
    HomogElast,
}

impl SequenceName {
    pub const ALL: [SequenceName; 6] = [
        SequenceName::PolyElast,
        SequenceName::PolyHess,
        SequenceName::PolyDivDiv,
        SequenceName::PolyConfHess,
        SequenceName::PolyConfDef,
        SequenceName::HomogElast,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceName::PolyElast => "poly-elast",
            SequenceName::PolyHess => "poly-hess",
            SequenceName::PolyDivDiv => "poly-divdiv",
            SequenceName::PolyConfHess => "poly-conf-hess",
            SequenceName::PolyConfDef => "poly-conf-def",
            SequenceName::HomogElast => "homog-elast",
        }
    }

    /// `(value space, degree offset)` per slot; the slot degree is `r + offset`.
    fn slots(self) -> [(ValueTag, i64); 4] {
        use ValueTag::*;
        match self {
            SequenceName::PolyElast => [(V, 0), (S, -1), (S, -3), (V, -4)],
            SequenceName::PolyHess => [(R, 0), (S, -2), (T, -3), (V, -4)],
            SequenceName::PolyDivDiv => [(V, 0), (T, -1), (S, -2), (R, -4)],
            SequenceName::PolyConfHess => [(R, 0), (ST, -2), (ST, -3), (R, -5)],
            SequenceName::PolyConfDef => [(V, 0), (ST, -1), (ST, -4), (V, -5)],
            SequenceName::HomogElast => [(V, 4), (S, 3), (S, 1), (V, 0)],
        }
    }

    fn ops(self) -> [Option<ProxyOp>; 3] {
        use ProxyOp::*;
        match self {
            SequenceName::PolyElast | SequenceName::HomogElast => [Some(Def), Some(Inc), Some(Div)],
            SequenceName::PolyHess => [Some(Hess), Some(Curl), Some(Div)],
            SequenceName::PolyDivDiv => [Some(DevGrad), Some(SymCurl), Some(DivDiv)],
            SequenceName::PolyConfHess => [Some(DevHess), Some(SymCurl), Some(DivDiv)],
            SequenceName::PolyConfDef => [Some(DevDef), None, Some(Div)],
        }
    }

    fn mode(self) -> BasisMode {
        match self {
            SequenceName::HomogElast => BasisMode::Homogeneous,
            _ => BasisMode::UpTo,
        }
    }

    /// Expected `dim H⁰` for large enough `r`.
    pub fn expected_h0(self) -> usize {
        match self {
            SequenceName::PolyElast => 6,
            SequenceName::PolyHess | SequenceName::PolyDivDiv => 4,
            SequenceName::PolyConfHess => 5,
            SequenceName::PolyConfDef => 10,
            SequenceName::HomogElast => 0,
        }
    }

    /// Smallest `r` at which `dim H⁰` reaches [`Self::expected_h0`].
    pub fn min_r(self) -> u32 {
        match self {
            SequenceName::PolyElast | SequenceName::PolyHess | SequenceName::PolyDivDiv => 4,
            SequenceName::PolyConfHess | SequenceName::PolyConfDef => 5,
            SequenceName::HomogElast => 0,
        }
    }
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceName {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        SequenceName::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| AlgebraError::UnknownName(s.to_string()))
    }
}

/// Monomial bases of the four slots of a sequence at degree `r`.
pub fn slot_bases(name: SequenceName, r: u32, reversed: bool) -> Vec<FormBasis> {
    name.slots()
        .iter()
        .map(|&(tag, off)| {
            let b =
                FormBasis::polynomial(3, 0, ValueSpace::new(tag, 3), r as i64 + off, name.mode());
            if reversed {
                b.reversed()
            } else {
                b
            }
        })
        .collect()
}

/// Matrix of a proxy operator between slot bases (0-forms with values in
/// the slot's value space).
pub fn operator_matrix(op: ProxyOp, source: &FormBasis, target: &FormBasis) -> Result<LinearOp> {
    let columns: Vec<Result<Vec<(usize, crate::ratpoly::Rational)>>> = (0..source.len())
        .into_par_iter()
        .map(|j| {
            let u = source.element(j);
            let image = proxy_operator(op, &form_to_proxy(&u)?)?;
            let w = proxy_to_form(&image, 3, 0, target.value)?;
            target.coords(&w)
        })
        .collect();
    let mut entries = Vec::new();
    for (j, col) in columns.into_iter().enumerate() {
        entries.extend(col?.into_iter().map(|(i, v)| (i, j, v)));
    }
    LinearOp::from_triplets(target.len(), source.len(), entries)
}

/// Dimensions, ranks and cohomology of a polynomial sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub name: String,
    pub r: u32,
    pub dims: Vec<usize>,
    /// `None` where the operator is not available.
    pub ranks: Vec<Option<usize>>,
    /// `None` where a neighbouring rank is unknown.
    pub cohomology: Vec<Option<usize>>,
    pub euler_characteristic: i64,
    pub expected_h0: usize,
    /// `d∘d = 0` for consecutive available operators.
    pub is_complex: bool,
    pub passed: bool,
}

impl SequenceReport {
    /// Alternating sum of the known cohomology dimensions, if all are known.
    pub fn cohomology_euler(&self) -> Option<i64> {
        let dims: Option<Vec<usize>> = self.cohomology.iter().copied().collect();
        dims.map(|h| euler_characteristic(&h))
    }
}

/// Assembles every operator on monomial bases and computes cohomology by
/// rank. Passes when `H^i = 0` for `i > 0` (where computable) and `dim H⁰`
/// equals the expected value; for `poly-conf-def` the unknown middle
/// cohomology is replaced by the requirement that `χ = dim H⁰`.
pub fn verify_polynomial_complex(
    name: SequenceName,
    r: u32,
    reversed: bool,
) -> Result<SequenceReport> {
    let bases = slot_bases(name, r, reversed);
    let dims: Vec<usize> = bases.iter().map(FormBasis::len).collect();
    let matrices: Vec<Option<LinearOp>> = name
        .ops()
        .iter()
        .enumerate()
        .map(|(i, op)| {
            op.map(|op| operator_matrix(op, &bases[i], &bases[i + 1]))
                .transpose()
        })
        .collect::<Result<_>>()?;
    let ranks: Vec<Option<usize>> = matrices
        .par_iter()
        .map(|m| m.as_ref().map(LinearOp::rank))
        .collect();
    let is_complex = matrices.windows(2).all(|w| match (&w[0], &w[1]) {
        (Some(a), Some(b)) => b.mul(a).is_zero(),
        _ => true,
    });
    let cohomology: Vec<Option<usize>> = (0..dims.len())
        .map(|i| {
            let out = if i < ranks.len() { ranks[i] } else { Some(0) };
            let inc = if i > 0 { ranks[i - 1] } else { Some(0) };
            Some(dims[i] - out? - inc?)
        })
        .collect();
    let chi = euler_characteristic(&dims);
    let expected_h0 = if r >= name.min_r() {
        name.expected_h0()
    } else {
        cohomology[0].unwrap_or(0)
    };
    let h0_ok = cohomology[0] == Some(expected_h0);
    let higher_ok = cohomology[1..].iter().all(|h| h.is_none_or(|h| h == 0));
    let unknown = cohomology.iter().any(Option::is_none);
    let chi_ok = !unknown || chi == expected_h0 as i64;
    Ok(SequenceReport {
        name: name.to_string(),
        r,
        dims,
        ranks,
        cohomology,
        euler_characteristic: chi,
        expected_h0,
        is_complex,
        passed: is_complex && h0_ok && higher_ok && chi_ok,
    })
}

/// Exact kernel basis of the first operator on its slot.
pub fn degree0_kernel_basis(name: SequenceName, r: u32) -> Result<Vec<PolyForm>> {
    let bases = slot_bases(name, r, false);
    let op = name.ops()[0].expect("first operator always available");
    let m = operator_matrix(op, &bases[0], &bases[1])?;
    let kernel = m.rank_kernel_image().kernel;
    Ok((0..kernel.ncols())
        .map(|j| bases[0].from_coords(&kernel.column(j)))
        .collect())
}

/// One CSV row per slot.
#[derive(Clone, Debug, Serialize)]
pub struct DimsRow {
    pub name: String,
    pub r: u32,
    pub slot: usize,
    pub dim: usize,
    pub rank_out: Option<usize>,
    pub cohomology: Option<usize>,
}

pub fn dims_rows(report: &SequenceReport) -> Vec<DimsRow> {
    (0..report.dims.len())
        .map(|slot| DimsRow {
            name: report.name.clone(),
            r: report.r,
            slot,
            dim: report.dims[slot],
            rank_out: if slot < report.ranks.len() {
                report.ranks[slot]
            } else {
                Some(0)
            },
            cohomology: report.cohomology[slot],
        })
        .collect()
}

/// CSV table with columns `name, r, slot, dim, rank_out, cohomology`.
pub fn dims_csv(reports: &[SequenceReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in reports.iter().flat_map(dims_rows) {
        w.serialize(row).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elasticity_dims_r4() {
        let rep = verify_polynomial_complex(SequenceName::PolyElast, 4, false).unwrap();
        assert_eq!(rep.dims, vec![105, 120, 24, 3]);
        assert_eq!(rep.euler_characteristic, 6);
        assert_eq!(rep.cohomology, vec![Some(6), Some(0), Some(0), Some(0)]);
        assert!(rep.passed);
    }

    #[test]
    fn conf_def_counts() {
        let rep = verify_polynomial_complex(SequenceName::PolyConfDef, 5, false).unwrap();
        assert_eq!(rep.dims, vec![168, 175, 20, 3]);
        assert_eq!(rep.euler_characteristic, 10);
        assert_eq!(rep.cohomology[0], Some(10));
        assert_eq!(rep.cohomology[3], Some(0));
        assert!(rep.passed);
    }

    #[test]
    fn csv_header() {
        let rep = verify_polynomial_complex(SequenceName::PolyHess, 4, false).unwrap();
        let csv = dims_csv(&[rep]);
        assert!(
            csv.starts_with("name,r,slot,dim,rank_out,cohomology\npoly-hess,4,0,35,31,4\n"),
            "{csv}"
        );
    }
}
