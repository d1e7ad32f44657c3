use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, FormatError, Result};
use crate::ratpoly::{format_rational, parse_rational, LinearOp};

/// Finite cochain complex `V⁰ → V¹ → … → V^m` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    dims: Vec<usize>,
    d: Vec<LinearOp>,
}

impl FiniteComplex {
    /// `d[i]: V^i → V^{i+1}`; shapes must chain and `d∘d = 0`.
    pub fn new(dims: Vec<usize>, d: Vec<LinearOp>) -> Result<Self> {
        if dims.is_empty() || d.len() + 1 != dims.len() {
            return Err(AlgebraError::InvalidComplex(format!(
                "{} spaces need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                d.len()
            )));
        }
        for (i, m) in d.iter().enumerate() {
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(AlgebraError::InvalidComplex(format!(
                    "d^{i} has shape {:?}, expected {:?}",
                    m.shape(),
                    (dims[i + 1], dims[i])
                )));
            }
        }
        for i in 1..d.len() {
            if !d[i].mul(&d[i - 1]).is_zero() {
                return Err(AlgebraError::InvalidComplex(format!(
                    "d^{i}∘d^{} ≠ 0",
                    i - 1
                )));
            }
        }
        Ok(FiniteComplex { dims, d })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of spaces.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&n| n == 0)
    }

    /// `d^i: V^i → V^{i+1}`; the zero map out of the last space.
    pub fn d(&self, i: usize) -> LinearOp {
        self.d
            .get(i)
            .cloned()
            .unwrap_or_else(|| LinearOp::zeros(0, self.dims[i]))
    }

    pub fn maps(&self) -> &[LinearOp] {
        &self.d
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.d.iter().map(LinearOp::rank).collect()
    }

    /// `dim H^i = dim V^i − rank d^i − rank d^{i−1}`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(&self.dims)
    }

    /// Same complex in new bases: `d'^i = Q_{i+1} d^i Q_i⁻¹`.
    pub fn change_basis(&self, q: &[LinearOp], q_inv: &[LinearOp]) -> Result<Self> {
        let d = (0..self.d.len())
            .map(|i| q[i + 1].try_mul(&self.d[i])?.try_mul(&q_inv[i]))
            .collect::<Result<_>>()?;
        Self::new(self.dims.clone(), d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FiniteComplexJson::from_complex(self))
            .expect("plain data serializes")
    }
}

/// Alternating sum `Σ (−1)^i dims[i]`.
pub fn euler_characteristic(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Largest space dimension accepted by the decoder.
pub const MAX_JSON_SPACE_DIM: usize = 256;
/// Largest number of spaces accepted by the decoder.
pub const MAX_JSON_SPACES: usize = 32;

/// `{"dims": [..], "d": [[[row, col, "p/q"], ..], ..]}`
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteComplexJson {
    pub dims: Vec<usize>,
    pub d: Vec<Vec<(usize, usize, String)>>,
}

impl FiniteComplexJson {
    pub fn from_complex(c: &FiniteComplex) -> Self {
        let d =
            c.d.iter()
                .map(|m| {
                    m.entries()
                        .map(|(i, j, v)| (i, j, format_rational(v)))
                        .collect()
                })
                .collect();
        FiniteComplexJson {
            dims: c.dims.clone(),
            d,
        }
    }

    pub fn to_complex(&self) -> Result<FiniteComplex, FormatError> {
        let field = |field, reason: String| FormatError::Field { field, reason };
        if self.dims.is_empty() || self.dims.len() > MAX_JSON_SPACES {
            return Err(field("dims", format!("need 1..={MAX_JSON_SPACES} spaces")));
        }
        if self.dims.iter().any(|&n| n > MAX_JSON_SPACE_DIM) {
            return Err(field(
                "dims",
                format!("space dimension above {MAX_JSON_SPACE_DIM}"),
            ));
        }
        if self.d.len() + 1 != self.dims.len() {
            return Err(field("d", "one map per consecutive pair of spaces".into()));
        }
        let maps = self
            .d
            .iter()
            .enumerate()
            .map(|(i, entries)| {
                let triplets = entries
                    .iter()
                    .map(|(r, c, v)| Ok((*r, *c, parse_rational(v)?)))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                Ok(LinearOp::from_triplets(
                    self.dims[i + 1],
                    self.dims[i],
                    triplets,
                )?)
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(FiniteComplex::new(self.dims.clone(), maps)?)
    }
}

pub fn complex_from_json(s: &str) -> Result<FiniteComplex, FormatError> {
    let raw: FiniteComplexJson = serde_json::from_str(s)?;
    raw.to_complex()
}
