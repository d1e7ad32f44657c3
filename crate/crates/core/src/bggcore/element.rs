use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::diagram::DiagramSpec;
use crate::error::{AlgebraError, FormatError, Result};
use crate::forms::{FormBasis, PolyForm, PolyFormJson};
use crate::ratpoly::{BasisMode, LinearOp, Rational};

/// Element of `Yⁱ = ⊕_j Λⁱ ⊗ W_j`: one polynomial form per diagram row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    degree: usize,
    comps: Vec<PolyForm>,
}

impl TwistedElement {
    pub fn zero(spec: &DiagramSpec, degree: usize) -> Self {
        let comps = spec
            .rows()
            .iter()
            .map(|w| PolyForm::zero(spec.n(), degree, *w))
            .collect();
        TwistedElement { degree, comps }
    }

    /// Builds an element from row components; all must share `n` and the
    /// form degree.
    pub fn from_components(comps: Vec<PolyForm>) -> Result<Self> {
        let first = comps
            .first()
            .ok_or_else(|| AlgebraError::ShapeMismatch("element needs at least one row".into()))?;
        let (n, k) = (first.n(), first.k());
        if comps.iter().any(|c| c.n() != n || c.k() != k) {
            return Err(AlgebraError::ShapeMismatch(
                "rows differ in n or form degree".into(),
            ));
        }
        Ok(TwistedElement { degree: k, comps })
    }

    /// Puts `u` into row `row` and zero elsewhere.
    pub fn in_row(spec: &DiagramSpec, row: usize, u: PolyForm) -> Result<Self> {
        let mut out = Self::zero(spec, u.k());
        let slot = out
            .comps
            .get_mut(row)
            .ok_or_else(|| AlgebraError::ShapeMismatch(format!("row {row} outside diagram")))?;
        if slot.value() != u.value() || slot.n() != u.n() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}-valued form in row {row}",
                u.value()
            )));
        }
        *slot = u;
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[PolyForm] {
        &self.comps
    }

    pub fn component(&self, row: usize) -> &PolyForm {
        &self.comps[row]
    }

    pub(crate) fn component_mut(&mut self, row: usize) -> &mut PolyForm {
        &mut self.comps[row]
    }

    pub fn into_components(self) -> Vec<PolyForm> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PolyForm::is_zero)
    }

    /// Rows with a nonzero component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.comps.len())
            .filter(|&j| !self.comps[j].is_zero())
            .collect()
    }

    /// Maximal coefficient degree over all rows.
    pub fn poly_degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(PolyForm::degree).max()
    }

    pub fn is_homogeneous_of(&self, r: u32) -> bool {
        self.comps.iter().all(|c| c.is_homogeneous_of(r))
    }

    /// Checks that the rows match the diagram.
    pub fn check_against(&self, spec: &DiagramSpec) -> Result<()> {
        if self.comps.len() != spec.rows().len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} rows for a diagram with {}",
                self.comps.len(),
                spec.rows().len()
            )));
        }
        if self.degree > spec.n() + 1 {
            return Err(AlgebraError::FormDegree {
                k: self.degree,
                reason: "exceeds n + 1",
            });
        }
        for (j, (c, w)) in self.comps.iter().zip(spec.rows()).enumerate() {
            if c.n() != spec.n() || c.value() != *w {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "row {j} holds {}-valued form, diagram expects {w}",
                    c.value()
                )));
            }
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&PolyForm, &PolyForm) -> Result<PolyForm>,
    ) -> Result<Self> {
        if self.comps.len() != other.comps.len() || self.degree != other.degree {
            return Err(AlgebraError::ShapeMismatch(
                "elements of different spaces".into(),
            ));
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(TwistedElement {
            degree: self.degree,
            comps,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, PolyForm::try_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, PolyForm::try_sub)
    }

    /// Panics on mismatched spaces.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("elements of the same space")
    }

    /// Panics on mismatched spaces.
    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("elements of the same space")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TwistedElement {
            degree: self.degree,
            comps: self.comps.iter().map(|u| u.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    /// Applies `f` to every row.
    pub fn map_rows(&self, f: impl Fn(&PolyForm) -> PolyForm) -> Self {
        let comps: Vec<PolyForm> = self.comps.iter().map(f).collect();
        let degree = comps.first().map_or(self.degree, PolyForm::k);
        TwistedElement { degree, comps }
    }

    pub fn at_origin(&self) -> Self {
        self.map_rows(PolyForm::at_origin)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<PolyFormJson> = self.comps.iter().map(PolyFormJson::from_form).collect();
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

impl fmt::Display for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.comps.iter().enumerate() {
            if j > 0 {
                write!(f, " | ")?;
            }
            write!(f, "[{j}] {c}")?;
        }
        Ok(())
    }
}

/// Upper bound on the number of rows in a decoded element.
pub const MAX_JSON_ROWS: usize = 8;

/// Decodes a JSON array of polynomial forms (one per row).
pub fn twisted_from_json(s: &str) -> Result<TwistedElement, FormatError> {
    #[derive(Deserialize, Serialize)]
    #[serde(transparent)]
    struct Rows(Vec<PolyFormJson>);
    let Rows(raw) = serde_json::from_str(s)?;
    if raw.is_empty() || raw.len() > MAX_JSON_ROWS {
        return Err(FormatError::Field {
            field: "rows",
            reason: format!("need 1..={MAX_JSON_ROWS} rows"),
        });
    }
    let comps = raw
        .iter()
        .map(PolyFormJson::to_form)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TwistedElement::from_components(comps)?)
}

/// Concatenated monomial basis of `Yⁱ` (row by row).
#[derive(Clone, Debug)]
pub struct ElementBasis {
    degree: usize,
    rows: Vec<FormBasis>,
    offsets: Vec<usize>,
}

impl ElementBasis {
    pub fn polynomial(spec: &DiagramSpec, degree: usize, r: i64, mode: BasisMode) -> Self {
        let rows = spec
            .rows()
            .iter()
            .map(|w| FormBasis::polynomial(spec.n(), degree, *w, r, mode))
            .collect();
        Self::from_rows(degree, rows)
    }

    /// Per-row polynomial degrees, e.g. for graded maps that shift degree by
    /// a different amount in each row. Negative entries give empty rows.
    pub fn with_row_degrees(spec: &DiagramSpec, degree: usize, r: &[i64], mode: BasisMode) -> Self {
        let rows = spec
            .rows()
            .iter()
            .zip(r)
            .map(|(w, &rj)| FormBasis::polynomial(spec.n(), degree, *w, rj, mode))
            .collect();
        Self::from_rows(degree, rows)
    }

    fn from_rows(degree: usize, rows: Vec<FormBasis>) -> Self {
        let mut offsets = vec![0];
        for b in &rows {
            offsets.push(offsets.last().copied().unwrap_or(0) + b.len());
        }
        ElementBasis {
            degree,
            rows,
            offsets,
        }
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn element(&self, idx: usize) -> TwistedElement {
        let row = self.offsets.partition_point(|&o| o <= idx) - 1;
        let comps = self
            .rows
            .iter()
            .enumerate()
            .map(|(j, b)| {
                if j == row {
                    b.element(idx - self.offsets[j])
                } else {
                    PolyForm::zero(b.n, b.k, b.value)
                }
            })
            .collect();
        TwistedElement {
            degree: self.degree,
            comps,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = TwistedElement> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn coords(&self, u: &TwistedElement) -> Result<Vec<(usize, Rational)>> {
        if u.comps.len() != self.rows.len() {
            return Err(AlgebraError::ShapeMismatch("row count".into()));
        }
        let mut out = Vec::new();
        for (j, (b, c)) in self.rows.iter().zip(&u.comps).enumerate() {
            out.extend(
                b.coords(c)?
                    .into_iter()
                    .map(|(i, v)| (i + self.offsets[j], v)),
            );
        }
        Ok(out)
    }

    pub fn from_coords(&self, coords: &[Rational]) -> TwistedElement {
        let comps = self
            .rows
            .iter()
            .enumerate()
            .map(|(j, b)| b.from_coords(&coords[self.offsets[j]..self.offsets[j + 1]]))
            .collect();
        TwistedElement {
            degree: self.degree,
            comps,
        }
    }

    /// Matrix of `op` from `self` to `target`.
    pub fn matrix_of(
        &self,
        target: &ElementBasis,
        op: impl Fn(&TwistedElement) -> Result<TwistedElement>,
    ) -> Result<LinearOp> {
        let mut entries = Vec::new();
        for col in 0..self.len() {
            for (i, v) in target.coords(&op(&self.element(col))?)? {
                if !v.is_zero() {
                    entries.push((i, col, v));
                }
            }
        }
        LinearOp::from_triplets(target.len(), self.len(), entries)
    }
}
