use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use super::value::{ValueMap, ValueSpace};
use crate::error::{AlgebraError, Result};
use crate::ratpoly::{monomial_basis, BasisMode, LinearOp, Monomial, Poly, Rational};

/// Strictly increasing 0-based index set `I` of `dx_I`.
pub type FormIndex = Vec<usize>;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn form_indices(n: usize, k: usize) -> Vec<FormIndex> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<FormIndex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Alternating `k`-form on ℝⁿ with polynomial coefficients valued in a
/// [`ValueSpace`]: `Σ_{I,a} p_{I,a}(x) dx_I ⊗ b_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    n: usize,
    k: usize,
    value: ValueSpace,
    coeff: BTreeMap<(FormIndex, usize), Poly>,
}

impl PolyForm {
    /// `k` may be `n + 1`, in which case the form is necessarily zero.
    pub fn zero(n: usize, k: usize, value: ValueSpace) -> Self {
        assert!(k <= n + 1, "form degree {k} exceeds n + 1 = {}", n + 1);
        assert_eq!(
            value.n, n,
            "value space dimension differs from form dimension"
        );
        PolyForm {
            n,
            k,
            value,
            coeff: BTreeMap::new(),
        }
    }

    /// Validating constructor used by decoders.
    pub fn try_zero(n: usize, k: usize, value: ValueSpace) -> Result<Self> {
        if k > n {
            return Err(AlgebraError::FormDegree {
                k,
                reason: "exceeds ambient dimension",
            });
        }
        if value.n != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: value.n,
            });
        }
        Ok(Self::zero(n, k, value))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn value(&self) -> ValueSpace {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(FormIndex, usize), &Poly)> {
        self.coeff.iter()
    }

    pub fn coeff(&self, index: &[usize], a: usize) -> Poly {
        self.coeff
            .get(&(index.to_vec(), a))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n))
    }

    /// Adds `p` to the coefficient of `dx_I ⊗ b_a`, validating the slot.
    pub fn try_add_coeff(&mut self, index: FormIndex, a: usize, p: &Poly) -> Result<()> {
        if p.dim() != self.n {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                found: p.dim(),
            });
        }
        if index.len() != self.k {
            return Err(AlgebraError::FormDegree {
                k: index.len(),
                reason: "index set size differs from form degree",
            });
        }
        if index.windows(2).any(|w| w[0] >= w[1]) || index.iter().any(|&i| i >= self.n) {
            return Err(AlgebraError::Unsupported(format!(
                "form index {index:?} not strictly increasing in 0..{}",
                self.n
            )));
        }
        if a >= self.value.dim() {
            return Err(AlgebraError::Unsupported(format!(
                "value index {a} ≥ dim {}",
                self.value.dim()
            )));
        }
        self.add_coeff(index, a, p);
        Ok(())
    }

    pub(crate) fn add_coeff(&mut self, index: FormIndex, a: usize, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let key = (index, a);
        let sum = match self.coeff.get(&key) {
            Some(q) => q + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.coeff.remove(&key);
        } else {
            self.coeff.insert(key, sum);
        }
    }

    /// Adds `c · x^m` to the coefficient of `dx_I ⊗ b_a`.
    pub(crate) fn add_term(&mut self, index: FormIndex, a: usize, m: Monomial, c: Rational) {
        self.add_coeff(index, a, &Poly::term(m, c));
    }

    fn check_same_space(&self, other: &PolyForm) -> Result<()> {
        if self.n != other.n || self.k != other.k || self.value != other.value {
            return Err(AlgebraError::ShapeMismatch(format!(
                "form ({}, k={}, {}) vs ({}, k={}, {})",
                self.n, self.k, self.value, other.n, other.k, other.value
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for ((i, a), p) in &other.coeff {
            out.add_coeff(i.clone(), *a, p);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PolyForm) -> Result<PolyForm> {
        self.try_add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        self.try_add(other).expect("form spaces differ")
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.try_sub(other).expect("form spaces differ")
    }

    pub fn scale(&self, c: &Rational) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.k, self.value);
        if c.is_zero() {
            return out;
        }
        out.coeff = self
            .coeff
            .iter()
            .map(|(key, p)| (key.clone(), p.scale(c)))
            .collect();
        out
    }

    /// Maximal coefficient degree, `None` for the zero form.
    pub fn degree(&self) -> Option<u32> {
        self.coeff.values().filter_map(Poly::degree).max()
    }

    /// All coefficients homogeneous of degree `r` (vacuous for zero).
    pub fn is_homogeneous_of(&self, r: u32) -> bool {
        self.coeff.values().all(|p| p.is_homogeneous_of(r))
    }

    /// Applies a value-space map pointwise.
    pub fn map_values(&self, map: &ValueMap) -> Result<PolyForm> {
        if map.source != self.value {
            return Err(AlgebraError::ShapeMismatch(format!(
                "value map from {} applied to {}-valued form",
                map.source, self.value
            )));
        }
        let mut out = PolyForm::zero(self.n, self.k, map.target);
        for ((i, a), p) in &self.coeff {
            for b in 0..map.target.dim() {
                let c = map.matrix.get(b, *a);
                if !c.is_zero() {
                    out.add_coeff(i.clone(), b, &p.scale(&c));
                }
            }
        }
        Ok(out)
    }

    /// Orthogonal pointwise projection onto another value space sharing the
    /// same ambient space.
    pub fn project_values(&self, target: ValueSpace) -> Result<PolyForm> {
        let m = self.value.projection_to(target)?;
        self.map_values(&ValueMap::new(self.value, target, m)?)
    }

    /// Evaluates all coefficients at the origin, keeping the form structure.
    pub fn at_origin(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.k, self.value);
        for ((i, a), p) in &self.coeff {
            out.add_coeff(i.clone(), *a, &Poly::constant(self.n, p.constant_term()));
        }
        out
    }

    /// Iterates `(I, a, monomial, coefficient)` over all stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (&FormIndex, usize, &Monomial, &Rational)> {
        self.coeff
            .iter()
            .flat_map(|((i, a), p)| p.terms().map(move |(m, c)| (i, *a, m, c)))
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((i, a), p)) in self.coeff.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let dx: Vec<String> = i.iter().map(|j| format!("dx{}", j + 1)).collect();
            let dx = if dx.is_empty() {
                "1".to_string()
            } else {
                dx.join("^")
            };
            write!(f, "({p}) {dx} b{a}")?;
        }
        Ok(())
    }
}

/// Enumerated monomial basis of `𝒫_r Λ^k ⊗ W` (or `ℋ_r`), ordered by
/// `(form index, value index)` slot first and monomial second.
#[derive(Clone, Debug)]
pub struct FormBasis {
    pub n: usize,
    pub k: usize,
    pub value: ValueSpace,
    monos: Vec<Monomial>,
    mono_pos: HashMap<Monomial, usize>,
    slots: Vec<(FormIndex, usize)>,
    slot_pos: HashMap<(FormIndex, usize), usize>,
}

impl FormBasis {
    pub fn new(n: usize, k: usize, value: ValueSpace, monos: Vec<Monomial>) -> Self {
        let mono_pos = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let slots: Vec<(FormIndex, usize)> = form_indices(n, k)
            .into_iter()
            .flat_map(|i| (0..value.dim()).map(move |a| (i.clone(), a)))
            .collect();
        let slot_pos = slots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        FormBasis {
            n,
            k,
            value,
            monos,
            mono_pos,
            slots,
            slot_pos,
        }
    }

    /// Basis of coefficient degree ≤ `r` (`UpTo`) or exactly `r`
    /// (`Homogeneous`). A negative `r` gives the zero space.
    pub fn polynomial(n: usize, k: usize, value: ValueSpace, r: i64, mode: BasisMode) -> Self {
        let monos = if r < 0 {
            Vec::new()
        } else {
            monomial_basis(n, r as u32, mode)
        };
        Self::new(n, k, value, monos)
    }

    pub fn len(&self) -> usize {
        self.monos.len() * self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    /// Reverses the monomial order (used to check order independence).
    pub fn reversed(&self) -> Self {
        let mut m = self.monos.clone();
        m.reverse();
        Self::new(self.n, self.k, self.value, m)
    }

    pub fn element(&self, idx: usize) -> PolyForm {
        let nm = self.monos.len();
        let (slot, a) = self.slots[idx / nm].clone();
        let mut f = PolyForm::zero(self.n, self.k, self.value);
        f.add_term(
            slot,
            a,
            self.monos[idx % nm].clone(),
            Rational::from_integer(1.into()),
        );
        f
    }

    pub fn elements(&self) -> impl Iterator<Item = PolyForm> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    /// Coordinates of `f`; fails if `f` has a term outside the span.
    pub fn coords(&self, f: &PolyForm) -> Result<Vec<(usize, Rational)>> {
        if f.n != self.n || f.k != self.k || f.value != self.value {
            return Err(AlgebraError::ShapeMismatch(format!(
                "form (k={}, {}) in basis (k={}, {})",
                f.k, f.value, self.k, self.value
            )));
        }
        let nm = self.monos.len();
        let mut out = Vec::with_capacity(f.coeff.len());
        for (i, a, m, c) in f.terms() {
            let s = self.slot_pos[&(i.clone(), a)];
            let p = *self
                .mono_pos
                .get(m)
                .ok_or_else(|| AlgebraError::NotInSubspace(format!("monomial {m}")))?;
            out.push((s * nm + p, c.clone()));
        }
        Ok(out)
    }

    pub fn contains(&self, f: &PolyForm) -> bool {
        self.coords(f).is_ok()
    }

    pub fn from_coords(&self, coords: &[Rational]) -> PolyForm {
        assert_eq!(coords.len(), self.len());
        let nm = self.monos.len();
        let mut f = PolyForm::zero(self.n, self.k, self.value);
        for (idx, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let (slot, a) = self.slots[idx / nm].clone();
                f.add_term(slot, a, self.monos[idx % nm].clone(), c.clone());
            }
        }
        f
    }

    /// Matrix of `op` from `self` to `target`.
    pub fn matrix_of(
        &self,
        target: &FormBasis,
        op: impl Fn(&PolyForm) -> PolyForm,
    ) -> Result<LinearOp> {
        let mut entries = Vec::new();
        for j in 0..self.len() {
            for (i, v) in target.coords(&op(&self.element(j)))? {
                entries.push((i, j, v));
            }
        }
        LinearOp::from_triplets(target.len(), self.len(), entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::ValueTag;

    #[test]
    fn index_sets() {
        assert_eq!(form_indices(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(form_indices(3, 0), vec![Vec::<usize>::new()]);
        assert!(form_indices(3, 4).is_empty());
    }

    #[test]
    fn basis_round_trip() {
        let s = ValueSpace::new(ValueTag::S, 3);
        let b = FormBasis::polynomial(3, 1, s, 2, BasisMode::UpTo);
        assert_eq!(b.len(), 10 * 3 * 6);
        for j in [0, 7, 55, b.len() - 1] {
            let e = b.element(j);
            assert_eq!(
                b.coords(&e).unwrap(),
                vec![(j, Rational::from_integer(1.into()))]
            );
        }
        let mut v = vec![Rational::zero(); b.len()];
        v[3] = Rational::new(3.into(), 2.into());
        v[100] = Rational::from_integer((-1).into());
        let f = b.from_coords(&v);
        let back = b.coords(&f).unwrap();
        assert_eq!(back.len(), 2);
    }
}
