use num_traits::{One, Zero};

use super::form::{form_indices, FormIndex, PolyForm};
use super::value::{ValueSpace, ValueTag};
use crate::error::{AlgebraError, Result};
use crate::ratpoly::{Poly, Rational};

/// Scalar, vector or matrix field with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProxyField {
    Scalar(Poly),
    Vector(Vec<Poly>),
    /// Row-major; `m[a][c]`.
    Matrix(Vec<Vec<Poly>>),
}

impl ProxyField {
    pub fn zero_vector(n: usize) -> Self {
        ProxyField::Vector(vec![Poly::zero(n); n])
    }

    pub fn zero_matrix(n: usize) -> Self {
        ProxyField::Matrix(vec![vec![Poly::zero(n); n]; n])
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ProxyField::Scalar(p) => p.is_zero(),
            ProxyField::Vector(v) => v.iter().all(Poly::is_zero),
            ProxyField::Matrix(m) => m.iter().flatten().all(Poly::is_zero),
        }
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vec<Poly> {
        match self {
            ProxyField::Scalar(p) => vec![p.clone()],
            ProxyField::Vector(v) => v.clone(),
            ProxyField::Matrix(m) => m.iter().flatten().cloned().collect(),
        }
    }

    /// Field of the same kind as `self` filled from row-major entries.
    pub fn reshape_like(&self, flat: Vec<Poly>) -> Result<ProxyField> {
        let want = self.flatten().len();
        if flat.len() != want {
            return Err(AlgebraError::DimensionMismatch {
                expected: want,
                found: flat.len(),
            });
        }
        Ok(match self {
            ProxyField::Scalar(_) => {
                ProxyField::Scalar(flat.into_iter().next().expect("one entry"))
            }
            ProxyField::Vector(_) => ProxyField::Vector(flat),
            ProxyField::Matrix(m) => {
                ProxyField::Matrix(flat.chunks(m.len()).map(<[Poly]>::to_vec).collect())
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProxyField::Scalar(_) => "scalar",
            ProxyField::Vector(_) => "vector",
            ProxyField::Matrix(_) => "matrix",
        }
    }
}

/// Identification of `Λᵏ(ℝⁿ)` with ℝ (scalar) or ℝⁿ (vector): each basis
/// form `dx_I` goes to `sign · e_slot`.
#[derive(Clone, Debug)]
struct FormProxy {
    vector: bool,
    map: Vec<(FormIndex, usize, i64)>,
}

fn form_proxy(n: usize, k: usize) -> Result<FormProxy> {
    if !(1..=3).contains(&n) {
        return Err(AlgebraError::Unsupported(format!(
            "proxy identification for n = {n}"
        )));
    }
    if k > n {
        return Err(AlgebraError::FormDegree {
            k,
            reason: "exceeds ambient dimension",
        });
    }
    let map = if k == 0 || k == n {
        vec![(form_indices(n, k).remove(0), 0, 1)]
    } else if k == 1 {
        (0..n).map(|i| (vec![i], i, 1)).collect()
    } else {
        // n = 3, k = 2: dx2∧dx3 ↦ e1, dx3∧dx1 ↦ e2, dx1∧dx2 ↦ e3
        vec![(vec![1, 2], 0, 1), (vec![0, 2], 1, -1), (vec![0, 1], 2, 1)]
    };
    Ok(FormProxy {
        vector: !(k == 0 || k == n),
        map,
    })
}

fn ambient_coeffs(u: &PolyForm, index: &FormIndex) -> Vec<Poly> {
    let value = u.value();
    let basis = value.basis();
    let mut out = vec![Poly::zero(u.n()); value.ambient_dim()];
    for (a, b) in basis.iter().enumerate() {
        let p = u.coeff(index, a);
        if p.is_zero() {
            continue;
        }
        for (slot, c) in b.iter().enumerate() {
            if !c.is_zero() {
                out[slot].add_scaled(&p, c);
            }
        }
    }
    out
}

/// Vector/matrix proxy of a polynomial form (row index = value, column index
/// = form component for vector-valued 1-forms).
pub fn form_to_proxy(u: &PolyForm) -> Result<ProxyField> {
    let n = u.n();
    let fp = form_proxy(n, u.k())?;
    let value = u.value();
    let amb = value.ambient();
    let signed = |index: &FormIndex, sign: i64| -> Vec<Poly> {
        let s = Rational::from_integer(sign.into());
        ambient_coeffs(u, index)
            .iter()
            .map(|p| p.scale(&s))
            .collect()
    };
    match (fp.vector, amb.tag) {
        (false, ValueTag::R) => {
            let (i, _, s) = &fp.map[0];
            Ok(ProxyField::Scalar(signed(i, *s).remove(0)))
        }
        (false, ValueTag::V) => {
            let (i, _, s) = &fp.map[0];
            Ok(ProxyField::Vector(signed(i, *s)))
        }
        (false, _) => {
            let (i, _, s) = &fp.map[0];
            let flat = signed(i, *s);
            Ok(ProxyField::Matrix(
                flat.chunks(n).map(<[Poly]>::to_vec).collect(),
            ))
        }
        (true, ValueTag::R) => {
            let mut v = vec![Poly::zero(n); n];
            for (i, slot, s) in &fp.map {
                v[*slot] = signed(i, *s).remove(0);
            }
            Ok(ProxyField::Vector(v))
        }
        (true, ValueTag::V) => {
            let mut m = vec![vec![Poly::zero(n); n]; n];
            for (i, c, s) in &fp.map {
                for (a, p) in signed(i, *s).into_iter().enumerate() {
                    m[a][*c] = p;
                }
            }
            Ok(ProxyField::Matrix(m))
        }
        (true, _) => Err(AlgebraError::Unsupported(format!(
            "proxy of a {}-form with values in {value}",
            u.k()
        ))),
    }
}

/// Inverse of [`form_to_proxy`]; fails when the field does not lie in the
/// requested value space.
pub fn proxy_to_form(
    field: &ProxyField,
    n: usize,
    k: usize,
    value: ValueSpace,
) -> Result<PolyForm> {
    let fp = form_proxy(n, k)?;
    let amb = value.ambient();
    let mut u = PolyForm::try_zero(n, k, value)?;
    // ambient coefficient vectors per form index
    let mut per_index: Vec<(FormIndex, i64, Vec<Poly>)> = Vec::new();
    let shape_err = || {
        AlgebraError::ShapeMismatch(format!(
            "{} field for {k}-form with values in {value}",
            field.kind()
        ))
    };
    match (fp.vector, amb.tag, field) {
        (false, ValueTag::R, ProxyField::Scalar(p)) => {
            let (i, _, s) = fp.map[0].clone();
            per_index.push((i, s, vec![p.clone()]));
        }
        (false, ValueTag::V, ProxyField::Vector(v)) if v.len() == n => {
            let (i, _, s) = fp.map[0].clone();
            per_index.push((i, s, v.clone()));
        }
        (false, ValueTag::M, ProxyField::Matrix(m))
            if m.len() == n && m.iter().all(|r| r.len() == n) =>
        {
            let (i, _, s) = fp.map[0].clone();
            per_index.push((i, s, m.iter().flatten().cloned().collect()));
        }
        (true, ValueTag::R, ProxyField::Vector(v)) if v.len() == n => {
            for (i, slot, s) in fp.map {
                per_index.push((i, s, vec![v[slot].clone()]));
            }
        }
        (true, ValueTag::V, ProxyField::Matrix(m))
            if m.len() == n && m.iter().all(|r| r.len() == n) =>
        {
            for (i, c, s) in fp.map {
                per_index.push((i, s, m.iter().map(|row| row[c].clone()).collect()));
            }
        }
        _ => return Err(shape_err()),
    }
    let coord = value.coordinate_map();
    let basis = value.basis();
    for (index, sign, amb_coeffs) in per_index {
        if amb_coeffs.iter().any(|p| p.dim() != n) {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: amb_coeffs[0].dim(),
            });
        }
        let s = Rational::from_integer(sign.into());
        let mut coeffs = vec![Poly::zero(n); value.dim()];
        for (a, c) in coeffs.iter_mut().enumerate() {
            for (slot, p) in amb_coeffs.iter().enumerate() {
                let w = coord.get(a, slot);
                if !w.is_zero() {
                    c.add_scaled(p, &(&w * &s));
                }
            }
        }
        // membership: reconstruct and compare
        for (slot, p) in amb_coeffs.iter().enumerate() {
            let mut back = Poly::zero(n);
            for (a, c) in coeffs.iter().enumerate() {
                back.add_scaled(c, &basis[a][slot]);
            }
            if back.scale(&s) != *p {
                return Err(AlgebraError::NotInSubspace(value.to_string()));
            }
        }
        for (a, c) in coeffs.into_iter().enumerate() {
            u.add_coeff(index.clone(), a, &c);
        }
    }
    Ok(u)
}

/// Sign with which `dx_j ∧ dx_I` equals `± dx_{I ∪ {j}}`, or `None` if
/// `j ∈ I`.
pub(crate) fn wedge_sign(j: usize, index: &[usize]) -> Option<(FormIndex, Rational)> {
    if index.contains(&j) {
        return None;
    }
    let before = index.iter().filter(|&&i| i < j).count();
    let mut out = index.to_vec();
    out.insert(before, j);
    let s = if before % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Some((out, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::int;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn scalar_one_form() {
        let r = ValueSpace::new(ValueTag::R, 3);
        let mut u = PolyForm::zero(3, 1, r);
        u.add_coeff(vec![1], 0, &x(0));
        let z = Poly::zero(3);
        assert_eq!(
            form_to_proxy(&u).unwrap(),
            ProxyField::Vector(vec![z.clone(), x(0), z])
        );
    }

    #[test]
    fn two_form_hodge_pairing() {
        let r = ValueSpace::new(ValueTag::R, 3);
        let mut u = PolyForm::zero(3, 2, r);
        u.add_coeff(vec![0, 1], 0, &Poly::one(3));
        let z = Poly::zero(3);
        assert_eq!(
            form_to_proxy(&u).unwrap(),
            ProxyField::Vector(vec![z.clone(), z, Poly::one(3)])
        );
        let back = proxy_to_form(&form_to_proxy(&u).unwrap(), 3, 2, r).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn vector_valued_zero_form() {
        let v = ValueSpace::new(ValueTag::V, 3);
        let mut u = PolyForm::zero(3, 0, v);
        u.add_coeff(vec![], 0, &x(1));
        let z = Poly::zero(3);
        assert_eq!(
            form_to_proxy(&u).unwrap(),
            ProxyField::Vector(vec![x(1), z.clone(), z])
        );
    }

    #[test]
    fn symmetric_membership_enforced() {
        let s = ValueSpace::new(ValueTag::S, 3);
        let mut m = vec![vec![Poly::zero(3); 3]; 3];
        m[0][1] = Poly::constant(3, int(1));
        assert!(matches!(
            proxy_to_form(&ProxyField::Matrix(m.clone()), 3, 0, s),
            Err(AlgebraError::NotInSubspace(_))
        ));
        m[1][0] = Poly::constant(3, int(1));
        let u = proxy_to_form(&ProxyField::Matrix(m.clone()), 3, 0, s).unwrap();
        assert_eq!(form_to_proxy(&u).unwrap(), ProxyField::Matrix(m));
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0, &[1]).unwrap().1, int(1));
        assert_eq!(wedge_sign(2, &[0, 1]).unwrap(), (vec![0, 1, 2], int(1)));
        assert_eq!(wedge_sign(1, &[0, 2]).unwrap(), (vec![0, 1, 2], int(-1)));
        assert!(wedge_sign(1, &[1]).is_none());
    }
}
