use crate::error::{AlgebraError, Result};
use crate::forms::{wedge_sign, PolyForm};
use crate::ratpoly::{Poly, Rational};

/// The Euler vector field `E(x) = x` on ℝⁿ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerField {
    pub n: usize,
}

impl EulerField {
    pub fn component(&self, i: usize) -> Poly {
        Poly::var(self.n, i)
    }
}

/// Exterior derivative, applied coefficient-wise in the value space.
/// An `n`-form maps to the (empty) zero form of degree `n + 1`.
pub fn exterior_d(u: &PolyForm) -> PolyForm {
    let n = u.n();
    let k = (u.k() + 1).min(n + 1);
    let mut out = PolyForm::zero(n, k, u.value());
    if u.k() >= n {
        return out;
    }
    for ((index, a), p) in u.coeffs() {
        for j in 0..n {
            if let Some((idx, sign)) = wedge_sign(j, index) {
                let dp = p.d(j);
                if !dp.is_zero() {
                    out.add_coeff(idx, *a, &dp.scale(&sign));
                }
            }
        }
    }
    out
}

/// Contraction with the Euler field in the first slot:
/// `i_E(dx_{i₁}∧…∧dx_{i_k}) = Σ_p (−1)^p x_{i_p} dx_{I∖i_p}`.
pub fn interior_euler(u: &PolyForm) -> Result<PolyForm> {
    if u.k() == 0 {
        return Err(AlgebraError::FormDegree {
            k: 0,
            reason: "interior product needs k ≥ 1",
        });
    }
    let n = u.n();
    let mut out = PolyForm::zero(n, u.k() - 1, u.value());
    if u.k() > n {
        return Ok(out);
    }
    for ((index, a), p) in u.coeffs() {
        for (pos, &i) in index.iter().enumerate() {
            let mut rest = index.clone();
            rest.remove(pos);
            let q = p.times_var(i);
            let q = if pos % 2 == 0 { q } else { -&q };
            out.add_coeff(rest, *a, &q);
        }
    }
    Ok(out)
}

/// Base-point-zero Poincaré operator: on each homogeneous coefficient
/// component of degree `r`, `u_r ↦ i_E(u_r) / (r + k)`.
pub fn koszul_poincare(u: &PolyForm) -> Result<PolyForm> {
    let k = u.k();
    if k == 0 {
        return Err(AlgebraError::FormDegree {
            k: 0,
            reason: "Poincaré operator needs k ≥ 1",
        });
    }
    let n = u.n();
    let mut out = PolyForm::zero(n, k - 1, u.value());
    if k > n {
        return Ok(out);
    }
    for (index, a, m, c) in u.terms() {
        let w = Rational::new(1.into(), (m.degree() as i64 + k as i64).into());
        let coef = c * w;
        for (pos, &i) in index.iter().enumerate() {
            let mut rest = index.clone();
            rest.remove(pos);
            let sign = if pos % 2 == 0 {
                coef.clone()
            } else {
                -coef.clone()
            };
            out.add_coeff(rest, a, &Poly::term(m.times_var(i), sign));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{ValueSpace, ValueTag};
    use crate::ratpoly::{int, rat};

    fn r3() -> ValueSpace {
        ValueSpace::new(ValueTag::R, 3)
    }

    fn form(k: usize, terms: &[(&[usize], Poly)]) -> PolyForm {
        let mut u = PolyForm::zero(3, k, r3());
        for (i, p) in terms {
            u.add_coeff(i.to_vec(), 0, p);
        }
        u
    }

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn d_examples() {
        assert_eq!(
            exterior_d(&form(0, &[(&[], x(0))])),
            form(1, &[(&[0], Poly::one(3))])
        );
        assert_eq!(
            exterior_d(&form(1, &[(&[1], x(0))])),
            form(2, &[(&[0, 1], Poly::one(3))])
        );
        assert!(exterior_d(&form(2, &[(&[0, 1], Poly::one(3))])).is_zero());
        let top = exterior_d(&form(3, &[(&[0, 1, 2], x(0))]));
        assert_eq!(top.k(), 4);
        assert!(top.is_zero());
    }

    #[test]
    fn interior_examples() {
        assert_eq!(
            interior_euler(&form(1, &[(&[0], Poly::one(3))])).unwrap(),
            form(0, &[(&[], x(0))])
        );
        let e12 = form(2, &[(&[0, 1], Poly::one(3))]);
        let expected = form(1, &[(&[1], x(0)), (&[0], -&x(1))]);
        assert_eq!(interior_euler(&e12).unwrap(), expected);
        assert!(interior_euler(&form(0, &[])).is_err());
    }

    #[test]
    fn koszul_on_constants() {
        assert_eq!(
            koszul_poincare(&form(1, &[(&[0], Poly::one(3))])).unwrap(),
            form(0, &[(&[], x(0))])
        );
        // proxy (0,0,1) two-form is dx1∧dx2; ∫₀¹ t (e3 × x) dt = ½(−x2, x1, 0)
        let p = koszul_poincare(&form(2, &[(&[0, 1], Poly::one(3))])).unwrap();
        let expected = form(
            1,
            &[
                (&[0], x(1).scale(&rat(-1, 2))),
                (&[1], x(0).scale(&rat(1, 2))),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn degree_zero_contract() {
        let u = form(0, &[(&[], &(&x(0) * &x(0)) + &Poly::constant(3, int(5)))]);
        let pd = koszul_poincare(&exterior_d(&u)).unwrap();
        assert_eq!(pd, form(0, &[(&[], &x(0) * &x(0))]));
    }
}
