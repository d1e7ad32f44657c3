use super::complex::FiniteComplex;
use super::homotopy::HomotopySet;
use crate::error::{AlgebraError, Result};
use crate::ratpoly::{LinearOp, Rational};

/// Nilpotent operators `K^i: Y^i → Y^i` on a complex `(Y, d)` such that
/// `S = dK − Kd` commutes with `K`. Then `F = exp(K)` is an isomorphism
/// from `(Y, d)` onto `(Y, d − S)`.
#[derive(Clone, Debug)]
pub struct KFamily {
    k: Vec<LinearOp>,
    /// `s[i]: Y^i → Y^{i+1}`
    s: Vec<LinearOp>,
}

fn nilpotency_index(k: &LinearOp) -> Option<usize> {
    let mut power = LinearOp::identity(k.nrows());
    for m in 0..=k.nrows() {
        if power.is_zero() {
            return Some(m);
        }
        power = power.mul(k);
    }
    None
}

impl KFamily {
    pub fn new(c: &FiniteComplex, k: Vec<LinearOp>) -> Result<Self> {
        if k.len() != c.len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} K operators for {} spaces",
                k.len(),
                c.len()
            )));
        }
        for (i, ki) in k.iter().enumerate() {
            if ki.shape() != (c.dims()[i], c.dims()[i]) {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "K^{i} has shape {:?}",
                    ki.shape()
                )));
            }
            if nilpotency_index(ki).is_none() {
                return Err(AlgebraError::Precondition(format!(
                    "K^{i} is not nilpotent"
                )));
            }
        }
        let s: Vec<LinearOp> = (0..c.len().saturating_sub(1))
            .map(|i| c.d(i).mul(&k[i]).sub(&k[i + 1].mul(&c.d(i))))
            .collect();
        for (i, si) in s.iter().enumerate() {
            if si.mul(&k[i]) != k[i + 1].mul(si) {
                return Err(AlgebraError::Precondition(format!(
                    "S^{i}K^{i} ≠ K^{}S^{i}",
                    i + 1
                )));
            }
        }
        Ok(KFamily { k, s })
    }

    pub fn k(&self, i: usize) -> &LinearOp {
        &self.k[i]
    }

    /// `S^i = d^iK^i − K^{i+1}d^i`.
    pub fn s(&self, i: usize) -> &LinearOp {
        &self.s[i]
    }

    /// `exp(±K^i)`, a finite sum.
    pub fn exp(&self, i: usize, negative: bool) -> LinearOp {
        let k = if negative {
            self.k[i].scale(&-Rational::from_integer(1.into()))
        } else {
            self.k[i].clone()
        };
        let mut term = LinearOp::identity(k.nrows());
        let mut acc = term.clone();
        let mut m = 1i64;
        while !term.is_zero() {
            term = term.mul(&k).scale(&Rational::new(1.into(), m.into()));
            acc = acc.add(&term);
            m += 1;
        }
        acc
    }

    /// The twisted complex `(Y, d − S)`.
    pub fn twisted(&self, c: &FiniteComplex) -> Result<FiniteComplex> {
        let d = (0..c.len().saturating_sub(1))
            .map(|i| c.d(i).sub(&self.s[i]))
            .collect();
        FiniteComplex::new(c.dims().to_vec(), d)
    }
}

/// Transport of a homotopy through `F = exp(K)`.
#[derive(Clone, Debug)]
pub struct Conjugated {
    pub twisted: FiniteComplex,
    /// `P_V^i = F^{i−1} P^i (F^i)⁻¹`, `L_V^i = F^i L^i (F^i)⁻¹`
    pub homotopy: HomotopySet,
    /// `F^{i+1} d^i (F^i)⁻¹ = d^i − S^i` in every degree
    pub intertwines: bool,
}

/// Conjugates `(P, L)` for `(Y, d)` into `(P_V, L_V)` for `(Y, d − S)`.
pub fn conjugate_by_exp_k(c: &FiniteComplex, k: &KFamily, h: &HomotopySet) -> Result<Conjugated> {
    let twisted = k.twisted(c)?;
    let f: Vec<LinearOp> = (0..c.len()).map(|i| k.exp(i, false)).collect();
    let f_inv: Vec<LinearOp> = (0..c.len()).map(|i| k.exp(i, true)).collect();
    let intertwines = (0..c.len().saturating_sub(1))
        .all(|i| f[i + 1].mul(&c.d(i)).mul(&f_inv[i]) == twisted.d(i));
    let p = (1..c.len())
        .map(|i| f[i - 1].mul(&h.p(i)).mul(&f_inv[i]))
        .collect();
    let l = (0..c.len())
        .map(|i| f[i].mul(h.l(i)).mul(&f_inv[i]))
        .collect();
    let homotopy = HomotopySet::new(&twisted, p, l)?;
    Ok(Conjugated {
        twisted,
        homotopy,
        intertwines,
    })
}
