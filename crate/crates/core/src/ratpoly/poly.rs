use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::rational::{format_rational, Rational};
use crate::error::{AlgebraError, Result};

/// Sparse polynomial in `n` variables over ℚ. Zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn var(n: usize, axis: usize) -> Self {
        Self::term(Monomial::var(n, axis), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let n = m.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { n, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            if m.dim() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: m.dim(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous_of(&self, r: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == r)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        assert_eq!(self.n, other.n, "polynomial dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.mul(mb), a * b);
            }
        }
        Ok(out)
    }

    /// `x_axis · self`.
    pub fn times_var(&self, axis: usize) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times_var(axis), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative `∂/∂x_axis` (axis is 0-based).
    pub fn partial_derivative(&self, axis: usize) -> Result<Poly> {
        if axis >= self.n {
            return Err(AlgebraError::AxisOutOfRange { axis, n: self.n });
        }
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(axis) {
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Partial derivative for internal callers that already validated `axis`.
    pub(crate) fn d(&self, axis: usize) -> Poly {
        self.partial_derivative(axis)
            .expect("axis checked by caller")
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Poly::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Value at the origin (the constant term).
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{}", format_rational(c))?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn mono(e: [u32; 3], c: Rational) -> Poly {
        Poly::term(Monomial::new(e.to_vec()), c)
    }

    #[test]
    fn arithmetic_examples() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        assert_eq!(&a + &b, x(0).scale(&int(2)));
        assert_eq!(&x(0) * &x(0), mono([2, 0, 0], int(1)));

        // (x1 + 1)(x1 - 1), expanded by hand: x1^2 - 1
        let one = Poly::one(3);
        let lhs = &(&x(0) + &one) * &(&x(0) - &one);
        let expected = &mono([2, 0, 0], int(1)) - &one;
        assert_eq!(lhs, expected);
        assert_eq!(lhs.degree(), Some(2));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert!(matches!(
            a.try_add(&b),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
        assert!(a.try_mul(&b).is_err());
        assert!(a.partial_derivative(2).is_err());
    }

    #[test]
    fn derivative_examples() {
        let p = mono([2, 1, 0], int(1));
        assert_eq!(p.partial_derivative(0).unwrap(), mono([1, 1, 0], int(2)));
        assert!(x(0).partial_derivative(1).unwrap().is_zero());
        // term-wise power rule on x1 x2 x3^2
        let q = mono([1, 1, 2], int(1));
        assert_eq!(q.partial_derivative(2).unwrap(), mono([1, 1, 1], int(2)));
    }

    #[test]
    fn homogeneous_split() {
        let p = &mono([2, 0, 0], int(1)) + &x(1);
        let parts = p.homogeneous_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2], mono([2, 0, 0], int(1)));
        assert_eq!(parts[&1], x(1));
        assert!(Poly::zero(3).homogeneous_components().is_empty());

        let one = Poly::one(3);
        let s = &x(0) + &one;
        let sq = &s * &s;
        let parts = sq.homogeneous_components();
        assert_eq!(parts[&0], one);
        assert_eq!(parts[&1], x(0).scale(&int(2)));
        assert_eq!(parts[&2], mono([2, 0, 0], int(1)));
    }

    #[test]
    fn evaluation() {
        let p = &mono([2, 0, 0], rat(1, 2)) + &Poly::constant(3, int(5));
        assert_eq!(p.eval(&[int(2), int(0), int(1)]), int(7));
        assert_eq!(p.constant_term(), int(5));
    }
}
