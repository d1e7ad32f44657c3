use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `x₁^e₁ ⋯ x_n^e_n`.
///
/// Ordered graded-lexicographically: lower total degree first, and within a
/// degree `x₁` outranks `x₂` outranks `x₃` (so `x₁² < x₁x₂ < x₂²`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, axis: usize) -> Self {
        let mut exps = vec![0; n];
        exps[axis] = 1;
        Monomial { exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `x_axis · self`.
    pub fn times_var(&self, axis: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[axis] += 1;
        Monomial { exps }
    }

    /// Power-rule derivative: `(e, x^{α-e_axis})`, or `None` when `e = 0`.
    pub fn derivative(&self, axis: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[axis];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[axis] -= 1;
        Some((e, Monomial { exps }))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisMode {
    /// ℋ_r: monomials of degree exactly r.
    Homogeneous,
    /// 𝒫_r: monomials of degree at most r.
    UpTo,
}

fn push_homogeneous(n: usize, r: u32, out: &mut Vec<Monomial>) {
    // Recursive enumeration with the first exponent descending gives the
    // graded-lex order within a degree directly.
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    rec(n, r, &mut Vec::with_capacity(n), out);
}

/// Monomial basis of ℋ_r or 𝒫_r in `n` variables, in graded-lex order.
pub fn monomial_basis(n: usize, r: u32, mode: BasisMode) -> Vec<Monomial> {
    assert!(n >= 1, "monomial_basis needs n >= 1");
    let mut out = Vec::new();
    match mode {
        BasisMode::Homogeneous => push_homogeneous(n, r, &mut out),
        BasisMode::UpTo => {
            for d in 0..=r {
                push_homogeneous(n, d, &mut out);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_stars_and_bars() {
        assert_eq!(monomial_basis(3, 2, BasisMode::Homogeneous).len(), 6);
        assert_eq!(monomial_basis(3, 4, BasisMode::UpTo).len(), 35);
        for n in 1..=4u64 {
            for r in 0..=6u64 {
                let h = monomial_basis(n as usize, r as u32, BasisMode::Homogeneous).len() as u64;
                let p = monomial_basis(n as usize, r as u32, BasisMode::UpTo).len() as u64;
                assert_eq!(h, binom(n + r - 1, r));
                assert_eq!(p, binom(n + r, r));
            }
        }
    }

    #[test]
    fn one_dimensional_up_to_four() {
        let b = monomial_basis(1, 4, BasisMode::UpTo);
        let exps: Vec<u32> = b.iter().map(|m| m.exponents()[0]).collect();
        assert_eq!(exps, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let b = monomial_basis(3, 5, BasisMode::UpTo);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        let h = monomial_basis(3, 2, BasisMode::Homogeneous);
        assert_eq!(h[0], Monomial::new(vec![2, 0, 0]));
        assert_eq!(h[1], Monomial::new(vec![1, 1, 0]));
        assert_eq!(h[5], Monomial::new(vec![0, 0, 2]));
    }
}
