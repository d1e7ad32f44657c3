use rand::Rng;

use super::complex::FiniteComplex;
use super::homotopy::HomotopySet;
use super::random::{
    random_complex, random_complex_with_ranks, random_dims, random_invertible, seeded_rng,
};
use crate::error::{AlgebraError, Result};
use crate::ratpoly::LinearOp;

/// Cochain maps `A: U → Y`, `B: Y → U` and `G: Y^i → Y^{i−1}` with
/// `BA = I`, `AB = I − dG − Gd`, `GA = 0`, `BG = 0`: the finite-dimensional
/// shape of a BGG reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub big: FiniteComplex,
    pub small: FiniteComplex,
    pub a: Vec<LinearOp>,
    pub b: Vec<LinearOp>,
    /// `g[i − 1] = G^i`
    pub g: Vec<LinearOp>,
}

impl Reduction {
    /// Checks every defining identity.
    pub fn is_valid(&self) -> bool {
        let (y, u) = (&self.big, &self.small);
        let len = y.len();
        (0..len).all(|i| {
            let ab = self.a[i].mul(&self.b[i]);
            let mut homotopic = LinearOp::identity(y.dims()[i]).sub(&ab);
            if i > 0 {
                homotopic = homotopic.sub(&y.d(i - 1).mul(&self.g[i - 1]));
            }
            if i + 1 < len {
                homotopic = homotopic.sub(&self.g[i].mul(&y.d(i)));
            }
            let chain = i + 1 >= len
                || (y.d(i).mul(&self.a[i]) == self.a[i + 1].mul(&u.d(i))
                    && u.d(i).mul(&self.b[i]) == self.b[i + 1].mul(&y.d(i)));
            let side = i == 0
                || (self.g[i - 1].mul(&self.a[i]).is_zero()
                    && self.b[i - 1].mul(&self.g[i - 1]).is_zero());
            self.b[i].mul(&self.a[i]).is_identity() && homotopic.is_zero() && chain && side
        })
    }

    /// `𝒫^i = B^{i−1}P^iA^i` and `𝓛^i = B^iL^iA^i`.
    pub fn reduce(&self, h: &HomotopySet) -> Result<HomotopySet> {
        let len = self.big.len();
        if h.ls().len() != len {
            return Err(AlgebraError::ShapeMismatch(
                "homotopy does not match the complex".into(),
            ));
        }
        let p = (1..len)
            .map(|i| self.b[i - 1].mul(&h.p(i)).mul(&self.a[i]))
            .collect();
        let l = (0..len)
            .map(|i| self.b[i].mul(h.l(i)).mul(&self.a[i]))
            .collect();
        HomotopySet::new(&self.small, p, l)
    }
}

/// `Y = U ⊕ E` in random bases, with `E` a sum of elementary exact pairs
/// carrying the contracting homotopy `G`.
pub fn random_reduction(seed: u64, len: usize, max_dim: usize) -> Result<Reduction> {
    let mut rng = seeded_rng(seed);
    let u_dims = random_dims(&mut rng, len, max_dim);
    let small = random_complex(rng.gen(), &u_dims)?.complex;
    // exact E: pairs between consecutive degrees
    let mut e_ranks = Vec::with_capacity(len - 1);
    for _ in 0..len - 1 {
        e_ranks.push(rng.gen_range(0..=2usize));
    }
    let e_dims: Vec<usize> = (0..len)
        .map(|i| e_ranks.get(i).copied().unwrap_or(0) + if i > 0 { e_ranks[i - 1] } else { 0 })
        .collect();
    let exact = random_complex_with_ranks(rng.gen(), &e_dims, &e_ranks)?.complex;
    let h_e = super::homotopy::harmonic_homotopy(&exact, None)?;

    let dims: Vec<usize> = u_dims.iter().zip(&e_dims).map(|(a, b)| a + b).collect();
    let (q, q_inv): (Vec<_>, Vec<_>) = dims.iter().map(|&n| random_invertible(&mut rng, n)).unzip();
    let d = (0..len - 1)
        .map(|i| LinearOp::block_diag(&[&small.d(i), &exact.d(i)]))
        .collect();
    let big = FiniteComplex::new(dims.clone(), d)?.change_basis(&q, &q_inv)?;

    let a = (0..len)
        .map(|i| {
            let mut inc = LinearOp::zeros(dims[i], u_dims[i]);
            inc.put_block(0, 0, &LinearOp::identity(u_dims[i]));
            q[i].mul(&inc)
        })
        .collect();
    let b = (0..len)
        .map(|i| {
            let mut proj = LinearOp::zeros(u_dims[i], dims[i]);
            proj.put_block(0, 0, &LinearOp::identity(u_dims[i]));
            proj.mul(&q_inv[i])
        })
        .collect();
    let g = (1..len)
        .map(|i| {
            let mut gi = LinearOp::zeros(dims[i - 1], dims[i]);
            gi.put_block(u_dims[i - 1], u_dims[i], &h_e.p(i));
            q[i - 1].mul(&gi).mul(&q_inv[i])
        })
        .collect();
    Ok(Reduction {
        big,
        small,
        a,
        b,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_reductions_are_valid() {
        for seed in 0..10 {
            assert!(
                random_reduction(seed, 4, 3).unwrap().is_valid(),
                "seed {seed}"
            );
        }
    }
}
