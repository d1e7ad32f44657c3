use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::FiniteComplex;
use super::conjugate::KFamily;
use crate::error::{AlgebraError, Result};
use crate::ratpoly::{int, LinearOp};

/// Seeded generator used by every random instance builder.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_int(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-2..=2)
}

/// Random invertible integer matrix `Q = U·Lᵀ·Π` (unit triangular factors and
/// a permutation) together with its exact inverse.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> (LinearOp, LinearOp) {
    let mut upper = LinearOp::identity(n);
    let mut lower = LinearOp::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            upper.set(i, j, int(small_int(rng)));
            lower.set(j, i, int(small_int(rng)));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = LinearOp::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p.set(i, j, int(1));
    }
    let q = upper.mul(&lower).mul(&p);
    let q_inv = q
        .inverse()
        .expect("product of unit triangular and permutation matrices");
    (q, q_inv)
}

/// Random symmetric positive definite Gram matrix `I + MᵀM`.
pub fn random_gram(rng: &mut ChaCha8Rng, n: usize) -> LinearOp {
    let mut m = LinearOp::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.4) {
                m.set(i, j, int(small_int(rng)));
            }
        }
    }
    LinearOp::identity(n).add(&m.transpose().mul(&m))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, nrows: usize, ncols: usize, density: f64) -> LinearOp {
    let mut m = LinearOp::zeros(nrows, ncols);
    for i in 0..nrows {
        for j in 0..ncols {
            if rng.gen_bool(density) {
                m.set(i, j, int(small_int(rng)));
            }
        }
    }
    m
}

/// Random complex whose ranks (and so cohomology) are fixed by construction.
#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub complex: FiniteComplex,
    pub ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
}

/// Direct sum of elementary pairs `ℚ → ℚ` (`ranks[i]` of them between `V^i`
/// and `V^{i+1}`) and trivial summands, in random bases.
pub fn random_complex_with_ranks(
    seed: u64,
    dims: &[usize],
    ranks: &[usize],
) -> Result<RandomComplex> {
    if dims.is_empty() || ranks.len() + 1 != dims.len() {
        return Err(AlgebraError::InvalidComplex("need one rank per map".into()));
    }
    let cohomology = (0..dims.len())
        .map(|i| {
            let used = ranks.get(i).copied().unwrap_or(0) + if i > 0 { ranks[i - 1] } else { 0 };
            dims[i]
                .checked_sub(used)
                .ok_or_else(|| AlgebraError::InvalidComplex(format!("ranks exceed dim V^{i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rng = seeded_rng(seed);
    // V^i = [image of d^{i−1} | harmonic | coimage of d^i]
    let d = (0..ranks.len())
        .map(|i| {
            let mut m = LinearOp::zeros(dims[i + 1], dims[i]);
            let coimage_start = dims[i] - ranks[i];
            for t in 0..ranks[i] {
                m.set(t, coimage_start + t, int(1));
            }
            m
        })
        .collect();
    let base = FiniteComplex::new(dims.to_vec(), d)?;
    let (q, q_inv): (Vec<_>, Vec<_>) = dims.iter().map(|&n| random_invertible(&mut rng, n)).unzip();
    let complex = base.change_basis(&q, &q_inv)?;
    Ok(RandomComplex {
        complex,
        ranks: ranks.to_vec(),
        cohomology,
    })
}

/// [`random_complex_with_ranks`] with ranks drawn from the seed.
pub fn random_complex(seed: u64, dims: &[usize]) -> Result<RandomComplex> {
    let mut rng = seeded_rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut ranks = Vec::with_capacity(dims.len().saturating_sub(1));
    for i in 0..dims.len().saturating_sub(1) {
        let used = if i > 0 { ranks[i - 1] } else { 0 };
        let max = (dims[i] - used).min(dims[i + 1]);
        ranks.push(rng.gen_range(0..=max));
    }
    random_complex_with_ranks(seed, dims, &ranks)
}

/// Random dimensions `1..=max_dim` for `len` spaces.
pub fn random_dims(rng: &mut ChaCha8Rng, len: usize, max_dim: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(1..=max_dim)).collect()
}

/// Random Gram matrices, one per space.
pub fn random_grams(rng: &mut ChaCha8Rng, dims: &[usize]) -> Vec<LinearOp> {
    dims.iter().map(|&n| random_gram(rng, n)).collect()
}

/// Random `Y^i: V^i → V^{i−2}` for [`super::homotopy::perturb_homotopy`].
pub fn random_perturbation(rng: &mut ChaCha8Rng, dims: &[usize]) -> Vec<LinearOp> {
    (2..dims.len())
        .map(|i| random_matrix(rng, dims[i - 2], dims[i], 0.3))
        .collect()
}

/// Two-row grid `Y = R₀ ⊕ R₁` of random complexes with `d = diag(d₀, d₁)`
/// and `K = (0, X; 0, 0)` for random `X: R₁ → R₀`. Then `S = dK − Kd` and
/// `K` both map row 1 into row 0, so `SK = KS = 0`.
pub fn random_grid(seed: u64, len: usize, max_dim: usize) -> Result<(FiniteComplex, KFamily)> {
    let mut rng = seeded_rng(seed);
    let dims0 = random_dims(&mut rng, len, max_dim);
    let dims1 = random_dims(&mut rng, len, max_dim);
    let r0 = random_complex(rng.gen(), &dims0)?.complex;
    let r1 = random_complex(rng.gen(), &dims1)?.complex;
    let dims: Vec<usize> = dims0.iter().zip(&dims1).map(|(a, b)| a + b).collect();
    let d = (0..len - 1)
        .map(|i| LinearOp::block_diag(&[&r0.d(i), &r1.d(i)]))
        .collect();
    let grid = FiniteComplex::new(dims.clone(), d)?;
    let k = (0..len)
        .map(|i| {
            let mut m = LinearOp::zeros(dims[i], dims[i]);
            m.put_block(
                0,
                dims0[i],
                &random_matrix(&mut rng, dims0[i], dims1[i], 0.5),
            );
            m
        })
        .collect();
    let k = KFamily::new(&grid, k)?;
    Ok((grid, k))
}
