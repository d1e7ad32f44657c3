use rand::Rng;
use rayon::prelude::*;

use super::complex::FiniteComplex;
use super::conjugate::conjugate_by_exp_k;
use super::homotopy::{
    check_homotopy, check_modified, harmonic_homotopy, hat_modification, modify_hat_tilde,
    perturb_homotopy, subcomplex_from_l, HomotopySet,
};
use super::random::{
    random_complex, random_dims, random_grams, random_grid, random_perturbation, seeded_rng,
};
use super::reduction::random_reduction;
use crate::error::Result;
use crate::report::{CheckReport, SuiteReport};

/// Sizes of the generated instances.
#[derive(Clone, Copy, Debug)]
pub struct InstanceShape {
    pub len: usize,
    pub max_dim: usize,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape { len: 5, max_dim: 4 }
    }
}

/// Harmonic homotopy for a random Gram, then perturbed so that `P∘P ≠ 0`.
fn random_homotopy(seed: u64, c: &FiniteComplex) -> Result<HomotopySet> {
    let mut rng = seeded_rng(seed);
    let grams = random_grams(&mut rng, c.dims());
    let h = harmonic_homotopy(c, Some(&grams))?;
    perturb_homotopy(c, &h, &random_perturbation(&mut rng, c.dims()))
}

fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// Modification postconditions for `(c, h)`: same `L`, relation kept,
/// `LP̃ = P̃L = 0`, `P̃² = 0`, `dP̃ = dP̂` and `P̃d = P̂d`.
fn modification_holds(c: &FiniteComplex, h: &HomotopySet) -> Result<bool> {
    let hat = hat_modification(c, h)?;
    let tilde = modify_hat_tilde(c, h)?;
    let same_l = tilde.ls() == h.ls();
    let relation = all_pass(&check_homotopy(c, &tilde)?);
    let post = all_pass(&check_modified(c, &tilde));
    let intermediate = (1..c.len()).all(|i| {
        let d_left = c.d(i - 1);
        let left = d_left.mul(&tilde.p(i)) == d_left.mul(&hat.p(i));
        let right = i + 1 >= c.len() || tilde.p(i + 1).mul(&c.d(i)) == hat.p(i + 1).mul(&c.d(i));
        left && right
    });
    Ok(same_l && relation && post && intermediate)
}

struct Outcome {
    homotopy: bool,
    subcomplex: bool,
    conjugation: bool,
    modify: bool,
    modify_commutes: bool,
    transport: bool,
}

fn run_instance(seed: u64, shape: InstanceShape) -> Result<Outcome> {
    let mut rng = seeded_rng(seed);
    let dims = random_dims(&mut rng, shape.len, shape.max_dim);
    let rc = random_complex(rng.gen(), &dims)?;
    let c = &rc.complex;
    let h = random_homotopy(rng.gen(), c)?;

    let homotopy = all_pass(&check_homotopy(c, &h)?);
    let sub = subcomplex_from_l(c, &h)?;
    let subcomplex = sub.equal && sub.full_cohomology == rc.cohomology;

    // conjugation through exp(K) on a two-row grid
    let (grid, k) = random_grid(rng.gen(), shape.len, shape.max_dim.div_ceil(2))?;
    let hg = random_homotopy(rng.gen(), &grid)?;
    let conj = conjugate_by_exp_k(&grid, &k, &hg)?;
    let tw = &conj.twisted;
    let conjugation = conj.intertwines
        && all_pass(&check_homotopy(tw, &conj.homotopy)?)
        && (0..grid.len()).all(|i| conj.homotopy.l(i).rank() == hg.l(i).rank())
        && (0..grid.len().saturating_sub(1)).all(|i| {
            let l = conj.homotopy.l(i);
            tw.d(i).mul(l).is_zero() && conj.homotopy.l(i + 1).mul(&tw.d(i)).is_zero()
        });

    let modify = modification_holds(c, &h)?;
    // modify before or after conjugating: both families have the same verified properties
    let before = conjugate_by_exp_k(&grid, &k, &modify_hat_tilde(&grid, &hg)?)?;
    let modify_commutes = all_pass(&check_homotopy(tw, &before.homotopy)?)
        && all_pass(&check_modified(tw, &before.homotopy))
        && modification_holds(tw, &conj.homotopy)?;

    // idempotent L survives a reduction B·L·A
    let red = random_reduction(rng.gen(), shape.len, shape.max_dim)?;
    let hy = random_homotopy(rng.gen(), &red.big)?;
    let reduced = red.reduce(&hy)?;
    let transport = red.is_valid()
        && all_pass(&check_homotopy(&red.small, &reduced)?)
        && reduced.ls().iter().all(|l| l.mul(l) == *l)
        && modification_holds(&red.small, &reduced)?;

    Ok(Outcome {
        homotopy,
        subcomplex,
        conjugation,
        modify,
        modify_commutes,
        transport,
    })
}

/// Runs every finite-dimensional identity on `count` seeded instances
/// starting at `seed`.
pub fn abstract_suite(seed: u64, count: usize, shape: InstanceShape) -> SuiteReport {
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    let outcomes: Vec<Result<Outcome>> =
        seeds.par_iter().map(|&s| run_instance(s, shape)).collect();
    let names = [
        "dP + Pd = I − L and dL = Ld",
        "cohomology of ran L equals cohomology of V (and the constructed ranks)",
        "F d F⁻¹ = d − S; d_V P_V + P_V d_V = I − L_V; rank L_V = rank L; d_V L_V = L_V d_V = 0",
        "P̃ keeps L and the relation; LP̃ = P̃L = 0; P̃² = 0; dP̃ = dP̂; P̃d = P̂d",
        "modification before and after conjugation give valid families",
        "reduction B·(P, L)·A keeps the relation and L² = L",
    ];
    let mut checks: Vec<CheckReport> = names.iter().map(|n| CheckReport::new(*n)).collect();
    for (s, out) in seeds.iter().zip(outcomes) {
        let flags = match out {
            Ok(o) => [
                o.homotopy,
                o.subcomplex,
                o.conjugation,
                o.modify,
                o.modify_commutes,
                o.transport,
            ],
            Err(e) => {
                for c in &mut checks {
                    c.record(false, || format!("seed {s}: {e}"));
                }
                continue;
            }
        };
        for (c, ok) in checks.iter_mut().zip(flags) {
            c.record(ok, || format!("seed {s}"));
        }
    }
    SuiteReport::new("abstract", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let suite = abstract_suite(0, 12, InstanceShape::default());
        assert!(suite.passed, "{:?}", suite.first_failure());
    }
}
