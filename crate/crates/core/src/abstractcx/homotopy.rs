use serde::Serialize;

use super::complex::FiniteComplex;
use crate::error::{AlgebraError, Result};
use crate::ratpoly::LinearOp;
use crate::report::CheckReport;

/// Operators `P^i: V^i → V^{i−1}` (`i ≥ 1`) and `L^i: V^i → V^i` meant to
/// satisfy `d^{i−1}P^i + P^{i+1}d^i = I − L^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopySet {
    /// `p[i − 1] = P^i`
    p: Vec<LinearOp>,
    l: Vec<LinearOp>,
}

impl HomotopySet {
    /// `p[i − 1] = P^i` for `i = 1..len`; `l[i] = L^i`. Shapes are checked
    /// against `c`; the relation itself is not.
    pub fn new(c: &FiniteComplex, p: Vec<LinearOp>, l: Vec<LinearOp>) -> Result<Self> {
        let dims = c.dims();
        if p.len() + 1 != dims.len() || l.len() != dims.len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} P and {} L operators for {} spaces",
                p.len(),
                l.len(),
                dims.len()
            )));
        }
        for (k, m) in p.iter().enumerate() {
            if m.shape() != (dims[k], dims[k + 1]) {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "P^{} has shape {:?}",
                    k + 1,
                    m.shape()
                )));
            }
        }
        for (i, m) in l.iter().enumerate() {
            if m.shape() != (dims[i], dims[i]) {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "L^{i} has shape {:?}",
                    m.shape()
                )));
            }
        }
        Ok(HomotopySet { p, l })
    }

    /// Takes `L = I − dP − Pd`, so the relation holds by definition.
    pub fn from_p(c: &FiniteComplex, p: Vec<LinearOp>) -> Result<Self> {
        let zeros = c.dims().iter().map(|&n| LinearOp::zeros(n, n)).collect();
        let h = Self::new(c, p, zeros)?;
        let l = (0..c.len())
            .map(|i| LinearOp::identity(c.dims()[i]).sub(&h.dp_plus_pd(c, i)))
            .collect();
        Ok(HomotopySet { l, ..h })
    }

    /// `P^i`; the zero map `V^0 → 0` for `i = 0`.
    pub fn p(&self, i: usize) -> LinearOp {
        if i == 0 {
            let n = self.l[0].ncols();
            return LinearOp::zeros(0, n);
        }
        self.p[i - 1].clone()
    }

    pub fn l(&self, i: usize) -> &LinearOp {
        &self.l[i]
    }

    pub fn ps(&self) -> &[LinearOp] {
        &self.p
    }

    pub fn ls(&self) -> &[LinearOp] {
        &self.l
    }

    /// `d^{i−1}P^i + P^{i+1}d^i`, with absent terms omitted.
    pub fn dp_plus_pd(&self, c: &FiniteComplex, i: usize) -> LinearOp {
        let n = c.dims()[i];
        let mut out = LinearOp::zeros(n, n);
        if i > 0 {
            out = out.add(&c.d(i - 1).mul(&self.p[i - 1]));
        }
        if i + 1 < c.len() {
            out = out.add(&self.p[i].mul(&c.d(i)));
        }
        out
    }

    fn check_shapes(&self, c: &FiniteComplex) -> Result<()> {
        Self::new(c, self.p.clone(), self.l.clone()).map(|_| ())
    }
}

/// Checks `dP + Pd = I − L` in every degree and the consequence
/// `d^i L^i = L^{i+1} d^i`.
pub fn check_homotopy(c: &FiniteComplex, h: &HomotopySet) -> Result<[CheckReport; 2]> {
    h.check_shapes(c)?;
    let mut relation = CheckReport::new("d^{i−1}P^i + P^{i+1}d^i = I − L^i");
    let mut commutes = CheckReport::new("d^i L^i = L^{i+1} d^i");
    for i in 0..c.len() {
        let lhs = h.dp_plus_pd(c, i);
        let rhs = LinearOp::identity(c.dims()[i]).sub(h.l(i));
        relation.record(lhs == rhs, || format!("degree {i}"));
        if i + 1 < c.len() {
            commutes.record(c.d(i).mul(h.l(i)) == h.l(i + 1).mul(&c.d(i)), || {
                format!("degree {i}")
            });
        }
    }
    Ok([relation, commutes])
}

fn relation_holds(c: &FiniteComplex, h: &HomotopySet) -> Result<bool> {
    Ok(check_homotopy(c, h)?[0].passed)
}

/// Homotopy from pseudo-inverses: `P^i = (d^{i−1})⁺` for the inner products
/// with Gram matrices `grams` (Euclidean if `None`). `L` is then the
/// orthogonal projector onto the harmonic space `ker d ∩ (ran d)^⊥`, so
/// `dL = Ld = 0`, `L² = L`, `P∘P = 0` and `LP = PL = 0`.
pub fn harmonic_homotopy(c: &FiniteComplex, grams: Option<&[LinearOp]>) -> Result<HomotopySet> {
    let p = (1..c.len())
        .map(|i| {
            let d = c.d(i - 1);
            match grams {
                Some(g) => d.pseudo_inverse_with(Some(&g[i - 1]), Some(&g[i])),
                None => Ok(d.pseudo_inverse()),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    HomotopySet::from_p(c, p)
}

/// `P'^i = P^i + d^{i−2}Y^i − Y^{i+1}d^i` for `Y^i: V^i → V^{i−2}`
/// (`y[i − 2] = Y^i`); leaves `dP + Pd` unchanged.
pub fn perturb_homotopy(c: &FiniteComplex, h: &HomotopySet, y: &[LinearOp]) -> Result<HomotopySet> {
    let m = c.len();
    let y_at = |i: usize| -> Option<&LinearOp> {
        if i >= 2 {
            y.get(i - 2)
        } else {
            None
        }
    };
    let mut p = Vec::with_capacity(m - 1);
    for i in 1..m {
        let mut pi = h.p(i);
        if let Some(yi) = y_at(i) {
            pi = pi.try_add(&c.d(i - 2).try_mul(yi)?)?;
        }
        if i + 1 < m {
            if let Some(yn) = y_at(i + 1) {
                pi = pi.try_sub(&yn.try_mul(&c.d(i))?)?;
            }
        }
        p.push(pi);
    }
    HomotopySet::new(c, p, h.ls().to_vec())
}

/// `W^k = ran L^k` with the induced differential, and the cohomology
/// dimensions of `W` and `V`.
#[derive(Clone, Debug, Serialize)]
pub struct SubcomplexReport {
    #[serde(skip)]
    pub sub: FiniteComplex,
    pub sub_dims: Vec<usize>,
    pub sub_cohomology: Vec<usize>,
    pub full_cohomology: Vec<usize>,
    pub equal: bool,
}

/// Restricts `d` to the images of `L`. Requires the homotopy relation (and
/// with it `dL = Ld`).
pub fn subcomplex_from_l(c: &FiniteComplex, h: &HomotopySet) -> Result<SubcomplexReport> {
    let [relation, commutes] = check_homotopy(c, h)?;
    if !relation.passed || !commutes.passed {
        return Err(AlgebraError::Precondition("dP + Pd = I − L fails".into()));
    }
    let bases: Vec<LinearOp> = (0..c.len())
        .map(|i| h.l(i).rank_kernel_image().image)
        .collect();
    let mut maps = Vec::new();
    for i in 0..c.len().saturating_sub(1) {
        // coordinates of d(B_i) in B_{i+1}
        let image = c.d(i).mul(&bases[i]);
        let b = &bases[i + 1];
        let coords = if b.ncols() == 0 {
            LinearOp::zeros(0, image.ncols())
        } else {
            let bt = b.transpose();
            bt.mul(b).inverse()?.mul(&bt).mul(&image)
        };
        if b.mul(&coords) != image {
            return Err(AlgebraError::NotInSubspace(format!(
                "d(ran L^{i}) ⊄ ran L^{}",
                i + 1
            )));
        }
        maps.push(coords);
    }
    let sub_dims: Vec<usize> = bases.iter().map(LinearOp::ncols).collect();
    let sub = FiniteComplex::new(sub_dims.clone(), maps)?;
    let sub_cohomology = sub.cohomology_dims();
    let full_cohomology = c.cohomology_dims();
    let equal = sub_cohomology == full_cohomology;
    Ok(SubcomplexReport {
        sub,
        sub_dims,
        sub_cohomology,
        full_cohomology,
        equal,
    })
}

/// `P̂^i = P^i − P^iL^i − L^{i−1}P^i + L^{i−1}P^iL^i`.
pub fn hat_modification(c: &FiniteComplex, h: &HomotopySet) -> Result<HomotopySet> {
    h.check_shapes(c)?;
    let p = (1..c.len())
        .map(|i| {
            let p = h.p(i);
            let (l_src, l_tgt) = (h.l(i), h.l(i - 1));
            p.sub(&p.mul(l_src))
                .sub(&l_tgt.mul(&p))
                .add(&l_tgt.mul(&p).mul(l_src))
        })
        .collect();
    HomotopySet::new(c, p, h.ls().to_vec())
}

/// `P̃^i = P^i − d^{i−2}P^{i−1}P^i` (`P̃^1 = P^1`).
pub fn tilde_modification(c: &FiniteComplex, h: &HomotopySet) -> Result<HomotopySet> {
    h.check_shapes(c)?;
    let p = (1..c.len())
        .map(|i| {
            let p = h.p(i);
            if i < 2 {
                p
            } else {
                p.sub(&c.d(i - 2).mul(&h.p(i - 1)).mul(&h.p(i)))
            }
        })
        .collect();
    HomotopySet::new(c, p, h.ls().to_vec())
}

/// [`tilde_modification`] of [`hat_modification`]. Requires the homotopy
/// relation, `dL = Ld = 0` and `L² = L`; the result keeps `L` and satisfies
/// `LP̃ = P̃L = 0` and `P̃∘P̃ = 0`.
pub fn modify_hat_tilde(c: &FiniteComplex, h: &HomotopySet) -> Result<HomotopySet> {
    if !relation_holds(c, h)? {
        return Err(AlgebraError::Precondition("dP + Pd = I − L fails".into()));
    }
    for i in 0..c.len() {
        let l = h.l(i);
        if l.mul(l) != *l {
            return Err(AlgebraError::Precondition(format!(
                "L^{i} is not idempotent"
            )));
        }
        if i + 1 < c.len() && (!c.d(i).mul(l).is_zero() || !h.l(i + 1).mul(&c.d(i)).is_zero()) {
            return Err(AlgebraError::Precondition(format!(
                "dL or Ld nonzero in degree {i}"
            )));
        }
    }
    tilde_modification(c, &hat_modification(c, h)?)
}

/// `P^{i−1}∘P^i = 0` and `L^{i−1}P^i = P^iL^i = 0` in every degree.
pub fn check_modified(c: &FiniteComplex, h: &HomotopySet) -> [CheckReport; 2] {
    let mut square = CheckReport::new("P^{i−1}∘P^i = 0");
    let mut orth = CheckReport::new("L^{i−1}P^i = P^iL^i = 0");
    for i in 1..c.len() {
        let p = h.p(i);
        if i >= 2 {
            square.record(h.p(i - 1).mul(&p).is_zero(), || format!("degree {i}"));
        }
        orth.record(
            h.l(i - 1).mul(&p).is_zero() && p.mul(h.l(i)).is_zero(),
            || format!("degree {i}"),
        );
    }
    [square, orth]
}
