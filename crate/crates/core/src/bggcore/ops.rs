use super::diagram::{CoeffOp, DiagramSpec};
use super::element::TwistedElement;
use crate::derham::{exterior_d, koszul_poincare};
use crate::error::{AlgebraError, Result};

/// Twisted and BGG operators of a diagram. All maps act on polynomial
/// elements exactly; `P` is the row-wise Koszul operator.
impl DiagramSpec {
    fn check(&self, u: &TwistedElement, min_degree: usize, max_degree: usize) -> Result<()> {
        u.check_against(self)?;
        if u.degree() < min_degree || u.degree() > max_degree {
            return Err(AlgebraError::FormDegree {
                k: u.degree(),
                reason: "outside the degrees where this operator is defined",
            });
        }
        Ok(())
    }

    fn apply_pointwise(
        &self,
        op: &CoeffOp,
        u: &TwistedElement,
        out_degree: usize,
    ) -> TwistedElement {
        let mut out = TwistedElement::zero(self, out_degree);
        for (j, c) in u.components().iter().enumerate() {
            for ((idx, a), p) in c.coeffs() {
                let g = self.global_slot(u.degree(), j, idx, *a);
                for (g2, v) in &op.columns[g] {
                    let (row, idx2, a2) = self.slot_of(out_degree, *g2);
                    out.component_mut(*row)
                        .add_coeff(idx2.clone(), *a2, &p.scale(v));
                }
            }
        }
        out
    }

    // Unchecked building blocks.

    fn d_raw(&self, u: &TwistedElement) -> TwistedElement {
        u.map_rows(exterior_d)
    }

    fn p_raw(&self, u: &TwistedElement) -> TwistedElement {
        u.map_rows(|c| koszul_poincare(c).expect("degree ≥ 1"))
    }

    fn s_raw(&self, u: &TwistedElement) -> TwistedElement {
        self.apply_pointwise(self.s_op(u.degree()), u, u.degree() + 1)
    }

    fn t_raw(&self, u: &TwistedElement) -> TwistedElement {
        self.apply_pointwise(self.t_op(u.degree()), u, u.degree() - 1)
    }

    fn pi_raw(&self, u: &TwistedElement) -> TwistedElement {
        self.apply_pointwise(self.pi_op(u.degree()), u, u.degree())
    }

    fn dv_raw(&self, u: &TwistedElement) -> TwistedElement {
        self.d_raw(u).sub(&self.s_raw(u))
    }

    fn ps_raw(&self, u: &TwistedElement) -> TwistedElement {
        self.p_raw(&self.s_raw(u))
    }

    fn f_raw(&self, u: &TwistedElement) -> TwistedElement {
        let mut term = u.clone();
        let mut acc = u.clone();
        for _ in 0..self.depth() {
            term = self.ps_raw(&term);
            acc = acc.add(&term);
        }
        acc
    }

    fn f_inv_raw(&self, u: &TwistedElement) -> TwistedElement {
        u.sub(&self.ps_raw(u))
    }

    fn pv_raw(&self, u: &TwistedElement) -> TwistedElement {
        self.f_raw(&self.p_raw(&self.f_inv_raw(u)))
    }

    fn g_raw(&self, u: &TwistedElement) -> TwistedElement {
        let mut term = self.t_raw(u);
        let mut acc = term.clone();
        for _ in 0..self.depth() {
            term = self.t_raw(&self.d_raw(&term));
            acc = acc.add(&term);
        }
        acc.neg()
    }

    fn a_raw(&self, u: &TwistedElement) -> TwistedElement {
        u.sub(&self.g_raw(&self.dv_raw(u)))
    }

    fn b_raw(&self, u: &TwistedElement) -> TwistedElement {
        if u.degree() == 0 {
            return self.pi_raw(u);
        }
        self.pi_raw(&u.sub(&self.dv_raw(&self.g_raw(u))))
    }

    // Public, validated operators.

    /// Row-wise exterior derivative.
    pub fn exterior_d(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(self.d_raw(u))
    }

    /// Row-wise Koszul operator.
    pub fn koszul(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 1, self.n())?;
        Ok(self.p_raw(u))
    }

    /// Pointwise `S: Yⁱ → Y^{i+1}`.
    pub fn s_apply(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(self.s_raw(u))
    }

    /// Pointwise pseudo-inverse `T: Yⁱ → Y^{i−1}` of `S`.
    pub fn t_apply(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 1, self.n())?;
        Ok(self.t_raw(u))
    }

    /// Pointwise projection `I − ST − TS` onto `Υⁱ`.
    pub fn proj_upsilon(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(self.pi_raw(u))
    }

    /// `d_V = d − S`.
    pub fn twisted_d(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(self.dv_raw(u))
    }

    /// `F = Σ_l (PS)^l` (forward) or `F⁻¹ = I − PS` (inverse).
    pub fn f_iso(&self, u: &TwistedElement, inverse: bool) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(if inverse {
            self.f_inv_raw(u)
        } else {
            self.f_raw(u)
        })
    }

    /// `P_Vⁱ = F^{i−1} Pⁱ (Fⁱ)⁻¹`.
    pub fn twisted_poincare(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 1, self.n())?;
        Ok(self.pv_raw(u))
    }

    /// `Gⁱ = −Σ_k (T d)^k T`.
    pub fn g_apply(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 1, self.n())?;
        Ok(self.g_raw(u))
    }

    /// `Aⁱ = I − G^{i+1} d_V`.
    pub fn a_map(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(self.a_raw(u))
    }

    /// `Bⁱ = Π_Υ (I − d_V Gⁱ)`, `B⁰ = Π_Υ`.
    pub fn b_map(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(self.b_raw(u))
    }

    /// BGG differential `𝒟 = Π_Υ d_V A`.
    pub fn bgg_d(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 0, self.n())?;
        Ok(self.pi_raw(&self.dv_raw(&self.a_raw(u))))
    }

    /// BGG Poincaré operator `𝒫ⁱ = B^{i−1} P_Vⁱ Aⁱ`.
    pub fn bgg_poincare(&self, u: &TwistedElement) -> Result<TwistedElement> {
        self.check(u, 1, self.n())?;
        Ok(self.b_raw(&self.pv_raw(&self.a_raw(u))))
    }

    /// Whether `u` lies in `Υ` (is fixed by the projection).
    pub fn in_upsilon(&self, u: &TwistedElement) -> Result<bool> {
        self.check(u, 0, self.n())?;
        Ok(self.pi_raw(u) == *u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bggcore::BuiltinDiagram;
    use crate::forms::PolyForm;
    use crate::ratpoly::{rat, Monomial, Poly};

    fn oned() -> DiagramSpec {
        DiagramSpec::builtin(BuiltinDiagram::OneD)
    }

    fn x_pow(r: u32) -> Poly {
        Poly::term(Monomial::new(vec![r]), rat(1, 1))
    }

    fn scalar_row(spec: &DiagramSpec, k: usize, row: usize, p: Poly) -> TwistedElement {
        let mut f = PolyForm::zero(1, k, spec.rows()[row]);
        let idx = if k == 0 { vec![] } else { vec![0] };
        f.try_add_coeff(idx, 0, &p).unwrap();
        TwistedElement::in_row(spec, row, f).unwrap()
    }

    #[test]
    fn oned_poincare_integrates_twice() {
        let spec = oned();
        for r in 0..5u32 {
            let u = scalar_row(&spec, 1, 1, x_pow(r));
            let expected = scalar_row(
                &spec,
                0,
                0,
                x_pow(r + 2).scale(&rat(1, ((r + 1) * (r + 2)) as i64)),
            );
            assert_eq!(spec.bgg_poincare(&u).unwrap(), expected);
        }
    }

    #[test]
    fn oned_a_and_b() {
        let spec = oned();
        // A⁰(u, v) = (u, u')
        let u = scalar_row(&spec, 0, 0, x_pow(3)).add(&scalar_row(&spec, 0, 1, x_pow(1)));
        let expected = scalar_row(&spec, 0, 0, x_pow(3)).add(&scalar_row(
            &spec,
            0,
            1,
            x_pow(2).scale(&rat(3, 1)),
        ));
        assert_eq!(spec.a_map(&u).unwrap(), expected);
        // B¹(w₀, w₁) = (0, w₀' + w₁)
        let w = scalar_row(&spec, 1, 0, x_pow(2)).add(&scalar_row(&spec, 1, 1, x_pow(4)));
        let expected = scalar_row(&spec, 1, 1, &x_pow(1).scale(&rat(2, 1)) + &x_pow(4));
        assert_eq!(spec.b_map(&w).unwrap(), expected);
    }

    #[test]
    fn degree_guards() {
        let spec = oned();
        let u = TwistedElement::zero(&spec, 0);
        assert!(spec.bgg_poincare(&u).is_err());
        assert!(spec.t_apply(&u).is_err());
        let other = DiagramSpec::builtin(BuiltinDiagram::Hessian);
        assert!(other.bgg_d(&u).is_err());
    }
}
