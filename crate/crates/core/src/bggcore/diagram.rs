use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{AlgebraError, Result};
use crate::forms::{
    form_indices, form_to_proxy, proxy_map, proxy_to_form, wedge_sign, FormIndex, PolyForm,
    ProxyField, ProxyMapName, ValueMap, ValueSpace, ValueTag,
};
use crate::ratpoly::{int, LinearOp, Poly, Rational};

/// Named diagrams shipped with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinDiagram {
    /// Rows ℝ, 𝕍 in 3D; BGG complex hess, curl, div.
    Hessian,
    /// Rows 𝕍, 𝕍 in 3D; BGG complex def, inc, div.
    Elasticity,
    /// Rows 𝕍, ℝ in 3D; BGG complex dev grad, sym curl, div div.
    DivDiv,
    /// Rows ℝ, ℝ in 1D coupled by the identity; BGG complex ∂².
    OneD,
}

impl BuiltinDiagram {
    pub const ALL: [BuiltinDiagram; 4] = [
        BuiltinDiagram::Hessian,
        BuiltinDiagram::Elasticity,
        BuiltinDiagram::DivDiv,
        BuiltinDiagram::OneD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinDiagram::Hessian => "hessian",
            BuiltinDiagram::Elasticity => "elasticity",
            BuiltinDiagram::DivDiv => "divdiv",
            BuiltinDiagram::OneD => "oned",
        }
    }
}

impl FromStr for BuiltinDiagram {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinDiagram::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| AlgebraError::UnknownName(s.to_string()))
    }
}

/// A linear map stored both row-wise and column-wise, so that it can be
/// applied term by term to sparse elements.
#[derive(Clone, Debug)]
pub(crate) struct CoeffOp {
    pub matrix: LinearOp,
    pub columns: Vec<Vec<(usize, Rational)>>,
}

impl CoeffOp {
    fn new(matrix: LinearOp) -> Self {
        let mut columns = vec![Vec::new(); matrix.ncols()];
        for (i, j, v) in matrix.entries() {
            columns[j].push((i, v.clone()));
        }
        CoeffOp { matrix, columns }
    }
}

/// Coefficient slots `(I, a)` of `Λⁱ ⊗ W`, in the same order as
/// [`crate::forms::FormBasis`].
fn slot_list(n: usize, i: usize, w: ValueSpace) -> Vec<(FormIndex, usize)> {
    form_indices(n, i)
        .into_iter()
        .flat_map(|idx| (0..w.dim()).map(move |a| (idx.clone(), a)))
        .collect()
}

/// Grid of de Rham rows `Λ• ⊗ W_j` coupled by constant algebraic maps
/// `S^{i,j}: Λⁱ⊗W_j → Λ^{i+1}⊗W_{j−1}`.
///
/// `S` is validated at construction (`dS = −Sd`, `S∘S = 0`). The pointwise
/// pseudo-inverse `T`, the projections onto `Υ = ker S ∩ ran(S)^⊥`, and the
/// assembled operators on `Yⁱ = ⊕_j Λⁱ⊗W_j` are cached.
#[derive(Clone, Debug)]
pub struct DiagramSpec {
    name: String,
    n: usize,
    rows: Vec<ValueSpace>,
    s: BTreeMap<(usize, usize), LinearOp>,
    /// `y_slots[i][g] = (row, I, a)`
    y_slots: Vec<Vec<(usize, FormIndex, usize)>>,
    /// `y_pos[i][row][(I, a)] = g`
    y_pos: Vec<Vec<HashMap<(FormIndex, usize), usize>>>,
    s_y: Vec<CoeffOp>,
    t_y: Vec<CoeffOp>,
    pi_y: Vec<CoeffOp>,
}

impl DiagramSpec {
    pub fn builtin(which: BuiltinDiagram) -> Self {
        let built = match which {
            BuiltinDiagram::OneD => {
                let r = ValueSpace::new(ValueTag::R, 1);
                let mut s = BTreeMap::new();
                s.insert((0, 1), LinearOp::identity(1));
                Self::new(which.name(), 1, vec![r, r], s)
            }
            _ => Self::from_proxies(which),
        };
        built.expect("builtin diagrams satisfy the diagram axioms")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::builtin(name.parse()?))
    }

    /// Builds the 3D builtins from their proxy maps. The proxy squares
    /// commute (`d∘σ = σ∘d` with row-wise proxies), so the form-level map in
    /// column `i` is `(−1)ⁱ σⁱ`, which turns commutation into `dS = −Sd`.
    fn from_proxies(which: BuiltinDiagram) -> Result<Self> {
        let n = 3;
        let pm = |name| proxy_map(name, n).expect("n = 3 proxies exist");
        let v = ValueSpace::new(ValueTag::V, n);
        let r = ValueSpace::new(ValueTag::R, n);
        let id_v = ValueMap::new(v, v, LinearOp::identity(3))?;
        let scaled = |m: ValueMap, c: i64| ValueMap {
            matrix: m.matrix.scale(&int(c)),
            ..m
        };
        let (rows, sigma): (Vec<ValueSpace>, [ValueMap; 3]) = match which {
            BuiltinDiagram::Hessian => (
                vec![r, v],
                [
                    id_v,
                    scaled(pm(ProxyMapName::Vskw), 2),
                    pm(ProxyMapName::Tr),
                ],
            ),
            BuiltinDiagram::Elasticity => (
                vec![v, v],
                [
                    scaled(pm(ProxyMapName::Mskw), -1),
                    pm(ProxyMapName::ScalS),
                    scaled(pm(ProxyMapName::Vskw), 2),
                ],
            ),
            BuiltinDiagram::DivDiv => (
                vec![v, r],
                [
                    pm(ProxyMapName::Iota),
                    scaled(pm(ProxyMapName::Mskw), -1),
                    id_v,
                ],
            ),
            BuiltinDiagram::OneD => unreachable!("handled by builtin"),
        };
        let mut s = BTreeMap::new();
        for (i, map) in sigma.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let m = Self::coefficient_matrix(n, i, rows[1], rows[0], map)?;
            s.insert((i, 1), m.scale(&int(sign)));
        }
        Self::new(which.name(), n, rows, s)
    }

    /// Matrix in coefficient slots of the map `Λⁱ⊗W_src → Λ^{i+1}⊗W_tgt`
    /// that acts as `map` on proxies.
    fn coefficient_matrix(
        n: usize,
        i: usize,
        src: ValueSpace,
        tgt: ValueSpace,
        map: &ValueMap,
    ) -> Result<LinearOp> {
        let src_slots = slot_list(n, i, src);
        let tgt_slots = slot_list(n, i + 1, tgt);
        let tgt_pos: HashMap<_, _> = tgt_slots
            .iter()
            .cloned()
            .enumerate()
            .map(|(p, s)| (s, p))
            .collect();
        let template = form_to_proxy(&PolyForm::zero(n, i + 1, tgt))?;
        let mut entries = Vec::new();
        for (col, (idx, a)) in src_slots.iter().enumerate() {
            let mut u = PolyForm::zero(n, i, src);
            u.add_coeff(idx.clone(), *a, &Poly::one(n));
            let flat = form_to_proxy(&u)?.flatten();
            if flat.len() != map.source.ambient_dim() {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "proxy map from {} on {src}-valued {i}-forms",
                    map.source
                )));
            }
            let mut image = vec![Poly::zero(n); map.target.ambient_dim()];
            for (b, out) in image.iter_mut().enumerate() {
                for (a2, p) in flat.iter().enumerate() {
                    let c = map.matrix.get(b, a2);
                    if !c.is_zero() {
                        out.add_scaled(p, &c);
                    }
                }
            }
            let field: ProxyField = template.reshape_like(image)?;
            let w = proxy_to_form(&field, n, i + 1, tgt)?;
            for ((tidx, ta), p) in w.coeffs() {
                entries.push((tgt_pos[&(tidx.clone(), *ta)], col, p.constant_term()));
            }
        }
        LinearOp::from_triplets(tgt_slots.len(), src_slots.len(), entries)
    }

    /// Validating constructor. `s[(i, j)]` maps the slots of `Λⁱ⊗W_j` to
    /// those of `Λ^{i+1}⊗W_{j−1}`; missing entries are zero.
    pub fn new(
        name: &str,
        n: usize,
        rows: Vec<ValueSpace>,
        s: BTreeMap<(usize, usize), LinearOp>,
    ) -> Result<Self> {
        if n == 0 || rows.is_empty() {
            return Err(AlgebraError::InvalidDiagram(
                "need n ≥ 1 and at least one row".into(),
            ));
        }
        if rows.iter().any(|w| w.n != n) {
            return Err(AlgebraError::InvalidDiagram(
                "row value spaces must have dimension n".into(),
            ));
        }
        let big_n = rows.len() - 1;
        for (&(i, j), m) in &s {
            if i >= n || j == 0 || j > big_n {
                return Err(AlgebraError::InvalidDiagram(format!(
                    "S^({i},{j}) outside the grid"
                )));
            }
            let want = (
                slot_list(n, i + 1, rows[j - 1]).len(),
                slot_list(n, i, rows[j]).len(),
            );
            if m.shape() != want {
                return Err(AlgebraError::InvalidDiagram(format!(
                    "S^({i},{j}) has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }

        let mut y_slots = Vec::new();
        let mut y_pos = Vec::new();
        for i in 0..=n + 1 {
            let mut flat = Vec::new();
            let mut pos = Vec::new();
            for (j, w) in rows.iter().enumerate() {
                let mut map = HashMap::new();
                for (idx, a) in slot_list(n, i, *w) {
                    map.insert((idx.clone(), a), flat.len());
                    flat.push((j, idx, a));
                }
                pos.push(map);
            }
            y_slots.push(flat);
            y_pos.push(pos);
        }

        let mut spec = DiagramSpec {
            name: name.to_string(),
            n,
            rows,
            s,
            y_slots,
            y_pos,
            s_y: Vec::new(),
            t_y: Vec::new(),
            pi_y: Vec::new(),
        };
        spec.validate()?;
        spec.assemble()?;
        Ok(spec)
    }

    fn s_block(&self, i: usize, j: usize) -> LinearOp {
        self.s.get(&(i, j)).cloned().unwrap_or_else(|| {
            LinearOp::zeros(
                slot_list(self.n, i + 1, self.rows[j - 1]).len(),
                slot_list(self.n, i, self.rows[j]).len(),
            )
        })
    }

    /// Matrix of `dx_m ∧ ·` on the slots of `Λⁱ⊗W`.
    fn wedge_matrix(&self, m: usize, i: usize, w: ValueSpace) -> LinearOp {
        let src = slot_list(self.n, i, w);
        let tgt = slot_list(self.n, i + 1, w);
        let pos: HashMap<_, _> = tgt
            .iter()
            .cloned()
            .enumerate()
            .map(|(p, s)| (s, p))
            .collect();
        let mut out = LinearOp::zeros(tgt.len(), src.len());
        for (col, (idx, a)) in src.iter().enumerate() {
            if let Some((new, sign)) = wedge_sign(m, idx) {
                out.set(pos[&(new, *a)], col, sign);
            }
        }
        out
    }

    /// Checks `dS = −Sd` (as `(dx_m∧)S = −S(dx_m∧)` for every `m`, which is
    /// equivalent for constant `S`) and `S∘S = 0`.
    fn validate(&self) -> Result<()> {
        let big_n = self.rows.len() - 1;
        for i in 0..self.n {
            for j in 1..=big_n {
                let s = self.s_block(i, j);
                if i + 1 < self.n {
                    for m in 0..self.n {
                        let lhs = self.wedge_matrix(m, i + 1, self.rows[j - 1]).mul(&s);
                        let rhs =
                            self.s_block(i + 1, j)
                                .mul(&self.wedge_matrix(m, i, self.rows[j]));
                        if lhs.add(&rhs) != LinearOp::zeros(lhs.nrows(), lhs.ncols()) {
                            return Err(AlgebraError::InvalidDiagram(format!(
                                "dS ≠ −Sd at ({i},{j}) for dx{}",
                                m + 1
                            )));
                        }
                    }
                }
                if j >= 2 && i + 1 < self.n && !self.s_block(i + 1, j - 1).mul(&s).is_zero() {
                    return Err(AlgebraError::InvalidDiagram(format!(
                        "S∘S ≠ 0 at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn slot_gram(&self, i: usize, w: ValueSpace) -> LinearOp {
        let g = w.gram();
        let blocks: Vec<LinearOp> = form_indices(self.n, i).iter().map(|_| g.clone()).collect();
        let refs: Vec<&LinearOp> = blocks.iter().collect();
        LinearOp::block_diag(&refs)
    }

    fn y_dim(&self, i: usize) -> usize {
        self.y_slots[i].len()
    }

    fn row_offset(&self, i: usize, j: usize) -> usize {
        self.y_slots[i]
            .iter()
            .position(|(r, _, _)| *r == j)
            .unwrap_or(self.y_slots[i].len())
    }

    fn assemble(&mut self) -> Result<()> {
        let n = self.n;
        let big_n = self.rows.len() - 1;
        let mut s_y = Vec::new();
        let mut t_y = vec![LinearOp::zeros(0, self.y_dim(0))];
        for i in 0..=n + 1 {
            let target = if i <= n { self.y_dim(i + 1) } else { 0 };
            let mut m = LinearOp::zeros(target, self.y_dim(i));
            if i < n {
                for j in 1..=big_n {
                    m.put_block(
                        self.row_offset(i + 1, j - 1),
                        self.row_offset(i, j),
                        &self.s_block(i, j),
                    );
                }
            }
            s_y.push(m);
        }
        for i in 1..=n + 1 {
            let mut m = LinearOp::zeros(self.y_dim(i - 1), self.y_dim(i));
            if i <= n {
                for j in 0..big_n {
                    // T^{i,j} = pseudo-inverse of S^{i−1,j+1}
                    let s = self.s_block(i - 1, j + 1);
                    let g_src = self.slot_gram(i - 1, self.rows[j + 1]);
                    let g_tgt = self.slot_gram(i, self.rows[j]);
                    let t = s.pseudo_inverse_with(Some(&g_src), Some(&g_tgt))?;
                    m.put_block(self.row_offset(i - 1, j + 1), self.row_offset(i, j), &t);
                }
            }
            t_y.push(m);
        }
        let mut pi_y = Vec::new();
        for i in 0..=n + 1 {
            let mut p = LinearOp::identity(self.y_dim(i));
            if i >= 1 {
                p = p.sub(&s_y[i - 1].mul(&t_y[i]));
            }
            if i <= n {
                p = p.sub(&t_y[i + 1].mul(&s_y[i]));
            }
            pi_y.push(CoeffOp::new(p));
        }
        self.s_y = s_y.into_iter().map(CoeffOp::new).collect();
        self.t_y = t_y.into_iter().map(CoeffOp::new).collect();
        self.pi_y = pi_y;
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[ValueSpace] {
        &self.rows
    }

    /// Number of rows minus one.
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S^{i,j}` in coefficient slots.
    pub fn s_matrix(&self, i: usize, j: usize) -> LinearOp {
        self.s_block(i, j)
    }

    pub fn s_entries(&self) -> &BTreeMap<(usize, usize), LinearOp> {
        &self.s
    }

    pub(crate) fn s_op(&self, i: usize) -> &CoeffOp {
        &self.s_y[i]
    }

    pub(crate) fn t_op(&self, i: usize) -> &CoeffOp {
        &self.t_y[i]
    }

    pub(crate) fn pi_op(&self, i: usize) -> &CoeffOp {
        &self.pi_y[i]
    }

    /// `S`, `T`, `Π_Υ` on the coefficient slots of `Yⁱ`.
    pub fn y_matrices(&self, i: usize) -> (&LinearOp, &LinearOp, &LinearOp) {
        (
            &self.s_y[i].matrix,
            &self.t_y[i].matrix,
            &self.pi_y[i].matrix,
        )
    }

    pub(crate) fn slot_of(&self, i: usize, g: usize) -> &(usize, FormIndex, usize) {
        &self.y_slots[i][g]
    }

    pub(crate) fn global_slot(&self, i: usize, row: usize, idx: &FormIndex, a: usize) -> usize {
        self.y_pos[i][row][&(idx.clone(), a)]
    }

    /// Rows carrying a nonzero part of `Υⁱ`.
    pub fn upsilon_rows(&self, i: usize) -> Vec<usize> {
        let pi = &self.pi_y[i].matrix;
        let mut rows: Vec<usize> = pi.entries().map(|(g, _, _)| self.y_slots[i][g].0).collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    /// The unique row carrying `Υⁱ`, if there is exactly one.
    pub fn active_row(&self, i: usize) -> Option<usize> {
        match self.upsilon_rows(i).as_slice() {
            [j] => Some(*j),
            _ => None,
        }
    }

    pub fn upsilon_dim_pointwise(&self, i: usize) -> usize {
        self.pi_y[i].matrix.rank()
    }
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|w| w.tag.to_string()).collect();
        write!(f, "{} (n={}, rows {})", self.name, self.n, rows.join("/"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_construct() {
        for b in BuiltinDiagram::ALL {
            let d = DiagramSpec::builtin(b);
            assert_eq!(d.name(), b.name());
        }
    }

    #[test]
    fn upsilon_dimensions_pointwise() {
        // per point: Υ⁰..Υ³ dims for elasticity are 3, 6, 6, 3
        let e = DiagramSpec::builtin(BuiltinDiagram::Elasticity);
        let dims: Vec<usize> = (0..4).map(|i| e.upsilon_dim_pointwise(i)).collect();
        assert_eq!(dims, vec![3, 6, 6, 3]);
        assert_eq!(e.active_row(0), Some(0));
        assert_eq!(e.active_row(1), Some(0));
        assert_eq!(e.active_row(2), Some(1));
        assert_eq!(e.active_row(3), Some(1));

        let h = DiagramSpec::builtin(BuiltinDiagram::Hessian);
        let dims: Vec<usize> = (0..4).map(|i| h.upsilon_dim_pointwise(i)).collect();
        assert_eq!(dims, vec![1, 6, 8, 3]);

        let dd = DiagramSpec::builtin(BuiltinDiagram::DivDiv);
        let dims: Vec<usize> = (0..4).map(|i| dd.upsilon_dim_pointwise(i)).collect();
        assert_eq!(dims, vec![3, 8, 6, 1]);
    }

    #[test]
    fn rejects_non_anticommuting_s() {
        let v = ValueSpace::new(ValueTag::V, 3);
        let e = DiagramSpec::builtin(BuiltinDiagram::Elasticity);
        let mut s = e.s_entries().clone();
        // flip a single sign
        let m = s[&(1, 1)].scale(&int(-1));
        s.insert((1, 1), m);
        assert!(matches!(
            DiagramSpec::new("bad", 3, vec![v, v], s),
            Err(AlgebraError::InvalidDiagram(_))
        ));
    }
}
