use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::ratpoly::{int, rat, LinearOp, Rational};

/// Which coefficient space a form takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueTag {
    /// ℝ
    R,
    /// 𝕍 = ℝⁿ
    V,
    /// 𝕄, all n×n matrices
    M,
    /// 𝕊, symmetric matrices
    S,
    /// 𝕂, skew matrices
    K,
    /// 𝕋, trace-free matrices
    T,
    /// 𝕊∩𝕋
    ST,
}

impl ValueTag {
    pub const ALL: [ValueTag; 7] = [
        ValueTag::R,
        ValueTag::V,
        ValueTag::M,
        ValueTag::S,
        ValueTag::K,
        ValueTag::T,
        ValueTag::ST,
    ];

    pub fn is_matrix(self) -> bool {
        !matches!(self, ValueTag::R | ValueTag::V)
    }
}

impl fmt::Display for ValueTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValueTag::R => "R",
            ValueTag::V => "V",
            ValueTag::M => "M",
            ValueTag::S => "S",
            ValueTag::K => "K",
            ValueTag::T => "T",
            ValueTag::ST => "ST",
        };
        f.write_str(s)
    }
}

impl FromStr for ValueTag {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        ValueTag::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| AlgebraError::UnknownName(s.to_string()))
    }
}

/// A value space together with its ambient dimension `n`.
///
/// Elements are stored as coordinates in the canonical basis returned by
/// [`ValueSpace::basis`]; basis vectors live in the ambient space (ℝ, ℝⁿ or
/// row-major ℝ^{n×n}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueSpace {
    pub tag: ValueTag,
    pub n: usize,
}

fn unit(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}

impl ValueSpace {
    pub fn new(tag: ValueTag, n: usize) -> Self {
        ValueSpace { tag, n }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.tag {
            ValueTag::R => 1,
            ValueTag::V => self.n,
            _ => self.n * self.n,
        }
    }

    /// The ambient space containing `self` (ℝ, 𝕍 or 𝕄).
    pub fn ambient(&self) -> ValueSpace {
        match self.tag {
            ValueTag::R | ValueTag::V => *self,
            _ => ValueSpace::new(ValueTag::M, self.n),
        }
    }

    pub fn dim(&self) -> usize {
        let n = self.n;
        match self.tag {
            ValueTag::R => 1,
            ValueTag::V => n,
            ValueTag::M => n * n,
            ValueTag::S => n * (n + 1) / 2,
            ValueTag::K => n * n.saturating_sub(1) / 2,
            ValueTag::T => (n * n).saturating_sub(1),
            ValueTag::ST => (n * (n + 1) / 2).saturating_sub(1),
        }
    }

    /// Canonical basis, each element in flattened ambient coordinates.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let amb = self.ambient_dim();
        let e = |i: usize, j: usize| i * n + j;
        let sym = |i: usize, j: usize| {
            let mut v = unit(amb, e(i, j));
            v[e(j, i)] = int(1);
            v
        };
        let diag_minus_last = |i: usize| {
            let mut v = unit(amb, e(i, i));
            v[e(n - 1, n - 1)] = int(-1);
            v
        };
        let pairs = || (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
        match self.tag {
            ValueTag::R | ValueTag::V | ValueTag::M => (0..amb).map(|i| unit(amb, i)).collect(),
            ValueTag::S => (0..n)
                .map(|i| unit(amb, e(i, i)))
                .chain(pairs().map(|(i, j)| sym(i, j)))
                .collect(),
            ValueTag::K => pairs()
                .map(|(i, j)| {
                    let mut v = unit(amb, e(i, j));
                    v[e(j, i)] = int(-1);
                    v
                })
                .collect(),
            ValueTag::T => (0..n)
                .flat_map(|i| {
                    (0..n)
                        .filter(move |&j| j != i)
                        .map(move |j| unit(amb, e(i, j)))
                })
                .chain((0..n.saturating_sub(1)).map(diag_minus_last))
                .collect(),
            ValueTag::ST => pairs()
                .map(|(i, j)| sym(i, j))
                .chain((0..n.saturating_sub(1)).map(diag_minus_last))
                .collect(),
        }
    }

    /// `ambient_dim × dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> LinearOp {
        LinearOp::from_columns(self.ambient_dim(), &self.basis())
    }

    /// Gram matrix of the basis for the Euclidean/Frobenius inner product.
    pub fn gram(&self) -> LinearOp {
        let b = self.basis_matrix();
        b.transpose().mul(&b)
    }

    /// `dim × ambient_dim` left inverse of the basis matrix that is also the
    /// orthogonal projection onto `self` followed by taking coordinates.
    pub fn coordinate_map(&self) -> LinearOp {
        let b = self.basis_matrix();
        let g = self
            .gram()
            .inverse()
            .expect("canonical basis is independent");
        g.mul(&b.transpose())
    }

    /// Coordinates of an ambient vector; fails when it is not in `self`.
    pub fn coords(&self, ambient: &[Rational]) -> Result<Vec<Rational>> {
        if ambient.len() != self.ambient_dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: ambient.len(),
            });
        }
        let c = self.coordinate_map().apply(ambient);
        if self.basis_matrix().apply(&c) != ambient {
            return Err(AlgebraError::NotInSubspace(self.to_string()));
        }
        Ok(c)
    }

    pub fn to_ambient(&self, coords: &[Rational]) -> Vec<Rational> {
        self.basis_matrix().apply(coords)
    }

    /// Orthogonal projection `self → target` in coordinates; both must share
    /// the same ambient space.
    pub fn projection_to(&self, target: ValueSpace) -> Result<LinearOp> {
        if self.ambient() != target.ambient() {
            return Err(AlgebraError::Unsupported(format!(
                "projection {self} → {target}"
            )));
        }
        Ok(target.coordinate_map().mul(&self.basis_matrix()))
    }
}

impl fmt::Display for ValueSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag, self.n)
    }
}

/// Linear map between two value spaces, in their canonical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueMap {
    pub source: ValueSpace,
    pub target: ValueSpace,
    /// `target.dim() × source.dim()`
    pub matrix: LinearOp,
}

impl ValueMap {
    pub fn new(source: ValueSpace, target: ValueSpace, matrix: LinearOp) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{:?} for map {source} → {target}",
                matrix.shape()
            )));
        }
        Ok(ValueMap {
            source,
            target,
            matrix,
        })
    }

    /// Restricts an ambient map to `source → target`, failing if some image
    /// leaves `target`.
    pub fn restrict(&self, source: ValueSpace, target: ValueSpace) -> Result<ValueMap> {
        let into = self.source.projection_to(source)?;
        let embed = source.basis_matrix();
        if self.source.basis_matrix().mul(&into).mul(&embed) != embed {
            return Err(AlgebraError::NotInSubspace(format!(
                "{source} ⊄ {}",
                self.source
            )));
        }
        let src_in_self = self.source.coordinate_map().mul(&embed);
        let image = self
            .target
            .basis_matrix()
            .mul(&self.matrix)
            .mul(&src_in_self);
        let coords = target.coordinate_map().mul(&image);
        if target.basis_matrix().mul(&coords) != image {
            return Err(AlgebraError::NotInSubspace(format!(
                "image of {source} in {target}"
            )));
        }
        ValueMap::new(source, target, coords)
    }

    pub fn compose(&self, first: &ValueMap) -> Result<ValueMap> {
        if first.target != self.source {
            return Err(AlgebraError::ShapeMismatch(format!(
                "compose {} after {}",
                self.source, first.target
            )));
        }
        ValueMap::new(
            first.source,
            self.target,
            self.matrix.try_mul(&first.matrix)?,
        )
    }

    pub fn apply(&self, coords: &[Rational]) -> Vec<Rational> {
        self.matrix.apply(coords)
    }
}

/// Algebraic maps between value spaces used by the proxy calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProxyMapName {
    /// 𝕍 → 𝕄, `mskw(v) w = v × w`
    Mskw,
    /// 𝕄 → 𝕍, `vskw = mskw⁻¹ ∘ skw`
    Vskw,
    /// ℝ → 𝕄, `ι(c) = c I`
    Iota,
    /// 𝕄 → 𝕄, trace-free part
    Dev,
    /// 𝕄 → ℝ
    Tr,
    /// 𝕄 → 𝕄
    Sym,
    /// 𝕄 → 𝕄
    Skw,
    /// 𝕄 → 𝕄, `𝒮u = uᵀ − tr(u) I`
    ScalS,
}

impl FromStr for ProxyMapName {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mskw" => ProxyMapName::Mskw,
            "vskw" => ProxyMapName::Vskw,
            "iota" => ProxyMapName::Iota,
            "dev" => ProxyMapName::Dev,
            "tr" => ProxyMapName::Tr,
            "sym" => ProxyMapName::Sym,
            "skw" => ProxyMapName::Skw,
            "scal_S" => ProxyMapName::ScalS,
            _ => return Err(AlgebraError::UnknownName(s.to_string())),
        })
    }
}

/// Matrix of a named proxy map between ambient spaces.
pub fn proxy_map(name: ProxyMapName, n: usize) -> Result<ValueMap> {
    let r = ValueSpace::new(ValueTag::R, n);
    let v = ValueSpace::new(ValueTag::V, n);
    let m = ValueSpace::new(ValueTag::M, n);
    let e = |i: usize, j: usize| i * n + j;
    let nn = n * n;
    let needs_three = matches!(
        name,
        ProxyMapName::Mskw | ProxyMapName::Vskw | ProxyMapName::ScalS
    );
    if needs_three && n != 3 {
        return Err(AlgebraError::Unsupported(format!(
            "{name:?} requires n = 3, got {n}"
        )));
    }
    if n == 0 {
        return Err(AlgebraError::Unsupported("n = 0".into()));
    }
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    let (src, tgt) = match name {
        ProxyMapName::Mskw => {
            // columns: v1, v2, v3
            for (i, j, a, s) in [
                (2, 1, 0, 1),
                (1, 2, 0, -1),
                (0, 2, 1, 1),
                (2, 0, 1, -1),
                (1, 0, 2, 1),
                (0, 1, 2, -1),
            ] {
                entries.push((e(i, j), a, int(s)));
            }
            (v, m)
        }
        ProxyMapName::Vskw => {
            // vskw(M) = ((M32 − M23)/2, (M13 − M31)/2, (M21 − M12)/2)
            for (a, i, j) in [(0, 2, 1), (1, 0, 2), (2, 1, 0)] {
                entries.push((a, e(i, j), rat(1, 2)));
                entries.push((a, e(j, i), rat(-1, 2)));
            }
            (m, v)
        }
        ProxyMapName::Iota => {
            for i in 0..n {
                entries.push((e(i, i), 0, int(1)));
            }
            (r, m)
        }
        ProxyMapName::Tr => {
            for i in 0..n {
                entries.push((0, e(i, i), int(1)));
            }
            (m, r)
        }
        ProxyMapName::Dev => {
            for k in 0..nn {
                entries.push((k, k, int(1)));
            }
            for i in 0..n {
                for j in 0..n {
                    entries.push((e(i, i), e(j, j), rat(-1, n as i64)));
                }
            }
            (m, m)
        }
        ProxyMapName::Sym | ProxyMapName::Skw => {
            let s = if name == ProxyMapName::Sym { 1 } else { -1 };
            for i in 0..n {
                for j in 0..n {
                    entries.push((e(i, j), e(i, j), rat(1, 2)));
                    entries.push((e(i, j), e(j, i), rat(s, 2)));
                }
            }
            (m, m)
        }
        ProxyMapName::ScalS => {
            for i in 0..n {
                for j in 0..n {
                    entries.push((e(i, j), e(j, i), int(1)));
                }
                for j in 0..n {
                    entries.push((e(i, i), e(j, j), int(-1)));
                }
            }
            (m, m)
        }
    };
    let mat = LinearOp::from_triplets(tgt.dim(), src.dim(), entries)?;
    ValueMap::new(src, tgt, mat)
}
