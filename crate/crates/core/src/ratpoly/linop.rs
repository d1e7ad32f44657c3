use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{AlgebraError, Result};

/// Exact sparse matrix between two enumerated bases.
///
/// Rows are stored as sparse maps; no zero entry is ever stored. Labels are
/// optional and purely descriptive (`e0`, `e1`, … when absent).
#[derive(Clone, Debug)]
pub struct LinearOp {
    nrows: usize,
    ncols: usize,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
    data: Vec<BTreeMap<usize, Rational>>,
}

/// Result of [`LinearOp::rank_kernel_image`]. Both bases are stored as the
/// columns of a matrix.
#[derive(Clone, Debug)]
pub struct RankKernelImage {
    pub rank: usize,
    /// `ncols × (ncols − rank)`; columns span the kernel.
    pub kernel: LinearOp,
    /// `nrows × rank`; columns are the pivot columns of the input.
    pub image: LinearOp,
    /// Indices of the pivot columns.
    pub pivots: Vec<usize>,
}

impl PartialEq for LinearOp {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows && self.ncols == other.ncols && self.data == other.data
    }
}

impl Eq for LinearOp {}

impl LinearOp {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        LinearOp {
            nrows,
            ncols,
            row_labels: None,
            col_labels: None,
            data: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>], ncols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Sums repeated `(row, col)` entries.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(nrows, ncols);
        for (i, j, v) in entries {
            if i >= nrows || j >= ncols {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "entry ({i}, {j}) outside {nrows}×{ncols}"
                )));
            }
            m.add_to(i, j, &v);
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        assert_eq!(rows.len(), self.nrows);
        assert_eq!(cols.len(), self.ncols);
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        self
    }

    pub fn row_label(&self, i: usize) -> String {
        match &self.row_labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    pub fn col_label(&self, j: usize) -> String {
        match &self.col_labels {
            Some(l) => l[j].clone(),
            None => format!("e{j}"),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(j < self.ncols, "column {j} out of range");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.data[i].entry(j).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.data[i].remove(&j);
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Rational> {
        &self.data[i]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.nrows) && self.nrows == self.ncols
    }

    pub fn transpose(&self) -> LinearOp {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, j, v) in self.entries() {
            t.data[j].insert(i, v.clone());
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn scale(&self, c: &Rational) -> LinearOp {
        if c.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row.values_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn try_add(&self, other: &LinearOp) -> Result<LinearOp> {
        if self.shape() != other.shape() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{:?} + {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_to(i, j, v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LinearOp) -> Result<LinearOp> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// `self · other`.
    pub fn try_mul(&self, other: &LinearOp) -> Result<LinearOp> {
        if self.ncols != other.nrows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{:?} · {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (i, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let e = acc.entry(*j).or_insert_with(Rational::zero);
                    *e += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        Ok(out)
    }

    /// Panicking product for internal callers whose shapes are known to chain.
    pub fn mul(&self, other: &LinearOp) -> LinearOp {
        self.try_mul(other).expect("shape mismatch in product")
    }

    pub fn add(&self, other: &LinearOp) -> LinearOp {
        self.try_add(other).expect("shape mismatch in sum")
    }

    pub fn sub(&self, other: &LinearOp) -> LinearOp {
        self.try_sub(other).expect("shape mismatch in difference")
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.ncols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (j, v)| acc + v * &x[*j])
            })
            .collect()
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> LinearOp {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut out = Self::zeros(self.nrows, cols.len());
        for (i, j, v) in self.entries() {
            if let Some(&p) = pos.get(&j) {
                out.data[i].insert(p, v.clone());
            }
        }
        out
    }

    /// Rows `rows` of `self`, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> LinearOp {
        let mut out = Self::zeros(rows.len(), self.ncols);
        for (p, &r) in rows.iter().enumerate() {
            out.data[p] = self.data[r].clone();
        }
        out
    }

    pub fn hstack(blocks: &[&LinearOp]) -> LinearOp {
        let nrows = blocks.first().map_or(0, |b| b.nrows);
        let ncols = blocks.iter().map(|b| b.ncols).sum();
        let mut out = Self::zeros(nrows, ncols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.nrows, nrows, "hstack row mismatch");
            for (i, j, v) in b.entries() {
                out.data[i].insert(off + j, v.clone());
            }
            off += b.ncols;
        }
        out
    }

    /// Block diagonal matrix `diag(blocks)`.
    pub fn block_diag(blocks: &[&LinearOp]) -> LinearOp {
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let ncols = blocks.iter().map(|b| b.ncols).sum();
        let mut out = Self::zeros(nrows, ncols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (i, j, v) in b.entries() {
                out.data[r0 + i].insert(c0 + j, v.clone());
            }
            r0 += b.nrows;
            c0 += b.ncols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &LinearOp) {
        assert!(r0 + block.nrows <= self.nrows && c0 + block.ncols <= self.ncols);
        for (i, j, v) in block.entries() {
            self.set(r0 + i, c0 + j, v.clone());
        }
    }

    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> LinearOp {
        let mut out = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for (j, v) in self.data[r0 + i].range(c0..c0 + ncols) {
                out.data[i].insert(j - c0, v.clone());
            }
        }
        out
    }

    fn int_rows(&self) -> Vec<IntRow> {
        self.data.iter().filter_map(IntRow::from_rational).collect()
    }

    /// Exact rank over ℚ.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::default();
        for row in self.int_rows() {
            ech.insert(row);
        }
        ech.pivots.len()
    }

    /// Exact rank, kernel basis and image basis, via fraction-free sparse
    /// row reduction with content removal.
    pub fn rank_kernel_image(&self) -> RankKernelImage {
        let mut ech = Echelon::default();
        for row in self.int_rows() {
            ech.insert(row);
        }
        ech.back_substitute();
        let pivots: Vec<usize> = ech.pivots.keys().copied().collect();
        let rank = pivots.len();

        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivot_set.contains(c)).collect();
        let free_pos: BTreeMap<usize, usize> =
            free.iter().enumerate().map(|(p, &c)| (c, p)).collect();

        let mut kernel = Self::zeros(self.ncols, free.len());
        for (&f, &p) in &free_pos {
            kernel.data[f].insert(p, Rational::one());
        }
        for (&c, row) in &ech.pivots {
            let lead = Rational::from_integer(row.vals[0].clone());
            for (col, v) in row.cols.iter().zip(&row.vals).skip(1) {
                let p = free_pos[col];
                kernel.set(c, p, -Rational::from_integer(v.clone()) / &lead);
            }
        }
        let image = self.select_columns(&pivots);
        RankKernelImage {
            rank,
            kernel,
            image,
            pivots,
        }
    }

    /// `ker ⊕ image` data plus the reduced row echelon coordinates: returns
    /// `(pivot columns, R)` with `self = self[:, pivots] · R`.
    pub fn column_factorization(&self) -> (Vec<usize>, LinearOp) {
        let mut ech = Echelon::default();
        for row in self.int_rows() {
            ech.insert(row);
        }
        ech.back_substitute();
        let pivots: Vec<usize> = ech.pivots.keys().copied().collect();
        let mut r = Self::zeros(pivots.len(), self.ncols);
        for (p, row) in ech.pivots.values().enumerate() {
            let lead = Rational::from_integer(row.vals[0].clone());
            for (c, v) in row.cols.iter().zip(&row.vals) {
                r.set(p, *c, Rational::from_integer(v.clone()) / &lead);
            }
        }
        (pivots, r)
    }

    /// Inverse of a square nonsingular matrix (Gauss–Jordan over ℚ).
    pub fn inverse(&self) -> Result<LinearOp> {
        if self.nrows != self.ncols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "inverse of {:?}",
                self.shape()
            )));
        }
        let n = self.nrows;
        let mut a = self.to_dense();
        let mut inv = Self::identity(n).to_dense();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or(AlgebraError::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] /= &piv;
                inv[c][j] /= &piv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    let (t1, t2) = (&a[c][j] * &f, &inv[c][j] * &f);
                    a[r][j] -= t1;
                    inv[r][j] -= t2;
                }
            }
        }
        Ok(Self::from_dense(&inv, n))
    }

    /// Moore–Penrose pseudo-inverse for the Euclidean inner products.
    pub fn pseudo_inverse(&self) -> LinearOp {
        self.pseudo_inverse_with(None, None)
            .expect("identity Gram matrices are nonsingular")
    }

    /// Pseudo-inverse `(A|_{ker(A)^⊥})^{-1} Π_{ran(A)}` where orthogonality
    /// uses the Gram matrices `gram_src` and `gram_tgt` (identity if `None`).
    pub fn pseudo_inverse_with(
        &self,
        gram_src: Option<&LinearOp>,
        gram_tgt: Option<&LinearOp>,
    ) -> Result<LinearOp> {
        let (pivots, coords) = self.column_factorization();
        if pivots.is_empty() {
            return Ok(Self::zeros(self.ncols, self.nrows));
        }
        let b = self.select_columns(&pivots);
        let bt_g = match gram_tgt {
            Some(g) => b.transpose().try_mul(g)?,
            None => b.transpose(),
        };
        let gx_inv = match gram_src {
            Some(g) => Some(g.inverse()?),
            None => None,
        };
        let ginv_ct = match &gx_inv {
            Some(gi) => gi.try_mul(&coords.transpose())?,
            None => coords.transpose(),
        };
        let inner = coords.try_mul(&ginv_ct)?.inverse()?;
        let bgb = bt_g.try_mul(&b)?.inverse()?;
        ginv_ct.try_mul(&inner)?.try_mul(&bgb)?.try_mul(&bt_g)
    }

    /// Orthogonal projector onto the column space of `self` for the inner
    /// product with Gram matrix `gram` (identity if `None`).
    pub fn column_space_projector(&self, gram: Option<&LinearOp>) -> Result<LinearOp> {
        let (pivots, _) = self.column_factorization();
        if pivots.is_empty() {
            return Ok(Self::zeros(self.nrows, self.nrows));
        }
        let b = self.select_columns(&pivots);
        let bt_g = match gram {
            Some(g) => b.transpose().try_mul(g)?,
            None => b.transpose(),
        };
        let inner = bt_g.try_mul(&b)?.inverse()?;
        b.try_mul(&inner)?.try_mul(&bt_g)
    }

    /// Powers `self^k`, `k ≥ 0`.
    pub fn pow(&self, k: usize) -> LinearOp {
        let mut out = Self::identity(self.nrows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for LinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols)
                .map(|j| format_rational(&self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse primitive integer row; `cols` strictly increasing, `vals` nonzero,
/// leading value positive.
#[derive(Clone, Debug)]
struct IntRow {
    cols: Vec<usize>,
    vals: Vec<BigInt>,
}

impl IntRow {
    fn from_rational(row: &BTreeMap<usize, Rational>) -> Option<IntRow> {
        if row.is_empty() {
            return None;
        }
        let lcm = row
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let cols = row.keys().copied().collect();
        let vals = row
            .values()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        let mut r = IntRow { cols, vals };
        r.normalize();
        Some(r)
    }

    fn normalize(&mut self) {
        let g = self.vals.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let neg = self.vals.first().is_some_and(|v| v.is_negative());
        if !g.is_one() || neg {
            let g = if neg { -g } else { g };
            for v in &mut self.vals {
                *v /= &g;
            }
        }
    }

    fn lead(&self) -> Option<usize> {
        self.cols.first().copied()
    }

    fn coeff_at(&self, col: usize) -> Option<&BigInt> {
        self.cols.binary_search(&col).ok().map(|p| &self.vals[p])
    }

    /// `p·self − a·other` where the entry at `col` cancels.
    fn eliminate(&self, other: &IntRow, col: usize) -> IntRow {
        let a = self.coeff_at(col).expect("column present").clone();
        let p = other.coeff_at(col).expect("pivot present").clone();
        let g = a.gcd(&p);
        let (a, p) = (a / &g, p / &g);
        let mut cols = Vec::with_capacity(self.cols.len() + other.cols.len());
        let mut vals = Vec::with_capacity(cols.capacity());
        let (mut i, mut j) = (0, 0);
        while i < self.cols.len() || j < other.cols.len() {
            let ci = self.cols.get(i).copied().unwrap_or(usize::MAX);
            let cj = other.cols.get(j).copied().unwrap_or(usize::MAX);
            let (c, v) = if ci < cj {
                i += 1;
                (ci, &p * &self.vals[i - 1])
            } else if cj < ci {
                j += 1;
                (cj, -(&a * &other.vals[j - 1]))
            } else {
                i += 1;
                j += 1;
                (ci, &p * &self.vals[i - 1] - &a * &other.vals[j - 1])
            };
            if !v.is_zero() {
                cols.push(c);
                vals.push(v);
            }
        }
        let mut r = IntRow { cols, vals };
        r.normalize();
        r
    }
}

#[derive(Default)]
struct Echelon {
    /// leading column → row whose leading entry sits there
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: IntRow) {
        while let Some(c) = row.lead() {
            match self.pivots.get(&c) {
                Some(p) => row = row.eliminate(p, c),
                None => {
                    self.pivots.insert(c, row);
                    return;
                }
            }
        }
    }

    /// Clears every pivot column from all other pivot rows (full RREF up to
    /// row scaling).
    fn back_substitute(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let pivot = self.pivots[&c].clone();
            let others: Vec<usize> = self.pivots.range(..c).map(|(k, _)| *k).collect();
            for k in others {
                let row = &self.pivots[&k];
                if row.coeff_at(c).is_some() {
                    let reduced = row.eliminate(&pivot, c);
                    self.pivots.insert(k, reduced);
                }
            }
        }
    }
}

/// Dense fraction-free Bareiss rank.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            r.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}
