//! Exact linear algebra over `F_{p^2}`.
//!
//! Generator matrices are stored in compressed sparse row form: the
//! constructed representations are block structured with a handful of
//! nonzeros per row, and relation checking is dominated by sparse products.
//! Dense matrices and the incremental echelon basis back the nullspace,
//! spinning and commutant computations.

use std::fmt;

use crate::field::{FieldCtx, Scalar};

/// Compressed sparse row matrix over `F_{p^2}`. Column indices within a row
/// are strictly increasing and stored values are nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<Scalar>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} (nnz {})", self.rows, self.cols, self.nnz())?;
        if self.rows <= 16 && self.cols <= 16 {
            for i in 0..self.rows {
                let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Row-at-a-time builder; entries of a row may arrive in any order and
/// repeated columns are summed.
struct RowAccumulator {
    dense: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl RowAccumulator {
    fn new(cols: usize) -> Self {
        RowAccumulator {
            dense: vec![Scalar::ZERO; cols],
            touched: Vec::new(),
            mark: vec![false; cols],
        }
    }

    #[inline]
    fn add(&mut self, f: &FieldCtx, col: usize, v: Scalar) {
        if !self.mark[col] {
            self.mark[col] = true;
            self.touched.push(col);
        }
        self.dense[col] = f.add(self.dense[col], v);
    }

    fn flush(&mut self, indices: &mut Vec<usize>, values: &mut Vec<Scalar>) {
        self.touched.sort_unstable();
        for &c in &self.touched {
            let v = self.dense[c];
            if !v.is_zero() {
                indices.push(c);
                values.push(v);
            }
            self.dense[c] = Scalar::ZERO;
            self.mark[c] = false;
        }
        self.touched.clear();
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            indptr: vec![0; rows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Scalar::ONE)
    }

    pub fn scalar(n: usize, s: Scalar) -> Self {
        if s.is_zero() {
            return Self::zeros(n, n);
        }
        SparseMatrix {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![s; n],
        }
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        Self::from_triplets_unchecked(n, n, diag.iter().enumerate().map(|(i, &v)| (i, i, v)))
    }

    fn from_triplets_unchecked(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            if !v.is_zero() {
                per_row[i].push((j, v));
            }
        }
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for mut r in per_row {
            r.sort_by_key(|e| e.0);
            for w in r.windows(2) {
                assert!(w[0].0 != w[1].0, "duplicate entry; use from_triplets");
            }
            for (j, v) in r {
                indices.push(j);
                values.push(v);
            }
            indptr.push(indices.len());
        }
        SparseMatrix {
            rows,
            cols,
            indptr,
            indices,
            values,
        }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(
        f: &FieldCtx,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            per_row[i].push((j, v));
        }
        let mut acc = RowAccumulator::new(cols);
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in per_row {
            for (j, v) in r {
                acc.add(f, j, v);
            }
            acc.flush(&mut indices, &mut values);
            indptr.push(indices.len());
        }
        SparseMatrix {
            rows,
            cols,
            indptr,
            indices,
            values,
        }
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        Self::from_triplets_unchecked(
            m.rows,
            m.cols,
            (0..m.rows).flat_map(|i| (0..m.cols).map(move |j| (i, j, m.get(i, j)))),
        )
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                d.set(i, j, v);
            }
        }
        d
    }

    /// Row-major nested vectors, the export layout.
    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        let d = self.to_dense();
        (0..self.rows).map(|i| d.row(i).to_vec()).collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        let (lo, hi) = (self.indptr[i], self.indptr[i + 1]);
        self.indices[lo..hi]
            .iter()
            .copied()
            .zip(self.values[lo..hi].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let (lo, hi) = (self.indptr[i], self.indptr[i + 1]);
        match self.indices[lo..hi].binary_search(&j) {
            Ok(pos) => self.values[lo + pos],
            Err(_) => Scalar::ZERO,
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    pub fn diag(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    /// First position (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for i in 0..self.rows {
            let mut a = self.row(i).peekable();
            let mut b = other.row(i).peekable();
            loop {
                match (a.peek().copied(), b.peek().copied()) {
                    (None, None) => break,
                    (Some((j, _)), None) | (None, Some((j, _))) => return Some((i, j)),
                    (Some((ja, va)), Some((jb, vb))) => {
                        if ja < jb {
                            return Some((i, ja));
                        }
                        if jb < ja {
                            return Some((i, jb));
                        }
                        if va != vb {
                            return Some((i, ja));
                        }
                        a.next();
                        b.next();
                    }
                }
            }
        }
        None
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries().next().map(|(i, j, _)| (i, j))
    }

    pub fn mul(&self, f: &FieldCtx, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut acc = RowAccumulator::new(rhs.cols);
        let mut indptr = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, b) in rhs.row(k) {
                    acc.add(f, j, f.mul(a, b));
                }
            }
            acc.flush(&mut indices, &mut values);
            indptr.push(indices.len());
        }
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            indptr,
            indices,
            values,
        }
    }

    /// `α·self + β·rhs`.
    pub fn lin_comb(&self, f: &FieldCtx, alpha: Scalar, rhs: &SparseMatrix, beta: Scalar) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut acc = RowAccumulator::new(self.cols);
        let mut indptr = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                acc.add(f, j, f.mul(alpha, v));
            }
            for (j, v) in rhs.row(i) {
                acc.add(f, j, f.mul(beta, v));
            }
            acc.flush(&mut indices, &mut values);
            indptr.push(indices.len());
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            indptr,
            indices,
            values,
        }
    }

    pub fn add(&self, f: &FieldCtx, rhs: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(f, Scalar::ONE, rhs, Scalar::ONE)
    }

    pub fn sub(&self, f: &FieldCtx, rhs: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(f, Scalar::ONE, rhs, f.neg(Scalar::ONE))
    }

    pub fn scale(&self, f: &FieldCtx, s: Scalar) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in &mut out.values {
            *v = f.mul(*v, s);
        }
        out
    }

    pub fn neg(&self, f: &FieldCtx) -> SparseMatrix {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = f.neg(*v);
        }
        out
    }

    /// Kronecker product; row index of the result is `i·rhs.rows + k`.
    pub fn kron(&self, f: &FieldCtx, rhs: &SparseMatrix) -> SparseMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::with_capacity(self.nnz() * rhs.nnz());
        let mut values = Vec::with_capacity(self.nnz() * rhs.nnz());
        indptr.push(0);
        for i in 0..self.rows {
            for k in 0..rhs.rows {
                for (j, a) in self.row(i) {
                    for (l, b) in rhs.row(k) {
                        indices.push(j * rhs.cols + l);
                        values.push(f.mul(a, b));
                    }
                }
                indptr.push(indices.len());
            }
        }
        SparseMatrix {
            rows,
            cols,
            indptr,
            indices,
            values,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        Self::from_triplets_unchecked(self.cols, self.rows, self.entries().map(|(i, j, v)| (j, i, v)))
    }

    /// `self · v`.
    pub fn apply(&self, f: &FieldCtx, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .fold(Scalar::ZERO, |acc, (j, a)| f.mul_add(acc, a, v[j]))
            })
            .collect()
    }

    /// Block-diagonal sum of square or rectangular blocks.
    pub fn block_diag(blocks: &[&SparseMatrix]) -> SparseMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut entries = Vec::new();
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            entries.extend(b.entries().map(|(i, j, v)| (r0 + i, c0 + j, v)));
            r0 += b.rows;
            c0 += b.cols;
        }
        Self::from_triplets_unchecked(rows, cols, entries)
    }

    /// Matrix of the restriction of `self` to an invariant subspace.
    ///
    /// `basis[t]` is a sparse vector with coefficient 1 at `leads[t]` and
    /// coefficient 0 at every other lead; coordinates of an image vector are
    /// read off at the lead positions. Returns `None` if some image leaves
    /// the span.
    pub fn restrict(
        &self,
        f: &FieldCtx,
        basis: &[Vec<(usize, Scalar)>],
        leads: &[usize],
    ) -> Option<SparseMatrix> {
        let k = basis.len();
        let transposed = self.transpose();
        let mut entries = Vec::new();
        for (t, vec) in basis.iter().enumerate() {
            let mut image = vec![Scalar::ZERO; self.rows];
            for &(j, c) in vec {
                for (i, a) in transposed.row(j) {
                    image[i] = f.mul_add(image[i], a, c);
                }
            }
            let coords: Vec<(usize, Scalar)> = leads
                .iter()
                .enumerate()
                .filter(|&(_, &l)| !image[l].is_zero())
                .map(|(s, &l)| (s, image[l]))
                .collect();
            for &(s, c) in &coords {
                entries.push((s, t, c));
                for &(r, b) in &basis[s] {
                    image[r] = f.sub(image[r], f.mul(b, c));
                }
            }
            if image.iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        Some(Self::from_triplets(f, k, k, entries))
    }
}

/// Dense row-major matrix over `F_{p^2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, f: &FieldCtx, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    if !b.is_zero() {
                        *o = f.mul_add(*o, a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &FieldCtx, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            let pivot_row: Vec<Scalar> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                let row = &mut self.data[i * self.cols..(i + 1) * self.cols];
                for (x, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !pv.is_zero() {
                        *x = f.mul_add(*x, nf, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn nullspace(&self, f: &FieldCtx) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::ZERO; self.cols];
            v[free] = Scalar::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, f: &FieldCtx) -> Option<DenseMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = DenseMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Scalar::ONE);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Incrementally grown row-echelon basis of a subspace of `F^dim`.
///
/// Stored rows are normalized (pivot entry 1) and every stored row is zero
/// at the pivot columns of earlier rows, so reduction is a single pass.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn reduce(&self, f: &FieldCtx, v: &mut [Scalar]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = f.mul_add(*x, nc, r);
                }
            }
        }
    }

    pub fn contains(&self, f: &FieldCtx, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns false when `v` was already inside.
    pub fn insert(&mut self, f: &FieldCtx, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(w[pc]).expect("nonzero");
        for x in &mut w {
            *x = f.mul(*x, inv);
        }
        for row in &mut self.rows {
            let c = row[pc];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x = f.mul_add(*x, nc, r);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}
