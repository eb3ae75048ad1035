//! Dense exact matrices, subspaces in reduced echelon form and sparse vectors.

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, rs: Vec<Vec<F>>) -> Self {
        assert_eq!(rs.len(), rows);
        let mut data = Vec::with_capacity(rows * cols);
        for r in rs {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Mat { rows, cols, data }
    }

    pub fn from_cols(rows: usize, cs: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cs.len());
        for (j, c) in cs.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = o.row(k);
                let base = i * out.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    o.add_mul_assign(a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        let data = self.data.iter().map(|a| a.mul_ref(s)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn add_scaled_assign(&mut self, o: &Self, s: &F) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            a.add_mul_assign(b, s);
        }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let mut m = Self::zeros(self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..o.cols {
                m.set(r, self.cols + c, o.get(r, c).clone());
            }
        }
        m
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Submatrix of the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Place `blk` at offset (r0, c0).
    pub fn put(&mut self, r0: usize, c0: usize, blk: &Self) {
        for r in 0..blk.rows {
            for c in 0..blk.cols {
                self.set(r0 + r, c0 + c, blk.get(r, c).clone());
            }
        }
    }

    /// Reduced row echelon form with leftmost pivots; returns pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            if !inv.is_one() {
                for j in c..cols {
                    let v = self.get(r, j).mul_ref(&inv);
                    self.set(r, j, v);
                }
            }
            let prow: Vec<(usize, F)> =
                (c..cols).filter(|&j| !self.get(r, j).is_zero()).map(|j| (j, self.get(r, j).clone())).collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &prow {
                    self.data[i * cols + j].sub_mul_assign(&f, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows < self.cols {
            return self.transpose().rref().1.len();
        }
        self.rref().1.len()
    }

    /// Basis of { x : self * x = 0 }.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                let x = r.get(i, free);
                if !x.is_zero() {
                    v[p] = x.neg_ref();
                }
            }
            out.push(v);
        }
        out
    }

    /// Some x with self * x = b, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let bcol = Mat::from_cols(self.rows, &[b.to_vec()]);
        let aug = self.hstack(&bcol);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solve self * X = B column by column; None if any column is inconsistent.
    pub fn solve_mat(&self, b: &Self) -> Option<Self> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.select(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add_ref(self.get(i, i));
        }
        t
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Column space basis (as column vectors).
    pub fn image(&self) -> Vec<Vec<F>> {
        Subspace::from_vectors(self.rows, self.col_vecs()).basis().to_vec()
    }
}

/// A subspace of F^n stored as reduced rows whose pivot is the *rightmost*
/// nonzero entry. Under this convention the non-pivot coordinates, which
/// index a complement, are biased towards small indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    pub ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    pivot_of: Vec<Option<usize>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new(), pivot_of: vec![None; ambient] }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            let mut v = vec![F::zero(); ambient];
            v[i] = F::one();
            s.insert(v);
        }
        s
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vs: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_of[i].is_some()
    }

    /// Coordinates outside the pivot set; they index a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&i| self.pivot_of[i].is_none()).collect()
    }

    /// v minus its projection onto the span along the complement coordinates.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        v
    }

    pub fn reduce_in_place(&self, v: &mut [F]) {
        // rows are mutually reduced, so order is irrelevant
        for i in 0..self.rows.len() {
            let p = self.pivots[i];
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, x) in self.rows[i].iter().enumerate() {
                if !x.is_zero() {
                    v[j].sub_mul_assign(&f, x);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of v in the stored basis, if v lies in the span.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates assuming membership (no check).
    pub fn coords_unchecked(&self, v: &[F]) -> Vec<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Image of v in the quotient, in complement coordinates.
    pub fn quotient_coords(&self, v: &[F]) -> Vec<F> {
        let r = self.reduce(v);
        self.non_pivots().into_iter().map(|i| r[i].clone()).collect()
    }

    /// Insert v; returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut v = v;
        self.reduce_in_place(&mut v);
        let Some(p) = v.iter().rposition(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv();
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = x.mul_ref(&inv);
                }
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[j].sub_mul_assign(&f, x);
                }
            }
        }
        self.pivot_of[p] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for r in &o.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersect(&self, o: &Self) -> Self {
        // x in both: x = sum a_i s_i = sum b_j o_j
        let n = self.ambient;
        if self.dim() == 0 || o.dim() == 0 {
            return Self::zero(n);
        }
        let mut cols: Vec<Vec<F>> = self.rows.clone();
        cols.extend(o.rows.iter().map(|r| r.iter().map(|x| x.neg_ref()).collect()));
        let m = Mat::from_cols(n, &cols);
        let ker = m.kernel();
        let k = self.dim();
        Self::from_vectors(
            n,
            ker.into_iter().map(|c| {
                let mut v = vec![F::zero(); n];
                for (i, a) in c[..k].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, x) in self.rows[i].iter().enumerate() {
                        v[j].add_mul_assign(a, x);
                    }
                }
                v
            }),
        )
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.rows.iter().all(|r| o.contains(r))
    }

    /// Canonical form for comparisons: rows sorted by pivot.
    pub fn canonical_rows(&self) -> Vec<Vec<F>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn same_as(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.dim() == o.dim() && self.is_subspace_of(o)
    }

    /// Basis vectors as columns of a matrix (ambient x dim).
    pub fn as_columns(&self) -> Mat<F> {
        Mat::from_cols(self.ambient, &self.rows)
    }
}

/// Sparse vector: (index, coefficient) sorted by index, no zeros.
pub type SVec<F> = Vec<(usize, F)>;

pub fn svec_from_dense<F: Field>(v: &[F]) -> SVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn svec_to_dense<F: Field>(v: &SVec<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = out[*i].add_ref(x);
    }
    out
}

/// acc += s * v, for dense acc.
pub fn axpy_sparse<F: Field>(acc: &mut [F], s: &F, v: &SVec<F>) {
    if s.is_zero() {
        return;
    }
    for (i, x) in v {
        acc[*i].add_mul_assign(s, x);
    }
}

/// Normalise a list of (index, coeff) pairs: merge duplicates, drop zeros.
pub fn svec_normalize<F: Field>(mut v: Vec<(usize, F)>) -> SVec<F> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SVec<F> = Vec::with_capacity(v.len());
    for (i, x) in v {
        if let Some(last) = out.last_mut() {
            if last.0 == i {
                last.1 = last.1.add_ref(&x);
                continue;
            }
        }
        out.push((i, x));
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn m(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        let r = rows.len();
        let c = rows[0].len();
        Mat::from_rows(r, c, rows.into_iter().map(|row| row.into_iter().map(Rat::from_i64).collect()).collect())
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(vec![vec![2, 1], vec![7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn subspace_ops() {
        let v = |xs: [i64; 3]| xs.iter().map(|&x| Rat::from_i64(x)).collect::<Vec<_>>();
        let s = Subspace::from_vectors(3, vec![v([1, 1, 0]), v([0, 1, 1])]);
        let t = Subspace::from_vectors(3, vec![v([1, 0, 0]), v([0, 0, 1])]);
        assert_eq!(s.dim(), 2);
        let i = s.intersect(&t);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v([1, 0, -1])));
        assert_eq!(s.sum(&t).dim(), 3);
        assert_eq!(s.non_pivots(), vec![0]);
        let c = s.coords(&v([2, 3, 1])).unwrap();
        let back: Vec<Rat> = (0..3)
            .map(|j| {
                let mut acc = Rat::from_i64(0);
                for (k, r) in s.basis().iter().enumerate() {
                    acc = acc + c[k].clone() * r[j].clone();
                }
                acc
            })
            .collect();
        assert_eq!(back, v([2, 3, 1]));
    }
}
