use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Builds from integer rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), cols, "ragged rows");
            for (j, v) in row.as_ref().iter().enumerate() {
                m[(i, j)] = Rational::from_int(*v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = vec![Rational::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                o.add_mul(&self.data[i * self.cols + j], x);
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    /// Adds `block` into the submatrix with top-left corner `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = &block.data[i * block.cols + j];
                if !b.is_zero() {
                    let e = &mut self.data[(r0 + i) * self.cols + c0 + j];
                    *e += b;
                }
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..cols {
                    self.data.swap(p * cols + k, r * cols + k);
                }
            }
            let inv = self.data[r * cols + c].recip();
            if !inv.is_one() {
                for k in c..cols {
                    let v = &self.data[r * cols + k] * &inv;
                    self.data[r * cols + k] = v;
                }
            }
            let support: Vec<usize> = (c..cols).filter(|&k| !self.data[r * cols + k].is_zero()).collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for &k in &support {
                    let delta = &f * &self.data[r * cols + k];
                    let v = &self.data[i * cols + k] - &delta;
                    self.data[i * cols + k] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of `{v : self * v = 0}`.
    ///
    /// The basis vector attached to free column `f` has a 1 in row `f` and
    /// zeros in the rows of the other free columns.
    pub fn kernel(&self) -> ExactMatrix {
        self.kernel_subspace().basis
    }

    pub fn kernel_subspace(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = ExactMatrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            basis[(f, j)] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                basis[(p, j)] = -&r[(i, f)];
            }
        }
        Subspace { basis, pivots: free }
    }

    /// Columns form a basis of the column space.
    pub fn image(&self) -> ExactMatrix {
        self.image_subspace().basis
    }

    pub fn image_subspace(&self) -> Subspace {
        Subspace::span(self)
    }

    /// Solves `self * x = rhs` for one particular `x`, if consistent.
    pub fn solve(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = ExactMatrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() || self.rank() != self.rows {
            return None;
        }
        self.solve(&ExactMatrix::identity(self.rows))
    }

    /// Characteristic polynomial `det(t·I − self)`, coefficients in ascending
    /// degree (the last one is 1).
    ///
    /// Computed by reducing to upper Hessenberg form with exact similarity
    /// transforms and then running the standard Hessenberg recurrence.
    pub fn char_poly(&self) -> Vec<Rational> {
        assert!(self.is_square(), "char_poly of non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let Some(p) = (k + 1..n).find(|&i| !h[(i, k)].is_zero()) else {
                continue;
            };
            if p != k + 1 {
                for c in 0..n {
                    h.data.swap(p * n + c, (k + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + k + 1);
                }
            }
            let piv = h[(k + 1, k)].clone();
            for i in k + 2..n {
                if h[(i, k)].is_zero() {
                    continue;
                }
                let f = &h[(i, k)] / &piv;
                for c in 0..n {
                    let d = &f * &h[(k + 1, c)];
                    h[(i, c)] = &h[(i, c)] - &d;
                }
                for r in 0..n {
                    let d = &f * &h[(r, i)];
                    h[(r, k + 1)] = &h[(r, k + 1)] + &d;
                }
            }
        }
        // p[m] = char poly of the leading m×m block.
        let mut polys: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for m in 1..=n {
            let hm = &h[(m - 1, m - 1)];
            // (t - h_mm) * p[m-1]
            let prev = &polys[m - 1];
            let mut next = vec![Rational::zero(); m + 1];
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= &(hm * c);
            }
            let mut sub_prod = Rational::one();
            for i in (1..m).rev() {
                sub_prod = &sub_prod * &h[(i, i - 1)];
                if sub_prod.is_zero() {
                    break;
                }
                let coeff = &sub_prod * &h[(i - 1, m - 1)];
                if coeff.is_zero() {
                    continue;
                }
                for (d, c) in polys[i - 1].iter().enumerate() {
                    next[d] -= &(&coeff * c);
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// The integers `k` with `Ker(self − k·I) ≠ 0`.
    ///
    /// Candidates come from the rational-root theorem applied to the
    /// characteristic polynomial, restricted to the Gershgorin bound; each
    /// survivor is confirmed by a kernel computation.
    pub fn integer_eigenvalues(&self) -> BTreeSet<i64> {
        assert!(self.is_square());
        let mut out = BTreeSet::new();
        let n = self.rows;
        if n == 0 {
            return out;
        }
        let poly = self.char_poly();
        let low = poly.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            out.insert(0);
        }
        let reduced = &poly[low..];
        if reduced.len() == 1 {
            return out;
        }
        let mut lcm = BigInt::one();
        for c in reduced {
            lcm = lcm.lcm(&c.denom());
        }
        let constant = (reduced[0].numer() * (&lcm / reduced[0].denom())).abs();
        let mut bound = BigInt::zero();
        for r in 0..n {
            let mut s = Rational::zero();
            for c in 0..n {
                s += &self[(r, c)].abs();
            }
            bound = bound.max(s.ceil());
        }
        let bound = bound.min(constant.clone()).to_i64().expect("eigenvalue bound out of range");
        for k in 1..=bound {
            if !(&constant % BigInt::from(k)).is_zero() {
                continue;
            }
            for cand in [k, -k] {
                if eval_poly(reduced, &Rational::from_int(cand)).is_zero() {
                    out.insert(cand);
                }
            }
        }
        out.retain(|&k| self.shifted(k).rank() < n);
        out
    }

    /// `self − k·I`.
    pub fn shifted(&self, k: i64) -> ExactMatrix {
        let mut m = self.clone();
        let kk = Rational::from_int(k);
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = &m[(i, i)] - &kk;
        }
        m
    }

    /// Basis of the generalized eigenspace `⋃_m Ker (self − k·I)^m`.
    pub fn generalized_eigenspace(&self, k: i64) -> ExactMatrix {
        self.generalized_eigenspace_subspace(k).basis
    }

    pub fn generalized_eigenspace_subspace(&self, k: i64) -> Subspace {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Subspace::zero(0);
        }
        // Ker B ⊆ Ker B² ⊆ … stabilizes at the first repeat
        let b = self.shifted(k);
        let mut power = b.clone();
        let mut kernel = power.kernel_subspace();
        loop {
            if kernel.dim() == 0 || kernel.dim() == n {
                return kernel;
            }
            power = &power * &b;
            let next = power.kernel_subspace();
            if next.dim() == kernel.dim() {
                return kernel;
            }
            kernel = next;
        }
    }

    /// Kronecker product, `self`-major: entry `((i, k), (j, l)) = a_ij b_kl`.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = ExactMatrix::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * r2 + k, j * c2 + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Largest absolute entry, used for equivariance "defect" reports.
    pub fn max_abs(&self) -> Rational {
        self.data.iter().map(Rational::abs).max().unwrap_or_else(Rational::zero)
    }
}

pub(crate) fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `Q^d` stored as a column basis in reduced form: restricted
/// to the rows listed in `pivots`, the basis is the identity. Coordinates of a
/// member vector are therefore read off directly at the pivot rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub basis: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: ExactMatrix::zeros(ambient, 0), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { basis: ExactMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the columns of `gens`.
    pub fn span(gens: &ExactMatrix) -> Self {
        let (r, pivots) = gens.transpose().rref();
        let k = pivots.len();
        let basis = ExactMatrix::from_fn(gens.rows(), k, |i, j| r[(j, i)].clone());
        Subspace { basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.mul_vec(&c);
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates of every column of `m`, as a `dim × m.cols()` matrix.
    pub fn coordinates_of(&self, m: &ExactMatrix) -> Option<ExactMatrix> {
        let c = m.select(&self.pivots, &(0..m.cols()).collect::<Vec<_>>());
        if &(&self.basis * &c) == m {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.coordinates_of(&other.basis).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(2).kernel().cols(), 0);
        let z = ExactMatrix::zeros(2, 2).kernel();
        assert_eq!(z, ExactMatrix::identity(2));
        let k = ExactMatrix::from_rows(&[[1, 1], [1, 1]]).kernel();
        assert_eq!(k.cols(), 1);
        // proportional to (1, -1)
        assert_eq!(&k[(0, 0)] + &k[(1, 0)], r(0));
        assert!(!k[(0, 0)].is_zero());
    }

    #[test]
    fn generalized_eigenspace_examples() {
        let d = ExactMatrix::from_rows(&[[1, 0, 0], [0, 1, 0], [0, 0, 2]]);
        assert_eq!(d.generalized_eigenspace(1).cols(), 2);
        let j = ExactMatrix::from_rows(&[[3, 1], [0, 3]]);
        assert_eq!(j.generalized_eigenspace(3).cols(), 2);
        assert_eq!(j.kernel_subspace().dim(), 0);
        assert_eq!(j.shifted(3).kernel().cols(), 1);
    }

    #[test]
    fn integer_eigenvalue_examples() {
        let d = ExactMatrix::from_rows(&[[0, 0, 0], [0, 0, 0], [0, 0, 5]]);
        assert_eq!(d.integer_eigenvalues().into_iter().collect::<Vec<_>>(), vec![0, 5]);
        let nil = ExactMatrix::from_rows(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        assert_eq!(nil.integer_eigenvalues().into_iter().collect::<Vec<_>>(), vec![0]);
        // x^2 - 2 has no rational roots.
        let irr = ExactMatrix::from_rows(&[[0, 2], [1, 0]]);
        assert!(irr.integer_eigenvalues().is_empty());
        let half = ExactMatrix::from_fn(1, 1, |_, _| Rational::new(1, 2));
        assert!(half.integer_eigenvalues().is_empty());
    }

    #[test]
    fn char_poly_matches_companion() {
        // companion matrix of t^3 - 6t^2 + 11t - 6 = (t-1)(t-2)(t-3)
        let m = ExactMatrix::from_rows(&[[0, 0, 6], [1, 0, -11], [0, 1, 6]]);
        assert_eq!(m.char_poly(), vec![r(-6), r(11), r(-6), r(1)]);
        assert_eq!(m.integer_eigenvalues().into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn solve_and_inverse() {
        let m = ExactMatrix::from_rows(&[[2, 1], [1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ExactMatrix::identity(2));
        let sing = ExactMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&ExactMatrix::from_rows(&[[1], [0]])).is_none());
    }

    #[test]
    fn subspace_coordinates() {
        let gens = ExactMatrix::from_rows(&[[1, 2], [1, 2], [0, 1]]);
        let s = Subspace::span(&gens);
        assert_eq!(s.dim(), 2);
        let v = vec![r(3), r(3), r(5)];
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.basis.mul_vec(&c), v);
        assert!(s.coordinates(&[r(1), r(0), r(0)]).is_none());
    }
}
