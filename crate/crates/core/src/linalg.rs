//! Exact linear algebra over the rationals.
//!
//! Vectors are dense `Vec<Q>`; matrices act on column vectors. Subspaces keep
//! a fully reduced row echelon basis, so coordinates of a member vector are
//! read off at the pivot columns.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    Inconsistent,
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = zero_vec(n);
    v[i] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `v += c * w`.
pub fn axpy(v: &mut [Q], c: &Q, w: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// A small integer view when the rational is integral and fits.
pub fn as_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].clone_from_slice(r);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        QMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| q(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Q) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Q> {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Q, other: &QMatrix) {
        axpy(&mut self.data, c, &other.data);
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |s, i| s + self.get(i, i))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let y = m.get(i, j) - &f * x;
                        m.set(i, j, y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        Subspace::from_vectors(self.cols, (0..self.rows).map(|i| self.row_vec(i))).dim()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = zero_vec(self.cols);
                x[f] = Q::one();
                for (k, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(k, f).clone();
                }
                x
            })
            .collect()
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[Q]) -> Result<Vec<Q>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} system with right side of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = zero_vec(self.cols);
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Ok(x)
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..m.rows {
                let f = m.get(i, c) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let y = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, y);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `Q^n` with a fully reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, (0..ambient).map(|i| unit_vec(ambient, i)))
    }

    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vec<Q>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -r[p].clone();
                axpy(&mut r, &c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for b in self.basis.iter_mut() {
            if !b[p].is_zero() {
                let c = -b[p].clone();
                axpy(b, &c, &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.basis.insert(pos, r);
        true
    }

    /// Coordinates of a member vector with respect to `basis()`.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve  Σ a_i u_i = Σ b_j w_j.
        let k = self.dim();
        let cols: Vec<Vec<Q>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()))
            .collect();
        if cols.is_empty() {
            return Subspace::zero(self.ambient);
        }
        let m = QMatrix::from_columns(&cols, self.ambient);
        let kernel = m.kernel();
        Subspace::from_vectors(
            self.ambient,
            kernel.into_iter().map(|x| {
                let mut v = zero_vec(self.ambient);
                for (a, u) in x[..k].iter().zip(&self.basis) {
                    axpy(&mut v, a, u);
                }
                v
            }),
        )
    }

    /// Coordinates, in the complement basis `{e_j : j not a pivot}`, of the
    /// class of `v` in the quotient `Q^n / self`.
    pub fn quotient_coords(&self, v: &[Q]) -> Vec<Q> {
        let r = self.reduce(v);
        self.complement_indices()
            .into_iter()
            .map(|j| r[j].clone())
            .collect()
    }

    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|j| !self.pivots.contains(j)).collect()
    }

    /// Solutions `x` of `<b, x> = 0` for every basis row `b`.
    pub fn annihilator(&self) -> Vec<Vec<Q>> {
        self.complement_indices()
            .into_iter()
            .map(|f| {
                let mut x = unit_vec(self.ambient, f);
                for (b, &p) in self.basis.iter().zip(&self.pivots) {
                    x[p] = -b[f].clone();
                }
                x
            })
            .collect()
    }
}

/// Smallest subspace containing `vectors` and stable under all `actions`.
pub fn spin(ambient: usize, vectors: impl IntoIterator<Item = Vec<Q>>, actions: &[QMatrix]) -> Subspace {
    let mut space = Subspace::zero(ambient);
    let mut queue = Vec::new();
    for v in vectors {
        if space.insert(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for a in actions {
            let w = a.mul_vec(&v);
            if space.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    space
}

/// Matrix of `action` restricted to the invariant subspace `sub`, in the
/// basis `sub.basis()`.
pub fn restrict(action: &QMatrix, sub: &Subspace) -> QMatrix {
    let d = sub.dim();
    let mut m = QMatrix::zeros(d, d);
    for (j, b) in sub.basis().iter().enumerate() {
        let img = action.mul_vec(b);
        for (i, c) in sub.coords(&img).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Matrix of `action` on the quotient by the invariant subspace `sub`, in the
/// complement basis of [`Subspace::quotient_coords`].
pub fn induced_on_quotient(action: &QMatrix, sub: &Subspace) -> QMatrix {
    let comp = sub.complement_indices();
    let d = comp.len();
    let n = sub.ambient();
    let mut m = QMatrix::zeros(d, d);
    for (j, &c) in comp.iter().enumerate() {
        let img = action.mul_vec(&unit_vec(n, c));
        for (i, x) in sub.quotient_coords(&img).into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// Integer rank test helper: whether a square matrix is singular.
pub fn is_singular(m: &QMatrix) -> bool {
    m.determinant().is_zero()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_rank() {
        assert_eq!(QMatrix::identity(2).rank(), 2);
    }

    #[test]
    fn solve_and_kernel() {
        let m = QMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 7]);
        let x = m.solve(&[q(1), q(3)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(3)]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&k[0])));
        let bad = QMatrix::from_i64(2, 1, &[1, 1]);
        assert_eq!(bad.solve(&[q(1), q(2)]), Err(LinalgError::Inconsistent));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = QMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(m.determinant(), q(1));
        assert_eq!(m.mul(&m.inverse().unwrap()), QMatrix::identity(2));
        assert!(QMatrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(3, [vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::from_vectors(3, [vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[q(0), q(5), q(0)]));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn spin_regular_action_from_identity() {
        // Regular action of Q[C3] on itself, spun from the identity element.
        let n = 3;
        let shift = QMatrix::from_i64(n, n, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        let s = spin(n, [unit_vec(n, 0)], &[shift]);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn quotient_action() {
        let a = QMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let sub = spin(2, [unit_vec(2, 0)], &[a.clone()]);
        assert_eq!(sub.dim(), 1);
        let qm = induced_on_quotient(&a, &sub);
        assert_eq!(qm, QMatrix::identity(1));
        assert_eq!(restrict(&a, &sub), QMatrix::identity(1));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-4i64..5, 12), den in 1i64..4) {
            let m = QMatrix::from_i64(3, 4, &entries).scale(&q_frac(1, den));
            prop_assert_eq!(m.rank() + m.kernel().len(), 4);
            for k in m.kernel() {
                prop_assert!(is_zero_vec(&m.mul_vec(&k)));
            }
        }

        #[test]
        fn quotient_coords_vanish_on_subspace(entries in prop::collection::vec(-3i64..4, 8)) {
            let vs: Vec<Vec<Q>> = entries.chunks(4).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
            let s = Subspace::from_vectors(4, vs.clone());
            for v in &vs {
                prop_assert!(is_zero_vec(&s.quotient_coords(v)));
                let c = s.coords(v);
                let mut back = zero_vec(4);
                for (a, b) in c.iter().zip(s.basis()) { axpy(&mut back, a, b); }
                prop_assert_eq!(&back, v);
            }
        }
    }
}
