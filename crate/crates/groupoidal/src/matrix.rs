//! Dense matrices over an arbitrary scalar, with exact integer routines
//! (Smith normal form, lattice kernels and solves) for integer-like scalars
//! and Gaussian elimination for field-like scalars.

use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};
use std::ops::Neg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<T>>) -> Self {
        let c = cols.len();
        assert!(cols.iter().all(|col| col.len() == rows), "ragged columns");
        Matrix::from_fn(rows, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self.get(i, j).clone() } else { other.get(i - self.rows, j).clone() }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Direct sum: block diagonal of self and other.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                T::zero()
            }
        })
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    /// Kronecker (tensor) product.
    pub fn kronecker(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (a, b) = (i / other.rows, i % other.rows);
            let (c, d) = (j / other.cols, j % other.cols);
            self.get(a, c).clone() * other.get(b, d).clone()
        })
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Matrix<T> {
    pub fn neg(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j).clone())
    }
}

/// Smith normal form `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with a divisibility chain. Inverses of the transforms are
/// tracked so that column-span bases can be read off directly.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: Clone + Zero> Smith<T> {
    /// Diagonal entries of `d`, including zeros, up to min(rows, cols).
    pub fn diag(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diag().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form<T>(m: &Matrix<T>) -> Smith<T>
where
    T: Integer + Signed + Clone,
{
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = Matrix::<T>::identity(rows);
    let mut u_inv = Matrix::<T>::identity(rows);
    let mut v = Matrix::<T>::identity(cols);
    let mut v_inv = Matrix::<T>::identity(cols);

    // Row ops on (a, u) with the inverse column op on u_inv.
    let row_swap = |a: &mut Matrix<T>, u: &mut Matrix<T>, ui: &mut Matrix<T>, i: usize, k: usize| {
        for j in 0..a.cols() {
            let x = a.get(i, j).clone();
            a.set(i, j, a.get(k, j).clone());
            a.set(k, j, x);
        }
        for j in 0..u.cols() {
            let x = u.get(i, j).clone();
            u.set(i, j, u.get(k, j).clone());
            u.set(k, j, x);
        }
        for r in 0..ui.rows() {
            let x = ui.get(r, i).clone();
            ui.set(r, i, ui.get(r, k).clone());
            ui.set(r, k, x);
        }
    };
    // row_i -= q * row_k
    let row_sub = |a: &mut Matrix<T>, u: &mut Matrix<T>, ui: &mut Matrix<T>, i: usize, k: usize, q: &T| {
        for j in 0..a.cols() {
            let x = a.get(i, j).clone() - q.clone() * a.get(k, j).clone();
            a.set(i, j, x);
        }
        for j in 0..u.cols() {
            let x = u.get(i, j).clone() - q.clone() * u.get(k, j).clone();
            u.set(i, j, x);
        }
        // inverse: col_k += q * col_i
        for r in 0..ui.rows() {
            let x = ui.get(r, k).clone() + q.clone() * ui.get(r, i).clone();
            ui.set(r, k, x);
        }
    };
    let col_swap = |a: &mut Matrix<T>, v: &mut Matrix<T>, vi: &mut Matrix<T>, i: usize, k: usize| {
        for r in 0..a.rows() {
            let x = a.get(r, i).clone();
            a.set(r, i, a.get(r, k).clone());
            a.set(r, k, x);
        }
        for r in 0..v.rows() {
            let x = v.get(r, i).clone();
            v.set(r, i, v.get(r, k).clone());
            v.set(r, k, x);
        }
        for j in 0..vi.cols() {
            let x = vi.get(i, j).clone();
            vi.set(i, j, vi.get(k, j).clone());
            vi.set(k, j, x);
        }
    };
    // col_i -= q * col_k
    let col_sub = |a: &mut Matrix<T>, v: &mut Matrix<T>, vi: &mut Matrix<T>, i: usize, k: usize, q: &T| {
        for r in 0..a.rows() {
            let x = a.get(r, i).clone() - q.clone() * a.get(r, k).clone();
            a.set(r, i, x);
        }
        for r in 0..v.rows() {
            let x = v.get(r, i).clone() - q.clone() * v.get(r, k).clone();
            v.set(r, i, x);
        }
        // inverse: row_k += q * row_i
        for j in 0..vi.cols() {
            let x = vi.get(k, j).clone() + q.clone() * vi.get(i, j).clone();
            vi.set(k, j, x);
        }
    };

    let mut t = 0usize;
    while t < rows.min(cols) {
        // Pivot: least nonzero absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() {
                    match &pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if a.get(i, j).abs() < a.get(*pi, *pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            row_swap(&mut a, &mut u, &mut u_inv, t, pi);
        }
        if pj != t {
            col_swap(&mut a, &mut v, &mut v_inv, t, pj);
        }

        loop {
            // Reduce the pivot column and row.
            let mut dirty = false;
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_rem(a.get(t, t)).0;
                    row_sub(&mut a, &mut u, &mut u_inv, i, t, &q);
                    if !a.get(i, t).is_zero() {
                        // Remainder is smaller than the pivot; promote it.
                        row_swap(&mut a, &mut u, &mut u_inv, t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_rem(a.get(t, t)).0;
                    col_sub(&mut a, &mut v, &mut v_inv, j, t, &q);
                    if !a.get(t, j).is_zero() {
                        col_swap(&mut a, &mut v, &mut v_inv, t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a.get(i, j).mod_floor(a.get(t, t)).is_zero() {
                        // Fold row i into row t and restart the reduction.
                        let minus_one = -T::one();
                        row_sub(&mut a, &mut u, &mut u_inv, t, i, &minus_one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a.get(t, t).is_negative() {
            // Negate row t.
            for j in 0..cols {
                let x = -a.get(t, j).clone();
                a.set(t, j, x);
            }
            for j in 0..rows {
                let x = -u.get(t, j).clone();
                u.set(t, j, x);
            }
            for r in 0..rows {
                let x = -u_inv.get(r, t).clone();
                u_inv.set(r, t, x);
            }
        }
        t += 1;
    }

    Smith { d: a, u, v, u_inv, v_inv }
}

impl<T: Integer + Signed + Clone> Matrix<T> {
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    /// Basis of the integer kernel lattice, as columns.
    pub fn kernel(&self) -> Matrix<T> {
        let s = smith_normal_form(self);
        let d = s.diag();
        let mut cols = Vec::new();
        for j in 0..self.cols() {
            let zero_col = j >= d.len() || d[j].is_zero();
            if zero_col {
                cols.push(s.v.col(j));
            }
        }
        Matrix::from_cols(self.cols(), cols)
    }

    /// Basis of the column-span lattice, as columns (an exact lattice basis
    /// of the image of `self` as a subgroup of Z^rows).
    pub fn column_span_basis(&self) -> Matrix<T> {
        let s = smith_normal_form(self);
        let d = s.diag();
        let mut cols = Vec::new();
        for (i, di) in d.iter().enumerate() {
            if !di.is_zero() {
                let mut c = s.u_inv.col(i);
                for x in c.iter_mut() {
                    *x = x.clone() * di.clone();
                }
                cols.push(c);
            }
        }
        Matrix::from_cols(self.rows(), cols)
    }
}

/// A reusable integer solver for `A x = b` built from one Smith decomposition.
pub struct IntSolver<T> {
    smith: Smith<T>,
}

impl<T: Integer + Signed + Clone> IntSolver<T> {
    pub fn new(a: &Matrix<T>) -> Self {
        IntSolver { smith: smith_normal_form(a) }
    }

    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let s = &self.smith;
        let rows = s.d.rows();
        let cols = s.d.cols();
        assert_eq!(b.len(), rows, "solve dimension mismatch");
        let ub = s.u.mul_vec(b);
        let d = s.diag();
        let mut y = vec![T::zero(); cols];
        for i in 0..rows {
            if i < d.len() && !d[i].is_zero() {
                let (q, r) = ub[i].div_rem(&d[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ub[i].is_zero() {
                return None;
            }
        }
        Some(s.v.mul_vec(&y))
    }

    /// Solve `A X = B` columnwise; None if any column is unsolvable.
    pub fn solve_matrix(&self, b: &Matrix<T>) -> Option<Matrix<T>> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            cols.push(self.solve(&b.col(j))?);
        }
        Some(Matrix::from_cols(self.smith.d.cols(), cols))
    }
}

impl<T: Integer + Signed + Clone> Matrix<T> {
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        IntSolver::new(self).solve(b)
    }

    pub fn solve_matrix(&self, b: &Matrix<T>) -> Option<Matrix<T>> {
        IntSolver::new(self).solve_matrix(b)
    }
}

// Field-scalar routines (Gaussian elimination).
impl<T> Matrix<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r >= rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
            for j in 0..cols {
                let x = a.get(r, j).clone();
                a.set(r, j, a.get(pr, j).clone());
                a.set(pr, j, x);
            }
            let inv = T::one() / a.get(r, c).clone();
            for j in 0..cols {
                let x = a.get(r, j).clone() * inv.clone();
                a.set(r, j, x);
            }
            for i in 0..rows {
                if i != r && !a.get(i, c).is_zero() {
                    let f = a.get(i, c).clone();
                    for j in 0..cols {
                        let x = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                        a.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank_field(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, as columns.
    pub fn kernel_field(&self) -> Matrix<T> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut cols = Vec::new();
        for &f in &free {
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            cols.push(v);
        }
        Matrix::from_cols(self.cols, cols)
    }

    pub fn solve_field(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.rows, vec![b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse_field(&self) -> Option<Matrix<T>> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hstack(&Matrix::identity(self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots[..self.rows.min(pivots.len())] != (0..self.rows).collect::<Vec<_>>()[..] {
            return None;
        }
        Some(Matrix::from_fn(self.rows, self.cols, |i, j| r.get(i, self.cols + j).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, IntMatrix, Rat};
    use num_traits::FromPrimitive;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        Matrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect(),
        )
    }

    fn check_snf(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "u*m*v != d");
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(a.cols()));
        let d = s.diag();
        for w in d.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain broken");
            } else {
                assert!(w[1].is_zero(), "zero before nonzero in diagonal");
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero(), "off-diagonal entry");
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let a: IntMatrix = Matrix::identity(3);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        check_snf(&a);
    }

    #[test]
    fn snf_hand_oracle() {
        // Worked by hand before the engine existed: [[2,4],[6,8]] has
        // d1 = gcd of entries = 2, d1*d2 = |det| = |16-24| = 8, so diag(2,4).
        let a = m(vec![vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag(), vec![Int::from(2), Int::from(4)]);
        check_snf(&a);
    }

    #[test]
    fn snf_zero() {
        let a: IntMatrix = Matrix::zeros(2, 3);
        let s = smith_normal_form(&a);
        assert!(s.d.is_zero());
        check_snf(&a);
    }

    #[test]
    fn snf_empty_shapes() {
        check_snf(&Matrix::zeros(0, 4));
        check_snf(&Matrix::zeros(4, 0));
        check_snf(&Matrix::zeros(0, 0));
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(a.kernel().cols(), 0);
        let b = vec![Int::from(2), Int::from(6)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        // 2x + 4y = 1 has no integer solution.
        assert!(a.solve(&[Int::from(1), Int::from(3)]).is_none());

        let k = m(vec![vec![1, 1, 1]]).kernel();
        assert_eq!(k.cols(), 2);
        assert!(m(vec![vec![1, 1, 1]]).mul(&k).is_zero());
    }

    #[test]
    fn column_span_basis_is_saturating() {
        let a = m(vec![vec![2, 4], vec![6, 8]]);
        let basis = a.column_span_basis();
        assert_eq!(basis.cols(), 2);
        // Every original column is an integer combination of the basis.
        assert!(basis.solve_matrix(&a).is_some());
    }

    #[test]
    fn field_routines() {
        let q = |n: i64, d: i64| Rat::new(Int::from(n), Int::from(d));
        let a: Matrix<Rat> = Matrix::from_rows(vec![
            vec![q(1, 1), q(2, 1)],
            vec![q(3, 1), q(4, 1)],
        ]);
        assert_eq!(a.rank_field(), 2);
        let inv = a.inverse_field().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let b = vec![q(1, 1), q(1, 1)];
        let x = a.solve_field(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let singular: Matrix<Rat> = Matrix::from_rows(vec![
            vec![q(1, 1), q(2, 1)],
            vec![q(2, 1), q(4, 1)],
        ]);
        assert_eq!(singular.rank_field(), 1);
        assert_eq!(singular.kernel_field().cols(), 1);
        assert!(singular.inverse_field().is_none());
        let _ = Rat::from_i64(0);
    }

    #[test]
    fn kronecker_shape() {
        let a = m(vec![vec![1, 2]]);
        let b = m(vec![vec![3], vec![4]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(*k.get(0, 0), Int::from(3));
        assert_eq!(*k.get(1, 1), Int::from(8));
    }
}
