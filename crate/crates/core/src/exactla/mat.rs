//! Dense matrices over an exact field, with reduced row echelon form and
//! linear solving. Hom-space dimensions in this crate stay small (well under
//! a hundred), so a dense row-major layout is all we need.

use super::field::{FieldSpec, Scalar};
use super::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries; `data.len() == rows * cols`.
    pub data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Mat { field, rows: rows.len(), cols, data }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        Mat::from_fn(f, self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                acc = f.add(&acc, &f.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.at(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.field.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.field.neg(self.at(i, j)))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.field.mul(self.at(i, j), s))
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Append `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub rref: Mat,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form. Deterministic: the pivot in each step is the
/// first nonzero entry scanning down the leftmost unfinished column.
pub fn rank_and_echelon(m: &Mat) -> Echelon {
    let f = m.field;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r >= a.rows {
            break;
        }
        let mut pivot_row = None;
        for i in r..a.rows {
            if !f.is_zero(a.at(i, c)) {
                pivot_row = Some(i);
                break;
            }
        }
        let Some(p) = pivot_row else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.at(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            let v = f.mul(a.at(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i != r && !f.is_zero(a.at(i, c)) {
                let factor = a.at(i, c).clone();
                for j in c..a.cols {
                    let v = f.sub(a.at(i, j), &f.mul(&factor, a.at(r, j)));
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rank: r, rref: a, pivots }
}

/// The full solution set of `A x = b`, when consistent.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub nullspace: Subspace,
}

/// Solve `A x = b` exactly. `None` means no solution (a value, not a
/// failure). The particular solution sets all free variables to zero, so it
/// is canonical for a fixed `A`, `b`.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Solution> {
    assert_eq!(a.rows, b.len(), "rhs length mismatch");
    let f = a.field;
    let rhs = Mat::from_rows(f, b.len(), &[b.to_vec()]).transpose();
    let aug = a.hstack(&rhs);
    let ech = rank_and_echelon(&aug);
    if ech.pivots.contains(&a.cols) {
        return None;
    }
    let mut particular = vec![f.zero(); a.cols];
    for (i, &c) in ech.pivots.iter().enumerate() {
        particular[c] = ech.rref.at(i, a.cols).clone();
    }
    Some(Solution { particular, nullspace: nullspace(a) })
}

/// The kernel `{x : Ax = 0}` with its canonical reduced basis.
pub fn nullspace(a: &Mat) -> Subspace {
    let f = a.field;
    let ech = rank_and_echelon(a);
    let pivot_set: Vec<usize> = ech.pivots.clone();
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![f.zero(); a.cols];
        v[free] = f.one();
        for (i, &c) in pivot_set.iter().enumerate() {
            v[c] = f.neg(ech.rref.at(i, free));
        }
        basis.push(v);
    }
    Subspace::from_rows(f, a.cols, &basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn vecs(field: FieldSpec, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let m = Mat::identity(f2(), 2);
        let e = rank_and_echelon(&m);
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.rref, m);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = Mat::zeros(f2(), 3, 3);
        let e = rank_and_echelon(&m);
        assert_eq!(e.rank, 0);
        assert!(e.pivots.is_empty());
    }

    #[test]
    fn rank_one_over_f2() {
        // [[1,1],[1,1]] over F_2 row-reduces to a single nonzero row.
        let f = f2();
        let m = Mat::from_rows(f, 2, &vecs(f, &[&[1, 1], &[1, 1]]));
        assert_eq!(rank_and_echelon(&m).rank, 1);
    }

    #[test]
    fn solve_identity_is_rhs() {
        let f = FieldSpec::prime(5).unwrap();
        let a = Mat::identity(f, 3);
        let b = vec![f.from_i64(2), f.from_i64(0), f.from_i64(4)];
        let s = solve(&a, &b).unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.nullspace.dim(), 0);
    }

    #[test]
    fn solve_zero_system() {
        let f = f2();
        let a = Mat::zeros(f, 2, 2);
        let b = vec![f.zero(), f.zero()];
        let s = solve(&a, &b).unwrap();
        assert_eq!(s.particular, vec![f.zero(), f.zero()]);
        assert_eq!(s.nullspace.dim(), 2);
        let b1 = vec![f.one(), f.zero()];
        assert!(solve(&a, &b1).is_none());
    }

    #[test]
    fn solve_underdetermined_over_f2() {
        // A = [[1,1]], b = [1]: particular (1,0), nullspace spanned by (1,1).
        // Cross-checked by enumerating all four vectors of F_2^2.
        let f = f2();
        let a = Mat::from_rows(f, 2, &vecs(f, &[&[1, 1]]));
        let s = solve(&a, &[f.one()]).unwrap();
        assert_eq!(s.particular, vec![f.one(), f.zero()]);
        assert_eq!(s.nullspace.dim(), 1);
        assert!(s.nullspace.contains(&[f.one(), f.one()]));
        let mut sols = 0;
        for x0 in 0..2 {
            for x1 in 0..2 {
                let v = vec![f.from_i64(x0), f.from_i64(x1)];
                if a.mul_vec(&v) == vec![f.one()] {
                    sols += 1;
                    let diff: Vec<Scalar> =
                        v.iter().zip(&s.particular).map(|(x, p)| f.sub(x, p)).collect();
                    assert!(s.nullspace.contains(&diff));
                }
            }
        }
        assert_eq!(sols, 2);
    }
}
