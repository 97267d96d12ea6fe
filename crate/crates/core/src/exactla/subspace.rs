//! Subspaces of a coordinate space, stored with a canonical reduced echelon
//! basis so that equal subspaces compare equal as values. Coset
//! representatives are canonical too: a representative has zeros at every
//! pivot column of the subspace, so equal cosets yield identical vectors.

use super::field::{FieldSpec, Scalar};
use super::mat::{rank_and_echelon, Mat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub field: FieldSpec,
    pub ambient: usize,
    /// Rows form the reduced echelon basis; `basis.rows == dim`.
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors, reduced to the canonical basis.
    pub fn from_rows(field: FieldSpec, ambient: usize, rows: &[Vec<Scalar>]) -> Self {
        for r in rows {
            assert_eq!(r.len(), ambient, "spanning vector has wrong length");
        }
        let m = Mat::from_rows(field, ambient, rows);
        let ech = rank_and_echelon(&m);
        let kept: Vec<Vec<Scalar>> = (0..ech.rank).map(|i| ech.rref.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis: Mat::from_rows(field, ambient, &kept),
            pivots: ech.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows).map(|i| self.basis.row(i).to_vec()).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Span of the union of the two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::from_rows(self.field, self.ambient, &rows)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coset_representative(v).iter().all(|x| self.field.is_zero(x))
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|r| self.contains(r))
    }

    /// The unique vector in `v + self` whose coordinates at this subspace's
    /// pivot positions vanish. Constant on cosets.
    pub fn coset_representative(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let f = self.field;
        let mut rep = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            if !f.is_zero(&rep[c]) {
                let factor = rep[c].clone();
                for j in 0..self.ambient {
                    rep[j] = f.sub(&rep[j], &f.mul(&factor, self.basis.at(i, j)));
                }
            }
        }
        rep
    }

    /// Apply a linear map (given as a matrix) to this subspace.
    pub fn image_under(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols, self.ambient);
        let rows: Vec<Vec<Scalar>> = self.basis_rows().iter().map(|r| m.mul_vec(r)).collect();
        Subspace::from_rows(self.field, m.rows, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn sum_with_self_is_idempotent() {
        let f = f2();
        let u = Subspace::from_rows(f, 3, &[vec![f.one(), f.one(), f.zero()]]);
        assert_eq!(u.sum(&u), u);
    }

    #[test]
    fn full_space_has_zero_representatives() {
        let f = f2();
        let u = Subspace::full(f, 2);
        let v = vec![f.one(), f.one()];
        assert_eq!(u.coset_representative(&v), vec![f.zero(), f.zero()]);
    }

    #[test]
    fn representative_in_f2_squared() {
        // u = span{(1,1)}: the coset of (1,0) is {(1,0),(0,1)}; the canonical
        // representative zeroes the pivot coordinate, giving (0,1).
        let f = f2();
        let u = Subspace::from_rows(f, 2, &[vec![f.one(), f.one()]]);
        assert_eq!(u.coset_representative(&[f.one(), f.zero()]), vec![f.zero(), f.one()]);
        assert_eq!(u.coset_representative(&[f.zero(), f.one()]), vec![f.zero(), f.one()]);
    }
}
