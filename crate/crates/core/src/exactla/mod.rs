//! Exact linear algebra over F_p and Q: the substrate every hom-space
//! computation sits on.

mod field;
mod mat;
mod subspace;

pub use field::{FieldSpec, Scalar};
pub use mat::{nullspace, rank_and_echelon, solve, Echelon, Mat, Solution};
pub use subspace::Subspace;

/// Enumerate all coordinate vectors of the given length, if the field is
/// finite and the total count stays within `limit`.
pub fn enumerate_vectors(field: FieldSpec, len: usize, limit: u64) -> Option<Vec<Vec<Scalar>>> {
    let p = field.size()?;
    let mut count: u64 = 1;
    for _ in 0..len {
        count = count.checked_mul(p)?;
        if count > limit {
            return None;
        }
    }
    let elems = field.elements()?;
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; len];
    loop {
        out.push(idx.iter().map(|&i| elems[i].clone()).collect());
        let mut k = 0;
        loop {
            if k == len {
                return Some(out);
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
