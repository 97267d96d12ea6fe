//! The category presentation: indecomposables, hom-space dimensions,
//! composition structure constants, identity coordinates, and the shift
//! endofunctor. Immutable after construction; every operation is pure.

use std::collections::BTreeMap;

use crate::exactla::{FieldSpec, Mat, Scalar};

use super::obj::Obj;

/// An additive endofunctor, tabulated on the indecomposables.
///
/// `on_objects[x]` is the image object of indecomposable `x` (it may be zero
/// or decomposable). `on_homs[(x, y)]` maps coordinates of `Hom(x, y)` to the
/// flattened coordinate space of `Hom(F x, F y)`; pairs with zero-dimensional
/// source hom-space may be omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctorData {
    pub on_objects: Vec<Obj>,
    pub on_homs: BTreeMap<(usize, usize), Mat>,
}

/// A finite additive category by generators: everything downstream (axiom
/// checks, approximation theory, quotients) reads composition off the
/// structure-constant table stored here.
#[derive(Clone, Debug)]
pub struct CategoryPresentation {
    pub field: FieldSpec,
    pub indecomposables: Vec<String>,
    /// `hom_dims[x][y]` = dim Hom(x, y) between indecomposables.
    pub hom_dims: Vec<Vec<usize>>,
    /// Optional display names for hom basis elements, per pair.
    pub basis_names: BTreeMap<(usize, usize), Vec<String>>,
    /// `comp[(x,y,z)][g][f]` = coordinates of g∘f in Hom(x, z), for basis
    /// elements g of Hom(y, z) and f of Hom(x, y). Missing triples with
    /// nonzero dimensions mean all composites vanish.
    pub comp: BTreeMap<(usize, usize, usize), Vec<Vec<Vec<Scalar>>>>,
    /// `id_coords[x]` = coordinates of the identity in Hom(x, x).
    pub id_coords: Vec<Vec<Scalar>>,
    /// The shift endofunctor T.
    pub shift: FunctorData,
}

impl CategoryPresentation {
    pub fn indec_count(&self) -> usize {
        self.indecomposables.len()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom_dims[x][y]
    }

    pub fn indec_index(&self, name: &str) -> Option<usize> {
        self.indecomposables.iter().position(|n| n == name)
    }

    /// Coordinates of g∘f for f: x -> y, g: y -> z, through the structure
    /// constants. Bilinear by construction.
    pub fn compose_coords(
        &self,
        x: usize,
        y: usize,
        z: usize,
        f_coords: &[Scalar],
        g_coords: &[Scalar],
    ) -> Vec<Scalar> {
        let fld = self.field;
        let out_dim = self.hom_dim(x, z);
        let mut out = vec![fld.zero(); out_dim];
        let Some(table) = self.comp.get(&(x, y, z)) else {
            return out;
        };
        for (gi, gc) in g_coords.iter().enumerate() {
            if fld.is_zero(gc) {
                continue;
            }
            for (fi, fc) in f_coords.iter().enumerate() {
                if fld.is_zero(fc) {
                    continue;
                }
                let cell = &table[gi][fi];
                let w = fld.mul(gc, fc);
                for (k, v) in cell.iter().enumerate() {
                    out[k] = fld.add(&out[k], &fld.mul(&w, v));
                }
            }
        }
        out
    }

    /// Dimension of the flattened hom-space between two (possibly
    /// decomposable) objects.
    pub fn hom_space_dim(&self, src: &Obj, tgt: &Obj) -> usize {
        let mut d = 0;
        for &j in &tgt.summands {
            for &i in &src.summands {
                d += self.hom_dim(i, j);
            }
        }
        d
    }

    pub fn obj_name(&self, obj: &Obj) -> String {
        if obj.is_zero() {
            "0".to_string()
        } else {
            obj.summands
                .iter()
                .map(|&i| self.indecomposables[i].as_str())
                .collect::<Vec<_>>()
                .join("+")
        }
    }

    /// All objects with at most `rank_bound` summands, in a fixed order:
    /// by rank, then lexicographically by sorted summand indices.
    pub fn enumerate_objects(&self, rank_bound: usize) -> Vec<Obj> {
        let n = self.indec_count();
        let mut out = vec![Obj::zero()];
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..rank_bound {
            let mut next = Vec::new();
            for m in &level {
                let start = m.last().copied().unwrap_or(0);
                for i in start..n {
                    let mut s = m.clone();
                    s.push(i);
                    next.push(s);
                }
            }
            out.extend(next.iter().map(|s| Obj::from_summands(s.clone())));
            level = next;
        }
        out
    }
}
