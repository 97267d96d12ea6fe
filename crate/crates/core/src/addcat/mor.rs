//! Morphisms between formal direct sums, as block matrices of coordinate
//! vectors, plus the flattening that turns a hom-space between objects into
//! a plain coordinate space.
//!
//! Flattening order is fixed once and for all: positions run over
//! (target summand index, source summand index, basis index), target
//! outermost. Reports and canonical forms rely on this being stable.

use crate::exactla::{enumerate_vectors, Mat, Scalar};
use crate::Error;

use super::obj::Obj;
use super::presentation::CategoryPresentation;

/// A morphism. `blocks[j][i]` holds the coordinates of the component
/// `source[i] -> target[j]` in the stored hom basis of that pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub source: Obj,
    pub target: Obj,
    pub blocks: Vec<Vec<Vec<Scalar>>>,
}

impl CategoryPresentation {
    pub fn zero_mor(&self, source: &Obj, target: &Obj) -> Mor {
        let blocks = target
            .summands
            .iter()
            .map(|&j| {
                source
                    .summands
                    .iter()
                    .map(|&i| vec![self.field.zero(); self.hom_dim(i, j)])
                    .collect()
            })
            .collect();
        Mor { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity_mor(&self, obj: &Obj) -> Mor {
        let mut m = self.zero_mor(obj, obj);
        for (pos, &i) in obj.summands.iter().enumerate() {
            m.blocks[pos][pos] = self.id_coords[i].clone();
        }
        m
    }

    /// Basis of Hom(source, target) as morphisms, in flattening order.
    pub fn hom_basis(&self, source: &Obj, target: &Obj) -> Vec<Mor> {
        let dim = self.hom_space_dim(source, target);
        (0..dim)
            .map(|p| {
                let mut coords = vec![self.field.zero(); dim];
                coords[p] = self.field.one();
                self.unflatten(source, target, &coords)
            })
            .collect()
    }

    /// Morphism to coordinate vector, in the documented order.
    pub fn flatten(&self, m: &Mor) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.hom_space_dim(&m.source, &m.target));
        for jb in &m.blocks {
            for block in jb {
                out.extend(block.iter().cloned());
            }
        }
        out
    }

    /// Coordinate vector back to a morphism; inverse of [`Self::flatten`].
    pub fn unflatten(&self, source: &Obj, target: &Obj, coords: &[Scalar]) -> Mor {
        assert_eq!(coords.len(), self.hom_space_dim(source, target), "coordinate length mismatch");
        let mut m = self.zero_mor(source, target);
        let mut pos = 0;
        for (j, &tj) in target.summands.iter().enumerate() {
            for (i, &si) in source.summands.iter().enumerate() {
                let d = self.hom_dim(si, tj);
                m.blocks[j][i] = coords[pos..pos + d].to_vec();
                pos += d;
            }
        }
        m
    }

    /// Block-matrix composition g∘f through the structure constants.
    pub fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor, Error> {
        if f.target != g.source {
            return Err(Error::ObjectMismatch(format!(
                "compose: inner objects differ ({} vs {})",
                self.obj_name(&f.target),
                self.obj_name(&g.source)
            )));
        }
        let fld = self.field;
        let mut out = self.zero_mor(&f.source, &g.target);
        for (k, &tk) in g.target.summands.iter().enumerate() {
            for (i, &si) in f.source.summands.iter().enumerate() {
                let mut acc = vec![fld.zero(); self.hom_dim(si, tk)];
                for (j, &mj) in f.target.summands.iter().enumerate() {
                    let part = self.compose_coords(si, mj, tk, &f.blocks[j][i], &g.blocks[k][j]);
                    for (t, v) in part.iter().enumerate() {
                        acc[t] = fld.add(&acc[t], v);
                    }
                }
                out.blocks[k][i] = acc;
            }
        }
        Ok(out)
    }

    pub fn mor_add(&self, a: &Mor, b: &Mor) -> Mor {
        assert_eq!(a.source, b.source);
        assert_eq!(a.target, b.target);
        let mut out = a.clone();
        for (jb, ob) in b.blocks.iter().zip(out.blocks.iter_mut()) {
            for (block, oblock) in jb.iter().zip(ob.iter_mut()) {
                for (v, o) in block.iter().zip(oblock.iter_mut()) {
                    *o = self.field.add(o, v);
                }
            }
        }
        out
    }

    pub fn mor_neg(&self, a: &Mor) -> Mor {
        let mut out = a.clone();
        for jb in &mut out.blocks {
            for block in jb {
                for v in block {
                    *v = self.field.neg(v);
                }
            }
        }
        out
    }

    pub fn mor_sub(&self, a: &Mor, b: &Mor) -> Mor {
        self.mor_add(a, &self.mor_neg(b))
    }

    pub fn mor_scale(&self, s: &Scalar, a: &Mor) -> Mor {
        let mut out = a.clone();
        for jb in &mut out.blocks {
            for block in jb {
                for v in block {
                    *v = self.field.mul(s, v);
                }
            }
        }
        out
    }

    pub fn mor_is_zero(&self, a: &Mor) -> bool {
        a.blocks
            .iter()
            .all(|jb| jb.iter().all(|b| b.iter().all(|v| self.field.is_zero(v))))
    }

    /// Matrix of `g ↦ f∘g` on Hom(w, source f) -> Hom(w, target f).
    pub fn compose_left_matrix(&self, f: &Mor, w: &Obj) -> Mat {
        let cols = self.hom_basis(w, &f.source);
        let rows = self.hom_space_dim(w, &f.target);
        let cols_flat: Vec<Vec<Scalar>> = cols
            .iter()
            .map(|g| self.flatten(&self.compose(f, g).expect("shape checked")))
            .collect();
        mat_from_cols(self.field, rows, &cols_flat)
    }

    /// Matrix of `g ↦ g∘f` on Hom(target f, w) -> Hom(source f, w).
    pub fn compose_right_matrix(&self, f: &Mor, w: &Obj) -> Mat {
        let cols = self.hom_basis(&f.target, w);
        let rows = self.hom_space_dim(&f.source, w);
        let cols_flat: Vec<Vec<Scalar>> = cols
            .iter()
            .map(|g| self.flatten(&self.compose(g, f).expect("shape checked")))
            .collect();
        mat_from_cols(self.field, rows, &cols_flat)
    }

    /// Biproduct with its canonical sections and retractions.
    pub fn direct_sum(&self, x: &Obj, y: &Obj) -> DirectSum {
        let obj = x.sum(y);
        let mut inj_x = self.zero_mor(x, &obj);
        let mut inj_y = self.zero_mor(y, &obj);
        let mut proj_x = self.zero_mor(&obj, x);
        let mut proj_y = self.zero_mor(&obj, y);
        for (pos, &i) in x.summands.iter().enumerate() {
            inj_x.blocks[pos][pos] = self.id_coords[i].clone();
            proj_x.blocks[pos][pos] = self.id_coords[i].clone();
        }
        let off = x.rank();
        for (pos, &i) in y.summands.iter().enumerate() {
            inj_y.blocks[off + pos][pos] = self.id_coords[i].clone();
            proj_y.blocks[pos][off + pos] = self.id_coords[i].clone();
        }
        DirectSum { obj, inj_x, inj_y, proj_x, proj_y }
    }

    /// Block-diagonal sum of two morphisms.
    pub fn mor_direct_sum(&self, a: &Mor, b: &Mor) -> Mor {
        let source = a.source.sum(&b.source);
        let target = a.target.sum(&b.target);
        let mut out = self.zero_mor(&source, &target);
        for (j, jb) in a.blocks.iter().enumerate() {
            for (i, block) in jb.iter().enumerate() {
                out.blocks[j][i] = block.clone();
            }
        }
        let (jo, io) = (a.target.rank(), a.source.rank());
        for (j, jb) in b.blocks.iter().enumerate() {
            for (i, block) in jb.iter().enumerate() {
                out.blocks[jo + j][io + i] = block.clone();
            }
        }
        out
    }

    /// The permutation isomorphism between two orderings of the same
    /// multiset of summands, if they agree.
    pub fn permutation_mor(&self, from: &Obj, to: &Obj) -> Option<Mor> {
        if !from.multiset_eq(to) {
            return None;
        }
        let mut used = vec![false; to.summands.len()];
        let mut m = self.zero_mor(from, to);
        for (i, &si) in from.summands.iter().enumerate() {
            let j = to
                .summands
                .iter()
                .enumerate()
                .position(|(j, &tj)| !used[j] && tj == si)
                .expect("multisets agree");
            used[j] = true;
            m.blocks[j][i] = self.id_coords[si].clone();
        }
        Some(m)
    }

    /// All morphisms source -> target, if the coordinate space is finite and
    /// within `limit` points.
    pub fn enumerate_homs(&self, source: &Obj, target: &Obj, limit: u64) -> Option<Vec<Mor>> {
        let dim = self.hom_space_dim(source, target);
        let vs = enumerate_vectors(self.field, dim, limit)?;
        Some(vs.iter().map(|v| self.unflatten(source, target, v)).collect())
    }

    pub fn random_mor(&self, source: &Obj, target: &Obj, rng: &mut impl rand::Rng) -> Mor {
        let dim = self.hom_space_dim(source, target);
        let coords: Vec<Scalar> = (0..dim).map(|_| self.field.random(rng)).collect();
        self.unflatten(source, target, &coords)
    }

    pub fn mor_display(&self, m: &Mor) -> String {
        let coords = self.flatten(m);
        let body = coords.iter().map(|c| self.field.render(c)).collect::<Vec<_>>().join(",");
        format!(
            "{}->{}:[{}]",
            self.obj_name(&m.source),
            self.obj_name(&m.target),
            body
        )
    }
}

pub struct DirectSum {
    pub obj: Obj,
    pub inj_x: Mor,
    pub inj_y: Mor,
    pub proj_x: Mor,
    pub proj_y: Mor,
}

fn mat_from_cols(field: crate::exactla::FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Mat {
    let mut m = Mat::zeros(field, rows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        assert_eq!(col.len(), rows);
        for (r, v) in col.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    m
}
