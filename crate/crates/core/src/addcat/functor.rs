//! Applying an additive endofunctor to objects and morphisms, and the
//! fullness / faithfulness rank tests.

use crate::exactla::{rank_and_echelon, Mat, Scalar};

use super::mor::Mor;
use super::obj::Obj;
use super::presentation::{CategoryPresentation, FunctorData};

impl CategoryPresentation {
    /// Image of an object: concatenation of the images of its summands.
    pub fn apply_functor_obj(&self, f: &FunctorData, x: &Obj) -> Obj {
        let mut out = Obj::zero();
        for &i in &x.summands {
            out = out.sum(&f.on_objects[i]);
        }
        out
    }

    /// Image of a morphism: each block is pushed through `on_homs` for its
    /// indecomposable pair and re-assembled at the right offsets.
    pub fn apply_functor(&self, f: &FunctorData, m: &Mor) -> Mor {
        let fx = self.apply_functor_obj(f, &m.source);
        let fy = self.apply_functor_obj(f, &m.target);
        let mut out = self.zero_mor(&fx, &fy);
        let fld = self.field;

        let mut src_offsets = Vec::with_capacity(m.source.rank());
        let mut off = 0;
        for &i in &m.source.summands {
            src_offsets.push(off);
            off += f.on_objects[i].rank();
        }
        let mut tgt_offsets = Vec::with_capacity(m.target.rank());
        off = 0;
        for &j in &m.target.summands {
            tgt_offsets.push(off);
            off += f.on_objects[j].rank();
        }

        for (j, &tj) in m.target.summands.iter().enumerate() {
            for (i, &si) in m.source.summands.iter().enumerate() {
                let coords = &m.blocks[j][i];
                if coords.iter().all(|c| fld.is_zero(c)) {
                    continue;
                }
                let img_src = &f.on_objects[si];
                let img_tgt = &f.on_objects[tj];
                let dim = self.hom_space_dim(img_src, img_tgt);
                if dim == 0 {
                    continue;
                }
                let mat = f
                    .on_homs
                    .get(&(si, tj))
                    .unwrap_or_else(|| panic!("functor lacks hom data for pair ({si},{tj})"));
                let image: Vec<Scalar> = mat.mul_vec(coords);
                let part = self.unflatten(img_src, img_tgt, &image);
                for (bj, row) in part.blocks.iter().enumerate() {
                    for (bi, block) in row.iter().enumerate() {
                        let tgt_block =
                            &mut out.blocks[tgt_offsets[j] + bj][src_offsets[i] + bi];
                        for (t, v) in block.iter().enumerate() {
                            tgt_block[t] = fld.add(&tgt_block[t], v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix of Hom(x, y) -> Hom(F x, F y) for arbitrary objects, assembled
    /// column-by-column from basis morphisms.
    pub fn functor_matrix(&self, f: &FunctorData, x: &Obj, y: &Obj) -> Mat {
        let fx = self.apply_functor_obj(f, x);
        let fy = self.apply_functor_obj(f, y);
        let rows = self.hom_space_dim(&fx, &fy);
        let basis = self.hom_basis(x, y);
        let mut m = Mat::zeros(self.field, rows, basis.len());
        for (c, b) in basis.iter().enumerate() {
            let col = self.flatten(&self.apply_functor(f, b));
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Full on the given pairs: every induced hom-map is surjective.
    /// Returns the first failing pair, if any.
    pub fn functor_full_on(&self, f: &FunctorData, pairs: &[(Obj, Obj)]) -> Option<(Obj, Obj)> {
        for (x, y) in pairs {
            let m = self.functor_matrix(f, x, y);
            if rank_and_echelon(&m).rank != m.rows {
                return Some((x.clone(), y.clone()));
            }
        }
        None
    }

    /// Faithful on the given pairs: every induced hom-map is injective.
    /// Returns the first failing pair, if any.
    pub fn functor_faithful_on(&self, f: &FunctorData, pairs: &[(Obj, Obj)]) -> Option<(Obj, Obj)> {
        for (x, y) in pairs {
            let m = self.functor_matrix(f, x, y);
            if rank_and_echelon(&m).rank != m.cols {
                return Some((x.clone(), y.clone()));
            }
        }
        None
    }

    /// Violations of the additive-functor laws: F(1) = 1 and
    /// F(g∘f) = F(g)∘F(f) on all basis pairs.
    pub fn check_functor_laws(&self, f: &FunctorData) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.indec_count();
        for x in 0..n {
            let ix = self.identity_mor(&Obj::single(x));
            if self.apply_functor(f, &ix) != self.identity_mor(&f.on_objects[x]) {
                out.push(format!(
                    "functor does not preserve the identity of {}",
                    self.indecomposables[x]
                ));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.hom_dim(x, y) == 0 {
                    continue;
                }
                for z in 0..n {
                    if self.hom_dim(y, z) == 0 {
                        continue;
                    }
                    for a in self.hom_basis(&Obj::single(x), &Obj::single(y)) {
                        for b in self.hom_basis(&Obj::single(y), &Obj::single(z)) {
                            let ba = self.compose(&b, &a).expect("composable");
                            let lhs = self.apply_functor(f, &ba);
                            let rhs = self
                                .compose(&self.apply_functor(f, &b), &self.apply_functor(f, &a))
                                .expect("composable");
                            if lhs != rhs {
                                out.push(format!(
                                    "functor breaks composition on {} then {}",
                                    self.mor_display(&a),
                                    self.mor_display(&b)
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The identity endofunctor, tabulated.
    pub fn identity_functor(&self) -> FunctorData {
        let on_objects = (0..self.indec_count()).map(Obj::single).collect();
        let mut on_homs = std::collections::BTreeMap::new();
        for x in 0..self.indec_count() {
            for y in 0..self.indec_count() {
                let d = self.hom_dim(x, y);
                if d > 0 {
                    on_homs.insert((x, y), Mat::identity(self.field, d));
                }
            }
        }
        FunctorData { on_objects, on_homs }
    }
}
