//! Structural and algebraic validation of a category presentation:
//! table shapes, identity and associativity laws, locality of endomorphism
//! rings, and the functor laws for the shift.

use crate::exactla::{rank_and_echelon, Mat, Scalar};
use crate::report::CheckReport;

use super::obj::Obj;
use super::presentation::CategoryPresentation;

/// Elements to enumerate per endomorphism ring before giving up on the
/// locality test; above this the report says "undecided" rather than guess.
const LOCALITY_ENUM_LIMIT: u64 = 1 << 16;

impl CategoryPresentation {
    /// Full validation. The returned report lists every violated invariant
    /// with a witness; an empty report means the presentation is valid.
    pub fn validate(&self) -> CheckReport {
        let mut rep = CheckReport::new("presentation");
        self.check_shapes(&mut rep);
        if !rep.violations.is_empty() {
            rep.notes.push("algebraic checks skipped: structure is malformed".into());
            return rep;
        }
        self.check_identities(&mut rep);
        self.check_associativity(&mut rep);
        self.check_locality(&mut rep);
        self.check_shift_laws(&mut rep);
        rep
    }

    fn check_shapes(&self, rep: &mut CheckReport) {
        let n = self.indec_count();
        if self.hom_dims.len() != n || self.hom_dims.iter().any(|r| r.len() != n) {
            rep.violations.push("hom dimension table is not square over the indecomposables".into());
            return;
        }
        if self.id_coords.len() != n {
            rep.violations.push("identity table does not cover every indecomposable".into());
            return;
        }
        for x in 0..n {
            rep.checked += 1;
            if self.id_coords[x].len() != self.hom_dim(x, x) {
                rep.violations.push(format!(
                    "identity coordinates of {} have length {} but dim End = {}",
                    self.indecomposables[x],
                    self.id_coords[x].len(),
                    self.hom_dim(x, x)
                ));
            }
        }
        for (&(x, y, z), table) in &self.comp {
            rep.checked += 1;
            if x >= n || y >= n || z >= n {
                rep.violations.push(format!("composition entry ({x},{y},{z}) references unknown indecomposables"));
                continue;
            }
            let (dg, df, dout) = (self.hom_dim(y, z), self.hom_dim(x, y), self.hom_dim(x, z));
            let ok = table.len() == dg
                && table.iter().all(|row| row.len() == df && row.iter().all(|c| c.len() == dout));
            if !ok {
                rep.violations.push(format!(
                    "composition table for {}|{}|{} has the wrong shape",
                    self.indecomposables[x], self.indecomposables[y], self.indecomposables[z]
                ));
            }
        }
        for (x, img) in self.shift.on_objects.iter().enumerate() {
            rep.checked += 1;
            if img.summands.iter().any(|&s| s >= n) {
                rep.violations.push(format!(
                    "shift image of {} references unknown indecomposables",
                    self.indecomposables[x]
                ));
            }
        }
        if self.shift.on_objects.len() != n {
            rep.violations.push("shift does not map every indecomposable".into());
            return;
        }
        for x in 0..n {
            for y in 0..n {
                let d = self.hom_dim(x, y);
                if d == 0 {
                    continue;
                }
                rep.checked += 1;
                let tx = self.shift.on_objects[x].clone();
                let ty = self.shift.on_objects[y].clone();
                let want_rows = self.hom_space_dim(&tx, &ty);
                match self.shift.on_homs.get(&(x, y)) {
                    Some(m) if m.rows == want_rows && m.cols == d => {}
                    Some(m) => rep.violations.push(format!(
                        "shift hom matrix for ({},{}) is {}x{}, expected {}x{}",
                        self.indecomposables[x], self.indecomposables[y], m.rows, m.cols, want_rows, d
                    )),
                    None if want_rows == 0 => {}
                    None => rep.violations.push(format!(
                        "shift hom matrix for ({},{}) is missing",
                        self.indecomposables[x], self.indecomposables[y]
                    )),
                }
            }
        }
    }

    fn check_identities(&self, rep: &mut CheckReport) {
        let n = self.indec_count();
        for x in 0..n {
            for y in 0..n {
                let d = self.hom_dim(x, y);
                for b in 0..d {
                    rep.checked += 1;
                    let mut f = vec![self.field.zero(); d];
                    f[b] = self.field.one();
                    let left = self.compose_coords(x, x, y, &self.id_coords[x], &f);
                    let right = self.compose_coords(x, y, y, &f, &self.id_coords[y]);
                    if left != f {
                        rep.violations.push(format!(
                            "basis morphism {} of Hom({},{}) is not fixed by precomposition with the identity",
                            self.basis_label(x, y, b), self.indecomposables[x], self.indecomposables[y]
                        ));
                    }
                    if right != f {
                        rep.violations.push(format!(
                            "basis morphism {} of Hom({},{}) is not fixed by postcomposition with the identity",
                            self.basis_label(x, y, b), self.indecomposables[x], self.indecomposables[y]
                        ));
                    }
                }
            }
        }
    }

    fn check_associativity(&self, rep: &mut CheckReport) {
        let n = self.indec_count();
        for w in 0..n {
            for x in 0..n {
                if self.hom_dim(w, x) == 0 {
                    continue;
                }
                for y in 0..n {
                    if self.hom_dim(x, y) == 0 {
                        continue;
                    }
                    for z in 0..n {
                        if self.hom_dim(y, z) == 0 {
                            continue;
                        }
                        for fb in 0..self.hom_dim(w, x) {
                            for gb in 0..self.hom_dim(x, y) {
                                for hb in 0..self.hom_dim(y, z) {
                                    rep.checked += 1;
                                    let f = basis_vec(self, w, x, fb);
                                    let g = basis_vec(self, x, y, gb);
                                    let h = basis_vec(self, y, z, hb);
                                    let gf = self.compose_coords(w, x, y, &f, &g);
                                    let left = self.compose_coords(w, y, z, &gf, &h);
                                    let hg = self.compose_coords(x, y, z, &g, &h);
                                    let right = self.compose_coords(w, x, z, &f, &hg);
                                    if left != right {
                                        rep.violations.push(format!(
                                            "associativity fails on ({},{},{}) basis triple ({},{},{})",
                                            self.indecomposables[w],
                                            self.indecomposables[x],
                                            self.indecomposables[z],
                                            self.basis_label(w, x, fb),
                                            self.basis_label(x, y, gb),
                                            self.basis_label(y, z, hb),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Krull-Schmidt requirement: End(X) must be local. A finite-dimensional
    /// algebra is local iff every element is nilpotent or invertible, which
    /// we test by exhaustive enumeration when the ring is small enough.
    fn check_locality(&self, rep: &mut CheckReport) {
        for x in 0..self.indec_count() {
            let d = self.hom_dim(x, x);
            rep.checked += 1;
            if d == 0 {
                rep.violations.push(format!(
                    "End({}) is the zero ring; a nonzero indecomposable needs an identity",
                    self.indecomposables[x]
                ));
                continue;
            }
            let Some(elements) = crate::exactla::enumerate_vectors(self.field, d, LOCALITY_ENUM_LIMIT)
            else {
                rep.undecided.push(format!(
                    "locality of End({}) undecided: |F|^{} exceeds the enumeration bound",
                    self.indecomposables[x], d
                ));
                continue;
            };
            for e in &elements {
                // Left multiplication is a faithful unital representation, so
                // e is nilpotent or invertible iff its matrix is.
                let lm = left_mul_matrix(self, x, e);
                let rank = rank_and_echelon(&lm).rank;
                if rank == d {
                    continue;
                }
                let mut power = lm.clone();
                for _ in 1..d {
                    power = power.mul(&lm);
                }
                if !power.is_zero() {
                    rep.violations.push(format!(
                        "End({}) is not local: element [{}] is neither nilpotent nor invertible",
                        self.indecomposables[x],
                        e.iter().map(|s| self.field.render(s)).collect::<Vec<_>>().join(",")
                    ));
                    break;
                }
            }
        }
    }

    fn check_shift_laws(&self, rep: &mut CheckReport) {
        let n = self.indec_count();
        // T(1_x) = 1_{Tx}
        for x in 0..n {
            rep.checked += 1;
            let ix = self.identity_mor(&Obj::single(x));
            let timg = self.apply_functor(&self.shift, &ix);
            let want = self.identity_mor(&self.shift.on_objects[x]);
            if timg != want {
                rep.violations.push(format!(
                    "shift does not send the identity of {} to an identity",
                    self.indecomposables[x]
                ));
            }
        }
        // T(g∘f) = T(g)∘T(f) on basis pairs
        for x in 0..n {
            for y in 0..n {
                if self.hom_dim(x, y) == 0 {
                    continue;
                }
                for z in 0..n {
                    if self.hom_dim(y, z) == 0 {
                        continue;
                    }
                    for f in self.hom_basis(&Obj::single(x), &Obj::single(y)) {
                        for g in self.hom_basis(&Obj::single(y), &Obj::single(z)) {
                            rep.checked += 1;
                            let gf = self.compose(&g, &f).expect("composable");
                            let lhs = self.apply_functor(&self.shift, &gf);
                            let rhs = self
                                .compose(
                                    &self.apply_functor(&self.shift, &g),
                                    &self.apply_functor(&self.shift, &f),
                                )
                                .expect("composable");
                            if lhs != rhs {
                                rep.violations.push(format!(
                                    "shift breaks composition on {} then {}",
                                    self.mor_display(&f),
                                    self.mor_display(&g)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn basis_label(&self, x: usize, y: usize, b: usize) -> String {
        match self.basis_names.get(&(x, y)) {
            Some(names) if b < names.len() => names[b].clone(),
            _ => format!("e{b}"),
        }
    }
}

fn basis_vec(cat: &CategoryPresentation, x: usize, y: usize, b: usize) -> Vec<Scalar> {
    let mut v = vec![cat.field.zero(); cat.hom_dim(x, y)];
    v[b] = cat.field.one();
    v
}

fn left_mul_matrix(cat: &CategoryPresentation, x: usize, e: &[Scalar]) -> Mat {
    let d = cat.hom_dim(x, x);
    let mut m = Mat::zeros(cat.field, d, d);
    for c in 0..d {
        let v = basis_vec(cat, x, x, c);
        let col = cat.compose_coords(x, x, x, &v, e);
        for (r, s) in col.iter().enumerate() {
            m.set(r, c, s.clone());
        }
    }
    m
}
