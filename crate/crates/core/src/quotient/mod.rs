//! The quotient category Z/D of an extension-closed subcategory by the
//! ideal of morphisms factoring through D, presented as a category in its
//! own right with the induced shift σ, plus the machinery that verifies the
//! quotient is (right) triangulated.

mod omega;
mod sigma;
mod triangles;

use std::collections::BTreeMap;

use crate::addcat::{CategoryPresentation, FunctorData, Mor, Obj};
use crate::approx::{ideal_subspace, is_extension_closed, is_factor_through_epic, mu, SubcatSpec};
use crate::exactla::Mat;
use crate::rtstruct::{ClosureIndex, Triangle, Triangulation};
use crate::Error;

pub use omega::{build_omega, check_sigma_equivalence, OmegaData};
pub use sigma::{sigma_on_base_morphism, LiftChoice, SigmaSelection};
pub use triangles::{cone_stays_in_z, induced_triangulation, quotient_triangle};

/// A presentation of Z/D: the quotient category itself (with σ installed as
/// its shift), the projection and section matrices per surviving hom-pair,
/// and the table of fixed triangles that define σ.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub base: CategoryPresentation,
    pub z: SubcatSpec,
    pub d: SubcatSpec,
    /// The quotient category; its shift functor is σ.
    pub cat: CategoryPresentation,
    /// Base indices of the surviving indecomposables, parallel to
    /// `cat.indecomposables`.
    pub surviving: Vec<usize>,
    /// Per surviving base pair (x, y): base Hom coordinates to quotient
    /// coordinates (the canonical coset representative in selected columns).
    pub projections: BTreeMap<(usize, usize), Mat>,
    /// Sections of the projections: quotient coordinates to canonical
    /// representative coordinates. projection ∘ inclusion = identity.
    pub inclusions: BTreeMap<(usize, usize), Mat>,
    /// Fixed triangle M -> D_M -> σM -> TM per member of Z (trivial for
    /// members of D).
    pub sigma_table: BTreeMap<usize, Triangle>,
    pub rank_bound: usize,
}

impl QuotientPresentation {
    pub fn quotient_index(&self, base_index: usize) -> Option<usize> {
        self.surviving.iter().position(|&b| b == base_index)
    }

    /// Base object to quotient object: non-surviving summands drop.
    pub fn project_obj(&self, o: &Obj) -> Obj {
        Obj::from_summands(
            o.summands.iter().filter_map(|&s| self.quotient_index(s)).collect(),
        )
    }

    /// Quotient object to its canonical base representative.
    pub fn include_obj(&self, o: &Obj) -> Obj {
        Obj::from_summands(o.summands.iter().map(|&s| self.surviving[s]).collect())
    }

    /// Base morphism to its quotient class, blockwise.
    pub fn project_mor(&self, m: &Mor) -> Mor {
        let src = self.project_obj(&m.source);
        let tgt = self.project_obj(&m.target);
        let mut out = self.cat.zero_mor(&src, &tgt);
        let mut qj = 0;
        for (j, &tj) in m.target.summands.iter().enumerate() {
            if self.quotient_index(tj).is_none() {
                continue;
            }
            let mut qi = 0;
            for (i, &si) in m.source.summands.iter().enumerate() {
                if self.quotient_index(si).is_none() {
                    continue;
                }
                if let Some(p) = self.projections.get(&(si, tj)) {
                    out.blocks[qj][qi] = p.mul_vec(&m.blocks[j][i]);
                }
                qi += 1;
            }
            qj += 1;
        }
        out
    }

    /// Quotient morphism to its canonical base representative.
    pub fn include_mor(&self, m: &Mor) -> Mor {
        let src = self.include_obj(&m.source);
        let tgt = self.include_obj(&m.target);
        let mut out = self.base.zero_mor(&src, &tgt);
        for (j, &tj) in tgt.summands.iter().enumerate() {
            for (i, &si) in src.summands.iter().enumerate() {
                if let Some(inc) = self.inclusions.get(&(si, tj)) {
                    out.blocks[j][i] = inc.mul_vec(&m.blocks[j][i]);
                }
            }
        }
        out
    }

    /// The fixed triangle of an arbitrary base object in add Z: the direct
    /// sum of the fixed triangles of its summands.
    pub fn fixed_triangle_of(&self, o: &Obj) -> Result<Triangle, Error> {
        let mut acc = Triangle::new(
            self.base.zero_mor(&Obj::zero(), &Obj::zero()),
            self.base.zero_mor(&Obj::zero(), &Obj::zero()),
            self.base.zero_mor(&Obj::zero(), &Obj::zero()),
        );
        for &s in &o.summands {
            let t = self.sigma_table.get(&s).ok_or_else(|| {
                Error::Precondition(format!(
                    "{} is outside Z, no fixed triangle",
                    self.base.indecomposables[s]
                ))
            })?;
            acc = crate::rtstruct::sum_triangles(&self.base, &acc, t);
        }
        Ok(acc)
    }
}

/// Build Z/D. Checks the construction's hypotheses (D ⊆ Z, Z extension
/// closed, Z = μ(Z; D), D factor-through-epic) and reports the first
/// failure; the stronger mutation-pair and fullness hypotheses belong to
/// the equivalence check, not here.
pub fn build_quotient(
    base: &CategoryPresentation,
    store: &Triangulation,
    z: &SubcatSpec,
    d: &SubcatSpec,
    selection: SigmaSelection,
) -> Result<QuotientPresentation, Error> {
    let closure = ClosureIndex::build(base, store);
    if !d.is_subset_of(z) {
        return Err(Error::Precondition(format!(
            "D = {} is not contained in Z = {}",
            d.display(base),
            z.display(base)
        )));
    }
    let ext = is_extension_closed(base, &closure, z);
    if let Some(v) = ext.violations.first() {
        return Err(Error::Precondition(format!("extension-closed: {v}")));
    }
    let (mu_z, _) = mu(base, &closure, z, d, store.rank_bound);
    if mu_z != *z {
        return Err(Error::Precondition(format!(
            "Z = μ(Z; D) fails: μ(Z; D) = {}",
            mu_z.display(base)
        )));
    }
    let fte = is_factor_through_epic(base, d, None, store.rank_bound);
    if let Some(v) = fte.violations.first() {
        return Err(Error::Precondition(format!("factor-through-epic: {v}")));
    }

    let sigma_table = sigma::fix_sigma_triangles(base, &closure, z, d, store.rank_bound, &selection)?;

    // Hom data of the quotient: canonical coset representatives of
    // Hom(x, y) modulo the factor-through ideal.
    let members: Vec<usize> = z.members.iter().filter(|m| !d.members.contains(m)).copied().collect();
    let mut proj_all: BTreeMap<(usize, usize), Mat> = BTreeMap::new();
    let mut incl_all: BTreeMap<(usize, usize), Mat> = BTreeMap::new();
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &x in &members {
        for &y in &members {
            let xo = Obj::single(x);
            let yo = Obj::single(y);
            let ambient = base.hom_space_dim(&xo, &yo);
            let ideal = ideal_subspace(base, d, &xo, &yo);
            let field = base.field;
            let free: Vec<usize> =
                (0..ambient).filter(|c| !ideal.pivots().contains(c)).collect();
            let mut p = Mat::zeros(field, free.len(), ambient);
            for c in 0..ambient {
                let mut e = vec![field.zero(); ambient];
                e[c] = field.one();
                let rep = ideal.coset_representative(&e);
                for (r, &pos) in free.iter().enumerate() {
                    p.set(r, c, rep[pos].clone());
                }
            }
            let mut inc = Mat::zeros(field, ambient, free.len());
            for (c, &pos) in free.iter().enumerate() {
                inc.set(pos, c, field.one());
            }
            dims.insert((x, y), free.len());
            proj_all.insert((x, y), p);
            incl_all.insert((x, y), inc);
        }
    }

    // Members whose identity class vanishes drop to the zero object.
    let surviving: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&x| {
            let p = &proj_all[&(x, x)];
            let idc = p.mul_vec(&base.id_coords[x]);
            idc.iter().any(|s| !base.field.is_zero(s))
        })
        .collect();

    let count = surviving.len();
    let mut hom_dims = vec![vec![0usize; count]; count];
    let mut basis_names = BTreeMap::new();
    let mut comp = BTreeMap::new();
    let mut id_coords = Vec::with_capacity(count);
    for (qx, &x) in surviving.iter().enumerate() {
        for (qy, &y) in surviving.iter().enumerate() {
            let dim = dims[&(x, y)];
            hom_dims[qx][qy] = dim;
            if dim > 0 {
                let inc = &incl_all[&(x, y)];
                let names = (0..dim)
                    .map(|q| {
                        let col = inc.col(q);
                        let pos = col.iter().position(|s| !base.field.is_zero(s)).unwrap();
                        base.basis_label(x, y, pos)
                    })
                    .collect::<Vec<_>>();
                basis_names.insert((qx, qy), names);
            }
        }
    }
    for (qx, &x) in surviving.iter().enumerate() {
        id_coords.push(proj_all[&(x, x)].mul_vec(&base.id_coords[x]));
        for (qy, &y) in surviving.iter().enumerate() {
            if hom_dims[qx][qy] == 0 {
                continue;
            }
            for (qz, &zz) in surviving.iter().enumerate() {
                if hom_dims[qy][qz] == 0 || hom_dims[qx][qz] == 0 {
                    continue;
                }
                let mut table = Vec::with_capacity(hom_dims[qy][qz]);
                for gb in 0..hom_dims[qy][qz] {
                    let g_base = incl_all[&(y, zz)].col(gb);
                    let mut row = Vec::with_capacity(hom_dims[qx][qy]);
                    for fb in 0..hom_dims[qx][qy] {
                        let f_base = incl_all[&(x, y)].col(fb);
                        let composite = base.compose_coords(x, y, zz, &f_base, &g_base);
                        row.push(proj_all[&(x, zz)].mul_vec(&composite));
                    }
                    table.push(row);
                }
                comp.insert((qx, qy, qz), table);
            }
        }
    }

    // Assemble with a placeholder shift, then compute σ and install it.
    let placeholder = FunctorData {
        on_objects: (0..count).map(Obj::single).collect(),
        on_homs: {
            let mut m = BTreeMap::new();
            for qx in 0..count {
                for qy in 0..count {
                    let dim = hom_dims[qx][qy];
                    if dim > 0 {
                        m.insert((qx, qy), Mat::identity(base.field, dim));
                    }
                }
            }
            m
        },
    };
    let cat = CategoryPresentation {
        field: base.field,
        indecomposables: surviving
            .iter()
            .map(|&x| base.indecomposables[x].clone())
            .collect(),
        hom_dims,
        basis_names,
        comp,
        id_coords,
        shift: placeholder,
    };

    let keep_proj: BTreeMap<(usize, usize), Mat> = proj_all
        .into_iter()
        .filter(|((x, y), _)| surviving.contains(x) && surviving.contains(y))
        .collect();
    let keep_incl: BTreeMap<(usize, usize), Mat> = incl_all
        .into_iter()
        .filter(|((x, y), _)| surviving.contains(x) && surviving.contains(y))
        .collect();

    let mut q = QuotientPresentation {
        base: base.clone(),
        z: z.clone(),
        d: d.clone(),
        cat,
        surviving,
        projections: keep_proj,
        inclusions: keep_incl,
        sigma_table,
        rank_bound: store.rank_bound,
    };
    let sigma = sigma::build_sigma(&q)?;
    q.cat.shift = sigma;
    Ok(q)
}

#[cfg(test)]
mod tests;
