//! Triangles (sextuples) and the distinguished-triangle store.

use crate::addcat::{CategoryPresentation, Mor, Obj};
use crate::Error;

/// A sextuple A -> B -> C -> TA, stored as its three morphisms. The objects
/// are implicit in the morphisms' endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub f: Mor,
    pub g: Mor,
    pub h: Mor,
}

impl Triangle {
    pub fn new(f: Mor, g: Mor, h: Mor) -> Self {
        Triangle { f, g, h }
    }

    pub fn a(&self) -> &Obj {
        &self.f.source
    }

    pub fn b(&self) -> &Obj {
        &self.f.target
    }

    pub fn c(&self) -> &Obj {
        &self.g.target
    }

    /// Endpoint compatibility: g after f, h after g, and h lands in T A.
    pub fn validate_shape(&self, cat: &CategoryPresentation) -> Result<(), Error> {
        if self.f.target != self.g.source {
            return Err(Error::Shape(format!(
                "triangle: f targets {} but g starts at {}",
                cat.obj_name(&self.f.target),
                cat.obj_name(&self.g.source)
            )));
        }
        if self.g.target != self.h.source {
            return Err(Error::Shape(format!(
                "triangle: g targets {} but h starts at {}",
                cat.obj_name(&self.g.target),
                cat.obj_name(&self.h.source)
            )));
        }
        let ta = cat.apply_functor_obj(&cat.shift, self.a());
        if self.h.target != ta {
            return Err(Error::Shape(format!(
                "triangle: h targets {} but T(A) = {}",
                cat.obj_name(&self.h.target),
                cat.obj_name(&ta)
            )));
        }
        Ok(())
    }

    pub fn display(&self, cat: &CategoryPresentation) -> String {
        format!(
            "({} -> {} -> {} -> T{}; f={}, g={}, h={})",
            cat.obj_name(self.a()),
            cat.obj_name(self.b()),
            cat.obj_name(self.c()),
            cat.obj_name(self.a()),
            cat.mor_display(&self.f),
            cat.mor_display(&self.g),
            cat.mor_display(&self.h),
        )
    }
}

/// A right triangulation presented by generating triangles. The distinguished
/// class is the closure of the generators under isomorphism of sextuples,
/// rotation, and finite direct sums; `rank_bound` caps the objects that
/// exhaustive axiom checks quantify over.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub generators: Vec<Triangle>,
    pub rank_bound: usize,
}

impl Triangulation {
    pub fn new(generators: Vec<Triangle>, rank_bound: usize) -> Self {
        Triangulation { generators, rank_bound }
    }
}

/// Rotation: (A,B,C,f,g,h) becomes (B,C,TA,g,h,-Tf).
pub fn rotate(cat: &CategoryPresentation, t: &Triangle) -> Triangle {
    let tf = cat.apply_functor(&cat.shift, &t.f);
    Triangle::new(t.g.clone(), t.h.clone(), cat.mor_neg(&tf))
}

/// The split triangle A -> A⊕B -> B -> TA with zero connecting morphism.
pub fn direct_sum_triangle(cat: &CategoryPresentation, a: &Obj, b: &Obj) -> Triangle {
    let ds = cat.direct_sum(a, b);
    let ta = cat.apply_functor_obj(&cat.shift, a);
    Triangle::new(ds.inj_x, ds.proj_y, cat.zero_mor(b, &ta))
}

/// The trivial triangle 0 -> A -> A -> 0.
pub fn trivial_triangle(cat: &CategoryPresentation, a: &Obj) -> Triangle {
    let zero = Obj::zero();
    Triangle::new(
        cat.zero_mor(&zero, a),
        cat.identity_mor(a),
        cat.zero_mor(a, &Obj::zero()),
    )
}

/// Blockwise direct sum of triangles.
pub fn sum_triangles(cat: &CategoryPresentation, t1: &Triangle, t2: &Triangle) -> Triangle {
    Triangle::new(
        cat.mor_direct_sum(&t1.f, &t2.f),
        cat.mor_direct_sum(&t1.g, &t2.g),
        cat.mor_direct_sum(&t1.h, &t2.h),
    )
}
