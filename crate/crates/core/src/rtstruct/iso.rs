//! Sextuple isomorphism, distinguishedness, morphism extension and
//! completion, and the octahedron completion search. All of these reduce to
//! joint linear systems over morphism unknowns followed by a bounded search
//! for invertible points.

use crate::addcat::{CategoryPresentation, Mor, MorSystem, SearchConfig};
use crate::report::Decision;
use crate::Error;

use super::closure::ClosureIndex;
use super::triangle::Triangle;

/// Decide whether two sextuples are isomorphic: the commuting conditions are
/// linear in (a, b, c), so solve the joint system and search the affine
/// solution space for a triple of isomorphisms.
pub fn sextuple_isomorphic(
    cat: &CategoryPresentation,
    t1: &Triangle,
    t2: &Triangle,
    config: &SearchConfig,
) -> Decision<(Mor, Mor, Mor)> {
    // Krull-Schmidt: mismatched summand multisets can never be isomorphic.
    if !t1.a().multiset_eq(t2.a())
        || !t1.b().multiset_eq(t2.b())
        || !t1.c().multiset_eq(t2.c())
    {
        return Decision::No;
    }
    let mut sys = MorSystem::new(cat);
    let a = sys.unknown(t1.a(), t2.a());
    let b = sys.unknown(t1.b(), t2.b());
    let c = sys.unknown(t1.c(), t2.c());

    // b∘f1 = f2∘a
    let bf1 = cat.compose_right_matrix(&t1.f, t2.b());
    let f2a = cat.compose_left_matrix(&t2.f, t1.a());
    let zero1 = vec![cat.field.zero(); bf1.rows];
    sys.equation(&[(b, &bf1), (a, &f2a.neg())], &zero1);

    // c∘g1 = g2∘b
    let cg1 = cat.compose_right_matrix(&t1.g, t2.c());
    let g2b = cat.compose_left_matrix(&t2.g, t1.b());
    let zero2 = vec![cat.field.zero(); cg1.rows];
    sys.equation(&[(c, &cg1), (b, &g2b.neg())], &zero2);

    // (Ta)∘h1 = h2∘c: apply T to a, then precompose with h1.
    let t_mat = cat.functor_matrix(&cat.shift, t1.a(), t2.a());
    let ta2 = cat.apply_functor_obj(&cat.shift, t2.a());
    let post_h1 = cat.compose_right_matrix(&t1.h, &ta2).mul(&t_mat);
    let h2c = cat.compose_left_matrix(&t2.h, t1.c());
    let zero3 = vec![cat.field.zero(); post_h1.rows];
    sys.equation(&[(a, &post_h1), (c, &h2c.neg())], &zero3);

    let Some(sols) = sys.solve() else {
        return Decision::No;
    };
    sols.search(cat, config, |mors| {
        let ia = cat.is_isomorphism(&mors[0])?;
        let ib = cat.is_isomorphism(&mors[1])?;
        let ic = cat.is_isomorphism(&mors[2])?;
        Some((ia, ib, ic))
    })
    .map(|(mors, _)| (mors[0].clone(), mors[1].clone(), mors[2].clone()))
}

const YES: u8 = 0;
const NO: u8 = 1;
const UNDECIDED: u8 = 2;

/// Is `t` distinguished: isomorphic to a direct sum of rotated generators?
pub fn is_distinguished(
    cat: &CategoryPresentation,
    closure: &ClosureIndex,
    t: &Triangle,
    config: &SearchConfig,
) -> Decision<()> {
    if let Some(&v) = closure.dist_cache.borrow().get(t) {
        return match v {
            YES => Decision::Yes(()),
            NO => Decision::No,
            _ => Decision::Undecided,
        };
    }
    let (candidates, capped) = closure.candidates_for(cat, t);
    let mut undecided = capped || closure.truncated;
    let mut verdict = Decision::No;
    for cand in &candidates {
        match sextuple_isomorphic(cat, t, cand, config) {
            Decision::Yes(_) => {
                verdict = Decision::Yes(());
                break;
            }
            Decision::Undecided => undecided = true,
            Decision::No => {}
        }
    }
    if !verdict.is_yes() && undecided {
        verdict = Decision::Undecided;
    }
    let code = match &verdict {
        Decision::Yes(_) => YES,
        Decision::No => NO,
        Decision::Undecided => UNDECIDED,
    };
    closure.dist_cache.borrow_mut().insert(t.clone(), code);
    verdict
}

/// Extend a morphism to a distinguished triangle with that exact first
/// morphism, by matching it against a candidate's first morphism up to
/// isomorphisms on both endpoints and transporting the candidate.
pub fn extend_morphism(
    cat: &CategoryPresentation,
    closure: &ClosureIndex,
    f: &Mor,
    config: &SearchConfig,
) -> Decision<Triangle> {
    if let Some(hit) = closure.ext_mor_cache.borrow().get(f) {
        return match hit {
            Some(t) => Decision::Yes(t.clone()),
            None => Decision::No,
        };
    }
    let (candidates, capped) = closure.extension_candidates(cat, &f.source, &f.target);
    let mut undecided = capped || closure.truncated;
    let mut found: Option<Triangle> = None;
    for cand in &candidates {
        let mut sys = MorSystem::new(cat);
        let a = sys.unknown(&f.source, cand.a());
        let b = sys.unknown(&f.target, cand.b());
        // cand.f∘a = b∘f
        let left = cat.compose_left_matrix(&cand.f, &f.source);
        let right = cat.compose_right_matrix(f, cand.b());
        let zero = vec![cat.field.zero(); left.rows];
        sys.equation(&[(a, &left), (b, &right.neg())], &zero);
        let Some(sols) = sys.solve() else { continue };
        let outcome = sols.search(cat, config, |mors| {
            let ia = cat.is_isomorphism(&mors[0])?;
            let _ib = cat.is_isomorphism(&mors[1])?;
            Some(ia)
        });
        match outcome {
            Decision::Yes((mors, a_inv)) => {
                let b_mor = &mors[1];
                let g = cat.compose(&cand.g, b_mor).expect("shape");
                let t_ainv = cat.apply_functor(&cat.shift, &a_inv);
                let h = cat.compose(&t_ainv, &cand.h).expect("shape");
                found = Some(Triangle::new(f.clone(), g, h));
                break;
            }
            Decision::Undecided => undecided = true,
            Decision::No => {}
        }
    }
    match found {
        Some(t) => {
            closure.ext_mor_cache.borrow_mut().insert(f.clone(), Some(t.clone()));
            Decision::Yes(t)
        }
        None if undecided => Decision::Undecided,
        None => {
            closure.ext_mor_cache.borrow_mut().insert(f.clone(), None);
            Decision::No
        }
    }
}

/// Complete a commuting square (a, b) between two triangles to a morphism
/// of sextuples: find c with c∘g1 = g2∘b and h2∘c = (Ta)∘h1.
pub fn complete_morphism(
    cat: &CategoryPresentation,
    t1: &Triangle,
    t2: &Triangle,
    a: &Mor,
    b: &Mor,
) -> Result<Option<Mor>, Error> {
    let bf1 = cat.compose(b, &t1.f)?;
    let f2a = cat.compose(&t2.f, a)?;
    if bf1 != f2a {
        return Err(Error::Precondition(
            "complete_morphism: the left square does not commute".into(),
        ));
    }
    let mut sys = MorSystem::new(cat);
    let c = sys.unknown(t1.c(), t2.c());
    let cg1 = cat.compose_right_matrix(&t1.g, t2.c());
    sys.equation(&[(c, &cg1)], &cat.flatten(&cat.compose(&t2.g, b)?));
    let h2c = cat.compose_left_matrix(&t2.h, t1.c());
    let ta = cat.apply_functor(&cat.shift, a);
    sys.equation(&[(c, &h2c)], &cat.flatten(&cat.compose(&ta, &t1.h)?));
    Ok(sys.solve().map(|sols| {
        sols.particular_mors(cat).into_iter().next().expect("one unknown")
    }))
}

#[derive(Clone, Debug)]
pub struct OctahedronWitness {
    pub l: Mor,
    pub i: Mor,
    /// The induced third column Z -> W -> V -> TZ, which is distinguished.
    pub column: Triangle,
}

/// Octahedron completion: given triangles over a, d, and d∘a, find
/// (l, i) satisfying the two commuting diagrams with the induced column
/// distinguished. `No` on a valid store is an octahedral-axiom violation.
pub fn octahedron(
    cat: &CategoryPresentation,
    closure: &ClosureIndex,
    t_xy: &Triangle,
    t_yu: &Triangle,
    t_xu: &Triangle,
    config: &SearchConfig,
) -> Result<Decision<OctahedronWitness>, Error> {
    let da = cat.compose(&t_yu.f, &t_xy.f)?;
    if da != t_xu.f {
        return Err(Error::Precondition(
            "octahedron: third triangle is not over the composite morphism".into(),
        ));
    }
    let z = t_xy.c();
    let w = t_xu.c();
    let v = t_yu.c();

    let mut sys = MorSystem::new(cat);
    let l = sys.unknown(z, w);
    let i = sys.unknown(w, v);

    // l∘b = g∘d
    let lb = cat.compose_right_matrix(&t_xy.g, w);
    sys.equation(&[(l, &lb)], &cat.flatten(&cat.compose(&t_xu.g, &t_yu.f)?));
    // h∘l = c
    let hl = cat.compose_left_matrix(&t_xu.h, z);
    sys.equation(&[(l, &hl)], &cat.flatten(&t_xy.h));
    // i∘g = e
    let ig = cat.compose_right_matrix(&t_xu.g, v);
    sys.equation(&[(i, &ig)], &cat.flatten(&t_yu.g));
    // f∘i = (Ta)∘h
    let fi = cat.compose_left_matrix(&t_yu.h, w);
    let ta = cat.apply_functor(&cat.shift, &t_xy.f);
    sys.equation(&[(i, &fi)], &cat.flatten(&cat.compose(&ta, &t_xu.h)?));

    let Some(sols) = sys.solve() else {
        return Ok(Decision::No);
    };

    // The induced column's connecting morphism is (Tb)∘f'.
    let tb = cat.apply_functor(&cat.shift, &t_xy.g);
    let conn = cat.compose(&tb, &t_yu.h)?;

    let mut undecided = false;
    let check = |mors: &[Mor]| -> Option<Triangle> {
        let column = Triangle::new(mors[0].clone(), mors[1].clone(), conn.clone());
        match is_distinguished(cat, closure, &column, config) {
            Decision::Yes(()) => Some(column),
            _ => None,
        }
    };

    if let Some(points) = sols.enumerate_points(cat.field, config.enum_limit) {
        for p in points {
            let mors = sols.point_mors(cat, &p);
            let column = Triangle::new(mors[0].clone(), mors[1].clone(), conn.clone());
            match is_distinguished(cat, closure, &column, config) {
                Decision::Yes(()) => {
                    return Ok(Decision::Yes(OctahedronWitness {
                        l: mors[0].clone(),
                        i: mors[1].clone(),
                        column,
                    }));
                }
                Decision::Undecided => undecided = true,
                Decision::No => {}
            }
        }
        Ok(if undecided { Decision::Undecided } else { Decision::No })
    } else {
        let mut rng = config.rng();
        for _ in 0..config.samples {
            let p = sols.sample_point(cat.field, &mut rng);
            let mors = sols.point_mors(cat, &p);
            if let Some(column) = check(&mors) {
                return Ok(Decision::Yes(OctahedronWitness {
                    l: mors[0].clone(),
                    i: mors[1].clone(),
                    column,
                }));
            }
        }
        Ok(Decision::Undecided)
    }
}
