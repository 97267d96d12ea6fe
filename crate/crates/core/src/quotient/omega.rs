//! The quasi-inverse ω of σ, built from fixed co-approximation triangles,
//! and the two-route check that σ is an equivalence: once through ω and the
//! comparison isomorphisms, once by direct linear algebra (fully faithful
//! plus essentially surjective). The routes must agree.

use std::collections::BTreeMap;

use crate::addcat::{FunctorData, Mor, MorSystem, Obj};
use crate::approx::{is_d_epic, is_d_monic, verify_mutation_pair};
use crate::exactla::Mat;
use crate::report::{CheckReport, Report};
use crate::rtstruct::{complete_morphism, rotate, ClosureIndex, Triangle};
use crate::Error;

use super::QuotientPresentation;

#[derive(Clone, Debug)]
pub struct OmegaData {
    pub functor: FunctorData,
    /// Fixed co-triangle ωX -> D^X -> X -> TωX per surviving base index.
    pub co_triangles: BTreeMap<usize, Triangle>,
}

/// Fix a co-approximation triangle ending at each surviving object and
/// tabulate ω on the quotient. Requires the shift to be full on Z-pairs
/// (checked by the caller via the equivalence report preconditions).
pub fn build_omega(
    q: &QuotientPresentation,
    closure: &ClosureIndex,
) -> Result<OmegaData, Error> {
    let base = &q.base;
    let mut co_triangles = BTreeMap::new();
    let d_objs: Vec<Obj> = base
        .enumerate_objects(q.rank_bound)
        .into_iter()
        .filter(|o| q.d.contains_obj(o))
        .collect();
    let z_objs: Vec<Obj> = base
        .enumerate_objects(q.rank_bound)
        .into_iter()
        .filter(|o| q.z.contains_obj(o))
        .collect();
    for &x in &q.surviving {
        let xo = Obj::single(x);
        let mut found = None;
        'search: for zobj in &z_objs {
            for dobj in &d_objs {
                let probe = Triangle::new(
                    base.zero_mor(zobj, dobj),
                    base.zero_mor(dobj, &xo),
                    base.zero_mor(&xo, &base.apply_functor_obj(&base.shift, zobj)),
                );
                let (cands, _) = closure.candidates_for(base, &probe);
                for cand in cands {
                    if is_d_monic(base, &cand.f, &q.d) && is_d_epic(base, &cand.g, &q.d) {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let t = found.ok_or_else(|| {
            Error::NoWitness(format!(
                "no co-approximation triangle onto {} within rank bound",
                base.indecomposables[x]
            ))
        })?;
        co_triangles.insert(x, t);
    }

    // ω on morphisms: lift f over the right approximations, complete on the
    // rotated co-triangles, then pull the connecting morphism back through
    // the shift (fullness of T on Z-pairs).
    let mut on_objects = Vec::with_capacity(q.surviving.len());
    for &x in &q.surviving {
        on_objects.push(q.project_obj(co_triangles[&x].a()));
    }
    let mut on_homs = BTreeMap::new();
    for (qx, &x) in q.surviving.iter().enumerate() {
        for (qy, &y) in q.surviving.iter().enumerate() {
            let dim = q.cat.hom_dim(qx, qy);
            if dim == 0 {
                continue;
            }
            let t_x = &co_triangles[&x];
            let t_y = &co_triangles[&y];
            let rows = q.cat.hom_space_dim(&on_objects[qx], &on_objects[qy]);
            let mut mat = Mat::zeros(base.field, rows, dim);
            for b in 0..dim {
                let col_base = q.inclusions[&(x, y)].col(b);
                let f = base.unflatten(&Obj::single(x), &Obj::single(y), &col_base);
                let h_prime = omega_lift(q, t_x, t_y, &f)?;
                let projected = q.project_mor(&h_prime);
                let col = q.cat.flatten(&projected);
                for (r, v) in col.iter().enumerate() {
                    mat.set(r, b, v.clone());
                }
            }
            on_homs.insert((qx, qy), mat);
        }
    }
    Ok(OmegaData { functor: FunctorData { on_objects, on_homs }, co_triangles })
}

/// Given f: X -> Y and the fixed co-triangles over X and Y, produce
/// ω f: ωX -> ωY in the base.
fn omega_lift(
    q: &QuotientPresentation,
    t_x: &Triangle,
    t_y: &Triangle,
    f: &Mor,
) -> Result<Mor, Error> {
    let base = &q.base;
    // g: D^X -> D^Y with f∘β^X = β^Y∘g (β^Y is a right D-approximation).
    let mut sys = MorSystem::new(base);
    let g = sys.unknown(t_x.b(), t_y.b());
    let lhs = base.compose_left_matrix(&t_y.g, t_x.b());
    sys.equation(&[(g, &lhs)], &base.flatten(&base.compose(f, &t_x.g)?));
    let sols = sys.solve().ok_or_else(|| {
        Error::Precondition("lift over the right approximation failed".into())
    })?;
    let g_mor = sols.particular_mors(base).remove(0);
    // Complete on the rotated co-triangles to h: TωX -> TωY.
    let rot_x = rotate(base, t_x);
    let rot_y = rotate(base, t_y);
    let h = complete_morphism(base, &rot_x, &rot_y, &g_mor, f)?
        .ok_or_else(|| Error::Precondition("completion on rotated co-triangles failed".into()))?;
    // Pull back through the shift: T h' = h needs T full on Z-pairs.
    let mut sys = MorSystem::new(base);
    let hp = sys.unknown(t_x.a(), t_y.a());
    let tmat = base.functor_matrix(&base.shift, t_x.a(), t_y.a());
    sys.equation(&[(hp, &tmat)], &base.flatten(&h));
    let sols = sys.solve().ok_or_else(|| {
        Error::Precondition("shift is not full on the needed pair; ω lift failed".into())
    })?;
    Ok(sols.particular_mors(base).remove(0))
}

/// The comparison X -> σωX of the equivalence proof: complete the identity
/// square between the fixed co-triangle of X and the fixed triangle of ωX.
fn comparison_to_sigma_omega(
    q: &QuotientPresentation,
    t_x: &Triangle,
) -> Result<Mor, Error> {
    let base = &q.base;
    let omega_x = t_x.a();
    let fixed = q.fixed_triangle_of(omega_x)?;
    // g: D^X -> D_{ωX} with g∘α^X = α_{ωX}.
    let mut sys = MorSystem::new(base);
    let g = sys.unknown(t_x.b(), fixed.b());
    let lhs = base.compose_right_matrix(&t_x.f, fixed.b());
    sys.equation(&[(g, &lhs)], &base.flatten(&fixed.f));
    let sols = sys
        .solve()
        .ok_or_else(|| Error::Precondition("comparison lift failed".into()))?;
    let g_mor = sols.particular_mors(base).remove(0);
    complete_morphism(base, t_x, &fixed, &base.identity_mor(omega_x), &g_mor)?
        .ok_or_else(|| Error::Precondition("comparison completion failed".into()))
}

/// The comparison X -> ωσX, dual: lift v over the right approximation of
/// the co-triangle of σX, complete on rotations, pull back through T.
fn comparison_to_omega_sigma(
    q: &QuotientPresentation,
    co: &BTreeMap<usize, Triangle>,
    x: usize,
) -> Result<Mor, Error> {
    let base = &q.base;
    let fixed = &q.sigma_table[&x]; // X -> D_X -> σX
    let sigma_x_obj = fixed.c();
    // The co-triangle of σX: direct sum of the fixed co-triangles of its
    // surviving summands (dead summands cannot occur when σ is honest).
    let mut co_t = Triangle::new(
        base.zero_mor(&Obj::zero(), &Obj::zero()),
        base.zero_mor(&Obj::zero(), &Obj::zero()),
        base.zero_mor(&Obj::zero(), &Obj::zero()),
    );
    for &s in &sigma_x_obj.summands {
        let t = co.get(&s).ok_or_else(|| {
            Error::Precondition(format!(
                "σ{} has a summand {} without a co-triangle",
                base.indecomposables[x], base.indecomposables[s]
            ))
        })?;
        co_t = crate::rtstruct::sum_triangles(base, &co_t, t);
    }
    // v: D_X -> D^{σX} with β^{σX}∘v = β_X.
    let mut sys = MorSystem::new(base);
    let v = sys.unknown(fixed.b(), co_t.b());
    let lhs = base.compose_left_matrix(&co_t.g, fixed.b());
    sys.equation(&[(v, &lhs)], &base.flatten(&fixed.g));
    let sols = sys
        .solve()
        .ok_or_else(|| Error::Precondition("dual comparison lift failed".into()))?;
    let v_mor = sols.particular_mors(base).remove(0);
    let rot_fixed = rotate(base, fixed);
    let rot_co = rotate(base, &co_t);
    let w = complete_morphism(base, &rot_fixed, &rot_co, &v_mor, &base.identity_mor(sigma_x_obj))?
        .ok_or_else(|| Error::Precondition("dual comparison completion failed".into()))?;
    // w: TX -> TωσX; pull back through the shift.
    let xo = Obj::single(x);
    let mut sys = MorSystem::new(base);
    let u = sys.unknown(&xo, co_t.a());
    let tmat = base.functor_matrix(&base.shift, &xo, co_t.a());
    sys.equation(&[(u, &tmat)], &base.flatten(&w));
    let sols = sys.solve().ok_or_else(|| {
        Error::Precondition("shift not full enough for the dual comparison".into())
    })?;
    Ok(sols.particular_mors(base).remove(0))
}

/// Check that σ is an equivalence of the quotient, by the ω route and by
/// the direct route, and that the two agree. Returns one report section per
/// route plus a precondition section.
pub fn check_sigma_equivalence(
    q: &QuotientPresentation,
    closure: &ClosureIndex,
) -> Result<Report, Error> {
    let base = &q.base;
    let mut report = Report::new();

    let mut pre = CheckReport::new("equivalence preconditions");
    match verify_mutation_pair(base, closure, &q.z, &q.d, q.rank_bound)? {
        v if v.is_yes() => pre.checked += 1,
        crate::approx::MutationVerdict::No { reason } => {
            pre.violations.push(format!("(Z, Z) is not a D-mutation pair: {reason}"));
        }
        _ => unreachable!(),
    }
    let z_pairs: Vec<(Obj, Obj)> = q
        .z
        .members
        .iter()
        .flat_map(|&x| q.z.members.iter().map(move |&y| (Obj::single(x), Obj::single(y))))
        .collect();
    pre.checked += 1;
    if let Some((x, y)) = base.functor_full_on(&base.shift, &z_pairs) {
        pre.violations.push(format!(
            "shift is not full on Hom({},{})",
            base.obj_name(&x),
            base.obj_name(&y)
        ));
    }
    let pre_failed = !pre.violations.is_empty();
    report.push(pre);
    if pre_failed {
        return Ok(report);
    }

    // Route 1: through ω.
    let mut omega_rep = CheckReport::new("equivalence via ω");
    let omega = build_omega(q, closure)?;
    for v in q.cat.check_functor_laws(&omega.functor) {
        omega_rep.violations.push(format!("ω laws: {v}"));
    }
    let mut comparisons: Vec<(usize, Mor)> = Vec::new();
    for &x in &q.surviving {
        omega_rep.checked += 1;
        let t_x = &omega.co_triangles[&x];
        let g_x = comparison_to_sigma_omega(q, t_x)?;
        let g_bar = q.project_mor(&g_x);
        if q.cat.is_isomorphism(&g_bar).is_none() {
            omega_rep.violations.push(format!(
                "comparison {} -> σω{} is not invertible in the quotient",
                base.indecomposables[x], base.indecomposables[x]
            ));
            continue;
        }
        comparisons.push((x, g_bar));
        let u = comparison_to_omega_sigma(q, &omega.co_triangles, x)?;
        let u_bar = q.project_mor(&u);
        if q.cat.is_isomorphism(&u_bar).is_none() {
            omega_rep.violations.push(format!(
                "comparison {} -> ωσ{} is not invertible in the quotient",
                base.indecomposables[x], base.indecomposables[x]
            ));
        }
    }
    // Naturality squares of the comparison on all quotient basis morphisms.
    if omega_rep.violations.is_empty() {
        let lookup: BTreeMap<usize, &Mor> = comparisons.iter().map(|(x, m)| (*x, m)).collect();
        for (qx, &x) in q.surviving.iter().enumerate() {
            for (qy, &y) in q.surviving.iter().enumerate() {
                if q.cat.hom_dim(qx, qy) == 0 {
                    continue;
                }
                for f in q.cat.hom_basis(&Obj::single(qx), &Obj::single(qy)) {
                    omega_rep.checked += 1;
                    let of = q.cat.apply_functor(&omega.functor, &f);
                    let sof = q.cat.apply_functor(&q.cat.shift, &of);
                    let lhs = q.cat.compose(&sof, lookup[&x])?;
                    let rhs = q.cat.compose(lookup[&y], &f)?;
                    if lhs != rhs {
                        omega_rep.violations.push(format!(
                            "naturality square fails on {}",
                            q.cat.mor_display(&f)
                        ));
                    }
                }
            }
        }
    }
    let omega_yes = omega_rep.violations.is_empty();
    report.push(omega_rep);

    // Route 2: direct fully-faithful plus essentially-surjective test.
    let mut direct = CheckReport::new("equivalence direct");
    let pairs: Vec<(Obj, Obj)> = (0..q.surviving.len())
        .flat_map(|x| (0..q.surviving.len()).map(move |y| (Obj::single(x), Obj::single(y))))
        .collect();
    direct.checked += pairs.len();
    if let Some((x, y)) = q.cat.functor_full_on(&q.cat.shift, &pairs) {
        direct.violations.push(format!(
            "σ is not full on Hom({},{})",
            q.cat.obj_name(&x),
            q.cat.obj_name(&y)
        ));
    }
    if let Some((x, y)) = q.cat.functor_faithful_on(&q.cat.shift, &pairs) {
        direct.violations.push(format!(
            "σ is not faithful on Hom({},{})",
            q.cat.obj_name(&x),
            q.cat.obj_name(&y)
        ));
    }
    for y in 0..q.surviving.len() {
        direct.checked += 1;
        let hit = (0..q.surviving.len())
            .any(|x| q.cat.shift.on_objects[x].multiset_eq(&Obj::single(y)));
        if !hit {
            direct.violations.push(format!(
                "σ is not essentially surjective: {} is not hit",
                q.cat.indecomposables[y]
            ));
        }
    }
    let direct_yes = direct.violations.is_empty();
    report.push(direct);

    let mut agree = CheckReport::new("route agreement");
    agree.checked = 1;
    if omega_yes != direct_yes {
        agree.violations.push(format!(
            "ω route says {} but the direct route says {}",
            if omega_yes { "equivalence" } else { "no" },
            if direct_yes { "equivalence" } else { "no" }
        ));
    }
    report.push(agree);
    Ok(report)
}
