//! Distinguished triangles of the quotient: images of base triangles with a
//! relatively monic first morphism, the induced triangulation, and the
//! cone-membership consequence.

use crate::addcat::{Mor, MorSystem, SearchConfig};
use crate::approx::is_d_monic;
use crate::report::Decision;
use crate::rtstruct::{complete_morphism, extend_morphism, ClosureIndex, Triangle, Triangulation};
use crate::Error;

use super::QuotientPresentation;

/// Image of a base triangle (with D-monic first morphism and objects in
/// add Z) in the quotient: the connecting morphism comes from completing
/// (1, n, π) against the fixed triangle of the first object.
///
/// The caller is responsible for `t` being distinguished; everything else
/// is checked here.
pub fn quotient_triangle(q: &QuotientPresentation, t: &Triangle) -> Result<Triangle, Error> {
    let base = &q.base;
    for (o, slot) in [(t.a(), "A"), (t.b(), "B"), (t.c(), "C")] {
        if !q.z.contains_obj(o) {
            return Err(Error::Precondition(format!(
                "object {} at slot {slot} is outside add Z",
                base.obj_name(o)
            )));
        }
    }
    if !is_d_monic(base, &t.f, &q.d) {
        return Err(Error::Precondition(format!(
            "first morphism {} is not D-monic",
            base.mor_display(&t.f)
        )));
    }
    let fixed = q.fixed_triangle_of(t.a())?;
    // n: N -> D_M with n∘μ = α_M, solvable since μ is D-monic.
    let mut sys = MorSystem::new(base);
    let n = sys.unknown(t.b(), fixed.b());
    let lhs = base.compose_right_matrix(&t.f, fixed.b());
    sys.equation(&[(n, &lhs)], &base.flatten(&fixed.f));
    let sols = sys
        .solve()
        .ok_or_else(|| Error::Precondition("D-monic lift failed unexpectedly".into()))?;
    let n_mor = sols.particular_mors(base).remove(0);
    let pi = complete_morphism(base, t, &fixed, &base.identity_mor(t.a()), &n_mor)?
        .ok_or_else(|| Error::Precondition("completion against the fixed triangle failed".into()))?;

    let qf = q.project_mor(&t.f);
    let qg = q.project_mor(&t.g);
    let qpi = q.project_mor(&pi);
    let out = Triangle::new(qf, qg, qpi);
    out.validate_shape(&q.cat)?;
    Ok(out)
}

/// Generators of the induced triangulation: quotient images of every
/// rotation-closure triangle with D-monic first morphism and endpoints in
/// add Z. Direct sums of such triangles project to direct sums of the
/// images, so seeding with the rotation closure is enough.
pub fn induced_triangulation(
    q: &QuotientPresentation,
    closure: &ClosureIndex,
) -> Result<Triangulation, Error> {
    let mut generators: Vec<Triangle> = Vec::new();
    for t in &closure.basics {
        if !(q.z.contains_obj(t.a()) && q.z.contains_obj(t.b()) && q.z.contains_obj(t.c())) {
            continue;
        }
        if !is_d_monic(&q.base, &t.f, &q.d) {
            continue;
        }
        let image = quotient_triangle(q, t)?;
        if !generators.contains(&image) {
            generators.push(image);
        }
    }
    Ok(Triangulation::new(generators, q.rank_bound))
}

/// Cone membership: a D-monic morphism between objects of add Z extends to
/// a triangle whose cone lies in add Z again.
pub fn cone_stays_in_z(
    q: &QuotientPresentation,
    closure: &ClosureIndex,
    mu: &Mor,
    config: &SearchConfig,
) -> Result<Decision<bool>, Error> {
    if !(q.z.contains_obj(&mu.source) && q.z.contains_obj(&mu.target)) {
        return Err(Error::Precondition("morphism endpoints are outside add Z".into()));
    }
    if !is_d_monic(&q.base, mu, &q.d) {
        return Err(Error::Precondition("morphism is not D-monic".into()));
    }
    Ok(extend_morphism(&q.base, closure, mu, config).map(|t| q.z.contains_obj(t.c())))
}
