//! The axiom suite: exhaustive checks of the triangulation axioms within a
//! rank bound, the long-exact-sequence test, the de-rotation assumption, and
//! the two-isomorphisms-imply-the-third spot check.
//!
//! Quantifiers over "all objects" are bounded by `rank_bound` (a first-class,
//! reported parameter); quantifiers over "all distinguished triangles" run
//! over the rotation closure of the generators, with direct sums sampled
//! where exhaustion would be quadratic in the closure. Searches that exhaust
//! their budget surface as "undecided", never as silent passes.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::addcat::{CategoryPresentation, Mor, MorSystem, Obj, SearchConfig};
use crate::exactla::{rank_and_echelon, Mat, Scalar, Subspace};
use crate::report::{CheckReport, Decision, Report};
use crate::Error;

use super::closure::ClosureIndex;
use super::iso::{complete_morphism, extend_morphism, is_distinguished, octahedron};
use super::triangle::{rotate, trivial_triangle, Triangle, Triangulation};

const TR0_SAMPLES: usize = 32;
const TR2_SAMPLE_FALLBACK: usize = 32;
const TR4_SUM_SAMPLES: usize = 128;
const TR5_RANDOM_SAMPLES: usize = 48;
const PROP213_TARGET: usize = 100;
const INVERTIBLE_TRIES: usize = 64;
const MAX_WITNESSES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxiomLevel {
    Tr0,
    Tr1,
    Tr2,
    Tr3,
    Tr4,
    Tr5,
    Exactness,
    Derotation,
    Prop213,
}

impl AxiomLevel {
    pub fn all() -> Vec<AxiomLevel> {
        use AxiomLevel::*;
        vec![Tr0, Tr1, Tr2, Tr3, Tr4, Tr5, Exactness, Derotation, Prop213]
    }

    pub fn parse(s: &str) -> Result<AxiomLevel, Error> {
        use AxiomLevel::*;
        match s.trim().to_ascii_lowercase().as_str() {
            "tr0" => Ok(Tr0),
            "tr1" => Ok(Tr1),
            "tr2" => Ok(Tr2),
            "tr3" => Ok(Tr3),
            "tr4" => Ok(Tr4),
            "tr5" => Ok(Tr5),
            "exactness" => Ok(Exactness),
            "derotation" => Ok(Derotation),
            "prop213" => Ok(Prop213),
            other => Err(Error::Parameter(format!("unknown axiom level '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        use AxiomLevel::*;
        match self {
            Tr0 => "tr0",
            Tr1 => "tr1",
            Tr2 => "tr2",
            Tr3 => "tr3",
            Tr4 => "tr4",
            Tr5 => "tr5",
            Exactness => "exactness",
            Derotation => "derotation",
            Prop213 => "prop213",
        }
    }
}

struct Ctx<'a> {
    cat: &'a CategoryPresentation,
    closure: &'a ClosureIndex,
    config: &'a SearchConfig,
    rank_bound: usize,
    objects: Vec<Obj>,
}

impl<'a> Ctx<'a> {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed.wrapping_add(salt))
    }

    fn random_automorphism(&self, obj: &Obj, rng: &mut ChaCha8Rng) -> Option<(Mor, Mor)> {
        for _ in 0..INVERTIBLE_TRIES {
            let m = self.cat.random_mor(obj, obj, rng);
            if let Some(inv) = self.cat.is_isomorphism(&m) {
                return Some((m, inv));
            }
        }
        None
    }
}

/// Run the selected levels against the store; one report section per level.
pub fn check_axioms(
    cat: &CategoryPresentation,
    store: &Triangulation,
    levels: &[AxiomLevel],
    config: &SearchConfig,
) -> Report {
    let closure = ClosureIndex::build(cat, store);
    let ctx = Ctx {
        cat,
        closure: &closure,
        config,
        rank_bound: store.rank_bound,
        objects: cat.enumerate_objects(store.rank_bound),
    };
    let mut sorted = levels.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut report = Report::new();
    for level in sorted {
        let section = match level {
            AxiomLevel::Tr0 => check_tr0(&ctx),
            AxiomLevel::Tr1 => check_tr1(&ctx),
            AxiomLevel::Tr2 => check_tr2(&ctx),
            AxiomLevel::Tr3 => check_tr3(&ctx),
            AxiomLevel::Tr4 => check_tr4(&ctx),
            AxiomLevel::Tr5 => check_tr5(&ctx),
            AxiomLevel::Exactness => check_exactness(&ctx),
            AxiomLevel::Derotation => derotation_section(&ctx),
            AxiomLevel::Prop213 => check_prop213(&ctx),
        };
        report.push(section);
    }
    report
}

/// Standalone de-rotation check (the running assumption of the theory).
pub fn check_derotation(
    cat: &CategoryPresentation,
    store: &Triangulation,
    config: &SearchConfig,
) -> CheckReport {
    let closure = ClosureIndex::build(cat, store);
    let ctx = Ctx {
        cat,
        closure: &closure,
        config,
        rank_bound: store.rank_bound,
        objects: cat.enumerate_objects(store.rank_bound),
    };
    derotation_section(&ctx)
}

/// TR(0) is structural; the check conjugates generators by random
/// isomorphism triples and re-decides distinguishedness.
fn check_tr0(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("tr0: closure under isomorphism");
    rep.notes.push(format!("rank bound {}", ctx.rank_bound));
    let gens = &ctx.closure.basics;
    if gens.is_empty() {
        rep.notes.push("empty store".into());
        return rep;
    }
    let mut rng = ctx.rng(0xA0);
    for k in 0..TR0_SAMPLES {
        let t = &gens[k % gens.len()];
        let Some((a, _)) = ctx.random_automorphism(t.a(), &mut rng) else { continue };
        let Some((b, _)) = ctx.random_automorphism(t.b(), &mut rng) else { continue };
        let Some((c, _)) = ctx.random_automorphism(t.c(), &mut rng) else { continue };
        let conj = conjugate_triangle(ctx.cat, t, &a, &b, &c).expect("isomorphism triple");
        rep.checked += 1;
        match is_distinguished(ctx.cat, ctx.closure, &conj, ctx.config) {
            Decision::Yes(()) => {}
            Decision::No => rep.violations.push(format!(
                "conjugate of a generator not recognized as distinguished: {}",
                conj.display(ctx.cat)
            )),
            Decision::Undecided => rep.undecided.push(format!(
                "conjugate of a generator undecided: {}",
                conj.display(ctx.cat)
            )),
        }
    }
    rep
}

/// TR(1): the trivial triangle on every object within the rank bound.
fn check_tr1(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("tr1: trivial triangles");
    for obj in &ctx.objects {
        let t = trivial_triangle(ctx.cat, obj);
        rep.checked += 1;
        match is_distinguished(ctx.cat, ctx.closure, &t, ctx.config) {
            Decision::Yes(()) => {}
            Decision::No => rep
                .violations
                .push(format!("trivial triangle on {} not distinguished", ctx.cat.obj_name(obj))),
            Decision::Undecided => rep
                .undecided
                .push(format!("trivial triangle on {} undecided", ctx.cat.obj_name(obj))),
        }
    }
    rep
}

/// TR(2): every morphism within the rank bound extends to a distinguished
/// triangle. Checked by covering each hom-space with the orbits of the
/// candidate first-morphisms under isomorphisms on both endpoints.
fn check_tr2(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("tr2: every morphism extends");
    let cat = ctx.cat;
    for src in &ctx.objects {
        for tgt in &ctx.objects {
            let dim = cat.hom_space_dim(src, tgt);
            let Some(all) = cat.enumerate_homs(src, tgt, ctx.config.enum_limit) else {
                // Too many morphisms to enumerate: fall back to sampling.
                let mut rng = ctx.rng(0xB2);
                for _ in 0..TR2_SAMPLE_FALLBACK {
                    let f = cat.random_mor(src, tgt, &mut rng);
                    rep.checked += 1;
                    match extend_morphism(cat, ctx.closure, &f, ctx.config) {
                        Decision::Yes(_) => {}
                        Decision::No => rep
                            .violations
                            .push(format!("no extension for {}", cat.mor_display(&f))),
                        Decision::Undecided => rep
                            .undecided
                            .push(format!("extension undecided for {}", cat.mor_display(&f))),
                    }
                }
                rep.undecided.push(format!(
                    "Hom({},{}) too large to enumerate; sampled {} morphisms",
                    cat.obj_name(src),
                    cat.obj_name(tgt),
                    TR2_SAMPLE_FALLBACK
                ));
                continue;
            };
            let total = all.len();
            rep.checked += total;
            let mut covered: HashSet<Vec<Scalar>> = HashSet::with_capacity(total);
            let (cands, capped) = ctx.closure.extension_candidates(cat, src, tgt);
            if capped {
                rep.undecided.push(format!(
                    "candidate cap reached for Hom({},{})",
                    cat.obj_name(src),
                    cat.obj_name(tgt)
                ));
            }
            let mut enumerable = true;
            for cand in &cands {
                let Some(isos_a) = cat.isomorphisms_between(src, cand.a(), ctx.config.enum_limit)
                else {
                    enumerable = false;
                    break;
                };
                let Some(isos_b) = cat.isomorphisms_between(tgt, cand.b(), ctx.config.enum_limit)
                else {
                    enumerable = false;
                    break;
                };
                let mut seen_fa: HashSet<Vec<Scalar>> = HashSet::new();
                let mut fa_mors: Vec<Mor> = Vec::new();
                for (a, _) in &isos_a {
                    let fa = cat.compose(&cand.f, a).expect("shape");
                    if seen_fa.insert(cat.flatten(&fa)) {
                        fa_mors.push(fa);
                    }
                }
                for (_, b_inv) in &isos_b {
                    for fa in &fa_mors {
                        let m = cat.compose(b_inv, fa).expect("shape");
                        covered.insert(cat.flatten(&m));
                    }
                    if covered.len() == total {
                        break;
                    }
                }
                if covered.len() == total {
                    break;
                }
            }
            if !enumerable {
                rep.undecided.push(format!(
                    "isomorphism sets of Hom({},{}) too large; coverage not decided",
                    cat.obj_name(src),
                    cat.obj_name(tgt)
                ));
                continue;
            }
            if covered.len() < total && dim == 0 {
                // A zero-dimensional hom-space has only the zero morphism;
                // coverage may still legitimately fail if no candidate fits.
            }
            if covered.len() < total {
                let mut reported = 0;
                for f in &all {
                    if !covered.contains(&cat.flatten(f)) {
                        if reported < MAX_WITNESSES {
                            rep.violations
                                .push(format!("no extension for {}", cat.mor_display(f)));
                        }
                        reported += 1;
                    }
                }
                if reported > MAX_WITNESSES {
                    rep.violations.push(format!(
                        "... and {} more uncovered morphisms in Hom({},{})",
                        reported - MAX_WITNESSES,
                        cat.obj_name(src),
                        cat.obj_name(tgt)
                    ));
                }
            }
        }
    }
    rep
}

/// TR(3): the rotation of everything in the closure is distinguished, and
/// consecutive morphisms of closure triangles compose to zero.
fn check_tr3(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("tr3: rotation");
    let cat = ctx.cat;
    for t in &ctx.closure.basics {
        let r = rotate(cat, t);
        if let Err(e) = r.validate_shape(cat) {
            rep.violations.push(format!("rotation of {} is malformed: {e}", t.display(cat)));
            continue;
        }
        rep.checked += 1;
        match is_distinguished(cat, ctx.closure, &r, ctx.config) {
            Decision::Yes(()) => {}
            Decision::No => rep
                .violations
                .push(format!("rotation not distinguished: {}", r.display(cat))),
            Decision::Undecided => {
                rep.undecided.push(format!("rotation undecided: {}", r.display(cat)))
            }
        }
    }
    rep
}

/// TR(4): for pairs of closure triangles and every commuting (a, b), a
/// completing c exists. Linear in (a, b), so the whole commuting space is
/// checked by a subspace-containment test instead of point enumeration.
fn check_tr4(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("tr4: completion of commuting squares");
    let cat = ctx.cat;
    let basics = &ctx.closure.basics;
    for t1 in basics {
        for t2 in basics {
            rep.checked += 1;
            if let Some(witness) = tr4_pair_violation(cat, t1, t2) {
                rep.violations.push(witness);
                if rep.violations.len() > MAX_WITNESSES {
                    rep.notes.push("stopping after too many violations".into());
                    return rep;
                }
            }
        }
    }
    // Direct sums of closure elements are also distinguished; sample pairs.
    let mut rng = ctx.rng(0xB4);
    let mut sums_checked = 0;
    for _ in 0..TR4_SUM_SAMPLES {
        if basics.is_empty() {
            break;
        }
        let pick = |rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(0..basics.len());
            let j = rng.gen_range(0..basics.len());
            super::triangle::sum_triangles(cat, &basics[i], &basics[j])
        };
        let t1 = pick(&mut rng);
        let t2 = pick(&mut rng);
        let within = |t: &Triangle| {
            t.a().rank() <= ctx.rank_bound
                && t.b().rank() <= ctx.rank_bound
                && t.c().rank() <= ctx.rank_bound
        };
        if !within(&t1) || !within(&t2) {
            continue;
        }
        sums_checked += 1;
        rep.checked += 1;
        if let Some(witness) = tr4_pair_violation(cat, &t1, &t2) {
            rep.violations.push(witness);
        }
    }
    rep.notes.push(format!(
        "{} closure pairs exhaustively, {} sampled direct-sum pairs",
        basics.len() * basics.len(),
        sums_checked
    ));
    rep
}

/// The commuting (a,b) pairs form a linear subspace S; completion works for
/// all of S iff the induced right-hand sides lie in the image of the
/// c-equation matrix.
fn tr4_pair_violation(cat: &CategoryPresentation, t1: &Triangle, t2: &Triangle) -> Option<String> {
    let da = cat.hom_space_dim(t1.a(), t2.a());
    let db = cat.hom_space_dim(t1.b(), t2.b());
    if da + db == 0 {
        return None;
    }
    let fld = cat.field;
    // Commuting condition b∘f1 - f2∘a = 0 over stacked (a, b) coordinates.
    let f2a = cat.compose_left_matrix(&t2.f, t1.a());
    let bf1 = cat.compose_right_matrix(&t1.f, t2.b());
    let rows = bf1.rows;
    let mut e = Mat::zeros(fld, rows, da + db);
    for r in 0..rows {
        for c in 0..da {
            e.set(r, c, fld.neg(f2a.at(r, c)));
        }
        for c in 0..db {
            e.set(r, da + c, bf1.at(r, c).clone());
        }
    }
    let s = crate::exactla::nullspace(&e);
    if s.dim() == 0 {
        return None;
    }
    // c-equations: [c∘g1; h2∘c] = [g2∘b; (Ta)∘h1].
    let m1 = cat.compose_right_matrix(&t1.g, t2.c());
    let m2 = cat.compose_left_matrix(&t2.h, t1.c());
    let m = m1.vstack(&m2);
    let image = Subspace::from_rows(
        fld,
        m.rows,
        &(0..m.cols).map(|c| m.col(c)).collect::<Vec<_>>(),
    );
    // Right-hand side as a linear map of (a, b).
    let g2b = cat.compose_left_matrix(&t2.g, t1.b());
    let ta_mat = cat.functor_matrix(&cat.shift, t1.a(), t2.a());
    let ta2 = cat.apply_functor_obj(&cat.shift, t2.a());
    let h1_ta = cat.compose_right_matrix(&t1.h, &ta2).mul(&ta_mat);
    for v in s.basis_rows() {
        let (av, bv) = v.split_at(da);
        let top = g2b.mul_vec(bv);
        let bottom = h1_ta.mul_vec(av);
        let mut rhs = top;
        rhs.extend(bottom);
        if !image.contains(&rhs) {
            let a = cat.unflatten(t1.a(), t2.a(), av);
            let b = cat.unflatten(t1.b(), t2.b(), bv);
            return Some(format!(
                "no completion for the commuting pair a={}, b={} between {} and {}",
                cat.mor_display(&a),
                cat.mor_display(&b),
                t1.display(cat),
                t2.display(cat)
            ));
        }
    }
    None
}

/// TR(5): octahedra over composable pairs. Exhaustive over pairs of
/// morphisms between indecomposables, plus seeded samples over larger
/// objects within the rank bound.
fn check_tr5(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("tr5: octahedra");
    let cat = ctx.cat;
    let singles: Vec<Obj> = (0..cat.indec_count()).map(Obj::single).collect();
    for x in &singles {
        for y in &singles {
            let Some(homs_a) = cat.enumerate_homs(x, y, ctx.config.enum_limit) else { continue };
            for u in &singles {
                let Some(homs_d) = cat.enumerate_homs(y, u, ctx.config.enum_limit) else { continue };
                for a in &homs_a {
                    for d in &homs_d {
                        tr5_case(ctx, a, d, &mut rep);
                    }
                }
            }
        }
    }
    let exhaustive = rep.checked;
    let mut rng = ctx.rng(0xB5);
    for _ in 0..TR5_RANDOM_SAMPLES {
        let x = &ctx.objects[rng.gen_range(0..ctx.objects.len())];
        let y = &ctx.objects[rng.gen_range(0..ctx.objects.len())];
        let u = &ctx.objects[rng.gen_range(0..ctx.objects.len())];
        let a = cat.random_mor(x, y, &mut rng);
        let d = cat.random_mor(y, u, &mut rng);
        tr5_case(ctx, &a, &d, &mut rep);
    }
    rep.notes.push(format!(
        "{} composable pairs over indecomposables exhaustively, {} sampled",
        exhaustive,
        rep.checked - exhaustive
    ));
    rep
}

fn tr5_case(ctx: &Ctx, a: &Mor, d: &Mor, rep: &mut CheckReport) {
    let cat = ctx.cat;
    let da = cat.compose(d, a).expect("composable");
    let mut triples: Vec<Vec<Triangle>> = Vec::new();
    for f in [a, d, &da] {
        let mut over: Vec<Triangle> = ctx
            .closure
            .basics
            .iter()
            .filter(|t| &t.f == f)
            .take(2)
            .cloned()
            .collect();
        match extend_morphism(cat, ctx.closure, f, ctx.config) {
            Decision::Yes(t) => {
                if !over.contains(&t) {
                    over.push(t);
                }
            }
            Decision::No => {
                rep.violations
                    .push(format!("tr5: no extension for {}", cat.mor_display(f)));
                return;
            }
            Decision::Undecided => {
                rep.undecided
                    .push(format!("tr5: extension undecided for {}", cat.mor_display(f)));
                return;
            }
        }
        triples.push(over);
    }
    for t1 in &triples[0] {
        for t2 in &triples[1] {
            for t3 in &triples[2] {
                rep.checked += 1;
                match octahedron(cat, ctx.closure, t1, t2, t3, ctx.config) {
                    Ok(Decision::Yes(_)) => {}
                    Ok(Decision::No) => rep.violations.push(format!(
                        "octahedron has no completion over a={}, d={}",
                        cat.mor_display(a),
                        cat.mor_display(d)
                    )),
                    Ok(Decision::Undecided) => rep.undecided.push(format!(
                        "octahedron undecided over a={}, d={}",
                        cat.mor_display(a),
                        cat.mor_display(d)
                    )),
                    Err(e) => rep.violations.push(format!("octahedron setup failed: {e}")),
                }
            }
        }
    }
}

/// Violations of exactness of Hom(-, E) at the middle node of a triangle:
/// requires g∘f = 0 and ker(∘f) = im(∘g) for every test object E.
pub fn check_triangle_exactness(
    cat: &CategoryPresentation,
    t: &Triangle,
    test_objects: &[Obj],
) -> Vec<String> {
    let mut out = Vec::new();
    let gf = cat.compose(&t.g, &t.f).expect("shape");
    if !cat.mor_is_zero(&gf) {
        out.push(format!("g∘f != 0 on {}", t.display(cat)));
    }
    for e in test_objects {
        let mf = cat.compose_right_matrix(&t.f, e);
        let mg = cat.compose_right_matrix(&t.g, e);
        let rank_f = rank_and_echelon(&mf).rank;
        let rank_g = rank_and_echelon(&mg).rank;
        let mid = cat.hom_space_dim(t.b(), e);
        if rank_f + rank_g != mid {
            out.push(format!(
                "Hom(-,{}) not exact at Hom({},{}): rank(∘f)={} + rank(∘g)={} != {}",
                cat.obj_name(e),
                cat.obj_name(t.b()),
                cat.obj_name(e),
                rank_f,
                rank_g,
                mid
            ));
        }
    }
    out
}

/// The long exact sequence of Hom(-, E): checked on every generator through
/// three rotations, against every indecomposable test object.
fn check_exactness(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("exactness: long Hom sequence");
    let cat = ctx.cat;
    let tests: Vec<Obj> = (0..cat.indec_count()).map(Obj::single).collect();
    for t in &ctx.closure.basics {
        let mut current = t.clone();
        for depth in 0..4 {
            rep.checked += 1;
            for v in check_triangle_exactness(cat, &current, &tests) {
                rep.violations.push(format!("depth {depth} of {}: {v}", t.display(cat)));
            }
            let hg = cat.compose(&current.h, &current.g).expect("shape");
            if !cat.mor_is_zero(&hg) {
                rep.violations
                    .push(format!("depth {depth} of {}: h∘g != 0", t.display(cat)));
            }
            current = rotate(cat, &current);
        }
    }
    rep
}

/// De-rotation: whenever a closure triangle has the shape of a rotation,
/// every pre-rotation of it must be distinguished. Passing here forces the
/// shift to be faithful, and that implication is cross-checked.
fn derotation_section(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("derotation");
    let cat = ctx.cat;
    for t in &ctx.closure.basics {
        // View t as (B, C, Z, g, h, k) and look for A, f with T A ≅ Z and
        // -T f matching k after transporting along the permutation.
        let z = t.c();
        for a_obj in &ctx.objects {
            let ta = cat.apply_functor_obj(&cat.shift, a_obj);
            if !ta.multiset_eq(z) {
                continue;
            }
            let perm = cat.permutation_mor(z, &ta).expect("multisets agree");
            let perm_inv = cat.is_isomorphism(&perm).expect("permutations invert");
            let target_k = cat.compose(&t.h, &perm_inv).expect("shape");
            // Solve -T f = k∘π⁻¹ over f: A -> B.
            let mut sys = MorSystem::new(cat);
            let f = sys.unknown(a_obj, t.a());
            let tmat = cat.functor_matrix(&cat.shift, a_obj, t.a());
            sys.equation(&[(f, &tmat.neg())], &cat.flatten(&target_k));
            let Some(sols) = sys.solve() else { continue };
            let Some(points) = sols.enumerate_points(cat.field, ctx.config.enum_limit) else {
                rep.undecided.push(format!(
                    "pre-rotation solution space too large at {} over A={}",
                    t.display(cat),
                    cat.obj_name(a_obj)
                ));
                continue;
            };
            for p in points {
                let f_mor = sols.point_mors(cat, &p).remove(0);
                let candidate = Triangle::new(
                    f_mor.clone(),
                    t.f.clone(),
                    cat.compose(&perm, &t.g).expect("shape"),
                );
                rep.checked += 1;
                match is_distinguished(cat, ctx.closure, &candidate, ctx.config) {
                    Decision::Yes(()) => {}
                    Decision::No => rep.violations.push(format!(
                        "de-rotation fails: {} rotates onto {} but is not distinguished",
                        candidate.display(cat),
                        t.display(cat)
                    )),
                    Decision::Undecided => rep.undecided.push(format!(
                        "de-rotation undecided for {}",
                        candidate.display(cat)
                    )),
                }
            }
        }
    }
    // Lemma-grade implication: a de-rotation-closed store forces T faithful.
    let pairs: Vec<(Obj, Obj)> = ctx
        .objects
        .iter()
        .flat_map(|x| ctx.objects.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    match cat.functor_faithful_on(&cat.shift, &pairs) {
        None => rep.notes.push("shift faithful within rank bound".into()),
        Some((x, y)) => {
            rep.notes.push(format!(
                "shift not faithful on Hom({},{})",
                cat.obj_name(&x),
                cat.obj_name(&y)
            ));
            if rep.violations.is_empty() && rep.undecided.is_empty() {
                rep.violations.push(format!(
                    "inconsistency: de-rotation passed but the shift is not faithful on Hom({},{})",
                    cat.obj_name(&x),
                    cat.obj_name(&y)
                ));
            }
        }
    }
    rep
}

/// Two isomorphisms imply the third: sample morphisms of triangles with
/// invertible (a, b) and check the completed c is invertible.
fn check_prop213(ctx: &Ctx) -> CheckReport {
    let mut rep = CheckReport::new("prop213: two isomorphisms imply the third");
    let cat = ctx.cat;
    let basics = &ctx.closure.basics;
    if basics.is_empty() {
        rep.notes.push("empty store".into());
        return rep;
    }
    let mut rng = ctx.rng(0xC213);
    // Deterministic sweep over matching pairs; self-pairs always admit the
    // identity square, so the sample target is reachable on any store.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basics.len() {
        pairs.push((i, i));
    }
    for i in 0..basics.len() {
        for j in 0..basics.len() {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    for (i, j) in pairs {
        if rep.checked >= PROP213_TARGET {
            break;
        }
        let t1 = &basics[i];
        let t2 = &basics[j];
        if !t1.a().multiset_eq(t2.a()) || !t1.b().multiset_eq(t2.b()) {
            continue;
        }
        // Commuting (a, b) space.
        let mut sys = MorSystem::new(cat);
        let a = sys.unknown(t1.a(), t2.a());
        let b = sys.unknown(t1.b(), t2.b());
        let f2a = cat.compose_left_matrix(&t2.f, t1.a());
        let bf1 = cat.compose_right_matrix(&t1.f, t2.b());
        let zero = vec![cat.field.zero(); bf1.rows];
        sys.equation(&[(b, &bf1), (a, &f2a.neg())], &zero);
        let Some(sols) = sys.solve() else { continue };
        let mut squares: Vec<(Mor, Mor)> = Vec::new();
        if i == j {
            squares.push((cat.identity_mor(t1.a()), cat.identity_mor(t1.b())));
        }
        for _ in 0..24 {
            if squares.len() >= 4 {
                break;
            }
            let p = sols.sample_point(cat.field, &mut rng);
            let mors = sols.point_mors(cat, &p);
            if cat.is_isomorphism(&mors[0]).is_some()
                && cat.is_isomorphism(&mors[1]).is_some()
                && !squares.iter().any(|(a0, b0)| a0 == &mors[0] && b0 == &mors[1])
            {
                squares.push((mors[0].clone(), mors[1].clone()));
            }
        }
        for (a_mor, b_mor) in squares {
            if rep.checked >= PROP213_TARGET {
                break;
            }
            rep.checked += 1;
            match complete_morphism(cat, t1, t2, &a_mor, &b_mor) {
                Ok(Some(c)) => {
                    if cat.is_isomorphism(&c).is_none() {
                        rep.violations.push(format!(
                            "completed c={} is not invertible although a and b are",
                            cat.mor_display(&c)
                        ));
                    }
                }
                Ok(None) => rep.violations.push(format!(
                    "no completion although a={} and b={} are isomorphisms",
                    cat.mor_display(&a_mor),
                    cat.mor_display(&b_mor)
                )),
                Err(e) => rep.violations.push(format!("internal: {e}")),
            }
        }
    }
    rep.notes.push(format!("{} sampled triangle morphisms", rep.checked));
    if rep.checked < PROP213_TARGET {
        rep.undecided
            .push(format!("only {} of {} target samples found", rep.checked, PROP213_TARGET));
    }
    rep
}

/// TR(0)-invariance helper exposed for tests: conjugating by the given
/// isomorphism triple yields an isomorphic sextuple.
pub fn conjugate_triangle(
    cat: &CategoryPresentation,
    t: &Triangle,
    a: &Mor,
    b: &Mor,
    c: &Mor,
) -> Result<Triangle, Error> {
    let a_inv = cat.is_isomorphism(a).ok_or_else(|| Error::Precondition("a not invertible".into()))?;
    let b_inv = cat.is_isomorphism(b).ok_or_else(|| Error::Precondition("b not invertible".into()))?;
    let c_inv = cat.is_isomorphism(c).ok_or_else(|| Error::Precondition("c not invertible".into()))?;
    let f = cat.compose(&cat.compose(b, &t.f)?, &a_inv)?;
    let g = cat.compose(&cat.compose(c, &t.g)?, &b_inv)?;
    let ta = cat.apply_functor(&cat.shift, a);
    let h = cat.compose(&cat.compose(&ta, &t.h)?, &c_inv)?;
    Ok(Triangle::new(f, g, h))
}
