//! Ground-truth fixtures: stable module categories of truncated polynomial
//! algebras (Frobenius, hence honestly triangulated) and the injectively
//! stable hereditary counterexample, together with the brute-force module
//! oracle that referees every number they produce.

mod a2;
mod nakayama;
mod oracle;

pub use a2::{
    a2_costable, cosyzygy_s2, is_injective, quiv_hom_basis, stable_end_s2_dim, QuivRep,
};
pub use nakayama::nakayama_stable;
pub use oracle::{
    cosyzygy, module_hom_basis, oracle_stable_hom, syzygy, tau_fixes_all, ModuleRep, StableHom,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::report::Status;

    #[test]
    fn oracle_dimensions_for_n4_p2() {
        // The referee table for the main fixture. Computed by enumerating
        // module homomorphisms and quotienting by the free-factoring span;
        // the closed-form min(i,j,n-i,n-j) must agree.
        for i in 1..=3 {
            for j in 1..=3 {
                let s = oracle_stable_hom(4, 2, i, j).unwrap();
                let min_formula = i.min(j).min(4 - i).min(4 - j);
                assert_eq!(s.dim, min_formula, "stable dim mismatch at ({i},{j})");
                assert_eq!(s.dim, s.module_dim - s.free_factoring_dim);
            }
        }
        assert_eq!(oracle_stable_hom(4, 2, 1, 1).unwrap().dim, 1);
        assert_eq!(oracle_stable_hom(4, 2, 2, 2).unwrap().dim, 2);
    }

    #[test]
    fn oracle_dimensions_for_n2() {
        assert_eq!(oracle_stable_hom(2, 2, 1, 1).unwrap().dim, 1);
    }

    #[test]
    fn oracle_composite_through_m2_vanishes_one_way() {
        // The two nonzero stable maps between M_1 and M_2 in k[x]/(x^4)
        // compose to zero in the order M_1 -> M_2 -> M_1 (the composite is
        // multiplication by x, which dies in M_1) but not in the order
        // M_2 -> M_1 -> M_2 (x: M_2 -> M_2 does not factor through the free
        // module).
        let up = oracle_stable_hom(4, 2, 1, 2).unwrap(); // M_1 -> M_2
        let down = oracle_stable_hom(4, 2, 2, 1).unwrap(); // M_2 -> M_1
        assert_eq!(up.dim, 1);
        assert_eq!(down.dim, 1);
        let u = &up.reps[0];
        let d = &down.reps[0];

        let m1_to_m1 = oracle_stable_hom(4, 2, 1, 1).unwrap();
        let du = d.mul(u); // M_1 -> M_2 -> M_1
        let class = m1_to_m1.stable_class(&du).expect("module hom");
        assert!(class.iter().all(|s| m1_to_m1.field.is_zero(s)));

        let m2_to_m2 = oracle_stable_hom(4, 2, 2, 2).unwrap();
        let ud = u.mul(d); // M_2 -> M_1 -> M_2
        let class = m2_to_m2.stable_class(&ud).expect("module hom");
        assert!(class.iter().any(|s| !m2_to_m2.field.is_zero(s)));
    }

    #[test]
    fn cosyzygy_oracle_swaps_modules() {
        for i in 1..=3 {
            let c = cosyzygy(4, 2, i).unwrap();
            assert!(c.is_indecomposable_truncated());
            assert_eq!(c.dimension, 4 - i);
            let s = syzygy(4, 2, i).unwrap();
            assert!(s.is_indecomposable_truncated());
            assert_eq!(s.dimension, 4 - i);
        }
    }

    #[test]
    fn tau_fixes_all_indecomposables() {
        for n in 2..=5 {
            assert!(tau_fixes_all(n, 2).unwrap(), "Ω² should fix everything at n={n}");
        }
        assert!(tau_fixes_all(4, 3).unwrap());
    }

    #[test]
    fn nakayama_dims_match_oracle() {
        // Anti-self-confirmation: the polynomial-model presentation must
        // agree with the matrix oracle on every hom dimension.
        for (n, p) in [(2, 2u64), (3, 2), (4, 2), (4, 3), (5, 2)] {
            let (cat, _) = nakayama_stable(n, p).unwrap();
            assert_eq!(cat.indec_count(), n - 1);
            for i in 1..n {
                for j in 1..n {
                    let s = oracle_stable_hom(n, p, i, j).unwrap();
                    assert_eq!(
                        cat.hom_dim(i - 1, j - 1),
                        s.dim,
                        "dim mismatch at n={n} p={p} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn nakayama_presentation_validates() {
        for (n, p) in [(2, 2u64), (4, 2), (4, 3), (6, 2)] {
            let (cat, tri) = nakayama_stable(n, p).unwrap();
            let rep = cat.validate();
            assert_eq!(rep.status(), Status::Pass, "n={n} p={p}: {:?}", rep.violations);
            for t in &tri.generators {
                t.validate_shape(&cat).unwrap();
            }
        }
    }

    #[test]
    fn nakayama_shift_swaps_and_composites_vanish() {
        let (cat, _) = nakayama_stable(4, 2).unwrap();
        // T swaps M_1 and M_3 and fixes M_2.
        assert_eq!(cat.shift.on_objects[0], crate::addcat::Obj::single(2));
        assert_eq!(cat.shift.on_objects[1], crate::addcat::Obj::single(1));
        assert_eq!(cat.shift.on_objects[2], crate::addcat::Obj::single(0));
        // T sends the nonzero M_1 -> M_3 to a nonzero M_3 -> M_1.
        let m1 = crate::addcat::Obj::single(0);
        let m3 = crate::addcat::Obj::single(2);
        let f = &cat.hom_basis(&m1, &m3)[0];
        let tf = cat.apply_functor(&cat.shift, f);
        assert!(!cat.mor_is_zero(&tf));
        // The composite M_1 -> M_2 -> M_1 vanishes stably.
        let m2 = crate::addcat::Obj::single(1);
        let v = &cat.hom_basis(&m1, &m2)[0];
        let u = &cat.hom_basis(&m2, &m1)[0];
        assert!(cat.mor_is_zero(&cat.compose(u, v).unwrap()));
        // The other composite M_2 -> M_1 -> M_2 is the nilpotent x.
        let vu = cat.compose(v, u).unwrap();
        assert!(!cat.mor_is_zero(&vu));
    }

    #[test]
    fn nakayama_n2_is_one_point() {
        let (cat, _) = nakayama_stable(2, 2).unwrap();
        assert_eq!(cat.indec_count(), 1);
        assert_eq!(cat.hom_dim(0, 0), 1);
        assert_eq!(cat.shift.on_objects[0], crate::addcat::Obj::single(0));
    }

    #[test]
    fn nakayama_triangles_compose_to_zero() {
        let (cat, tri) = nakayama_stable(4, 2).unwrap();
        for t in &tri.generators {
            let gf = cat.compose(&t.g, &t.f).unwrap();
            assert!(cat.mor_is_zero(&gf), "g∘f != 0 on {}", t.display(&cat));
            let hg = cat.compose(&t.h, &t.g).unwrap();
            assert!(cat.mor_is_zero(&hg), "h∘g != 0 on {}", t.display(&cat));
        }
    }

    #[test]
    fn a2_oracle_facts() {
        let field = FieldSpec::prime(2).unwrap();
        // Hom(S_2, S_2) = k with zero injective-factoring ideal: every
        // composite S_2 -> I -> S_2 for I in {S_1, P_1} vanishes.
        assert_eq!(stable_end_s2_dim(2).unwrap(), 1);
        let s2 = QuivRep::simple2(field);
        let p1 = QuivRep::projective1(field);
        assert_eq!(quiv_hom_basis(field, &s2, &p1).len(), 1);
        assert_eq!(quiv_hom_basis(field, &p1, &s2).len(), 0);
        // Ω⁻¹S_2 = S_1 is injective, so T S_2 = 0.
        let c = cosyzygy_s2(2).unwrap();
        assert_eq!((c.dim1, c.dim2), (1, 0));
        assert!(is_injective(&c));
    }

    #[test]
    fn a2_presentation_validates_and_shift_kills() {
        let (cat, tri) = a2_costable(2).unwrap();
        let rep = cat.validate();
        assert_eq!(rep.status(), Status::Pass, "{:?}", rep.violations);
        assert!(cat.shift.on_objects[0].is_zero());
        for t in &tri.generators {
            t.validate_shape(&cat).unwrap();
        }
        // T is not faithful: End(S_2) = k maps onto Hom(0,0) = 0.
        let s2 = crate::addcat::Obj::single(0);
        let pairs = vec![(s2.clone(), s2)];
        assert!(cat.functor_faithful_on(&cat.shift, &pairs).is_some());
    }
}
