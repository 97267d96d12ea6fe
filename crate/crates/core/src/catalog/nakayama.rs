//! Stable module category of k[x]/(x^n): the workhorse fixture.
//!
//! The construction uses the polynomial model of maps between truncated
//! polynomial modules: a homomorphism M_i -> M_j is multiplication by a
//! polynomial, a basis is given by the monomials x^e with
//! max(0, j-i) <= e < j, and a map factors through the free module exactly
//! when e >= n-i. Stable hom-spaces keep the monomials below both cutoffs;
//! composition adds exponents and truncates. The matrix oracle in this
//! crate's `oracle` module cross-checks every dimension produced here.

use std::collections::BTreeMap;

use crate::addcat::{CategoryPresentation, FunctorData, Obj};
use crate::exactla::{FieldSpec, Mat};
use crate::rtstruct::{direct_sum_triangle, trivial_triangle, Triangle, Triangulation};
use crate::Error;

/// Monomial exponent range of the stable basis of Hom(M_i, M_j): `lo..hi`.
/// `i`, `j` are 1-based module sizes.
fn stable_range(n: usize, i: usize, j: usize) -> (usize, usize) {
    let lo = j.saturating_sub(i);
    let hi = j.min(n - i);
    (lo, hi.max(lo))
}

fn check_params(n: usize, p: u64) -> Result<FieldSpec, Error> {
    if !(2..=6).contains(&n) {
        return Err(Error::Parameter(format!("n = {n} outside 2..=6")));
    }
    if ![2, 3, 5].contains(&p) {
        return Err(Error::Parameter(format!("p = {p} not in {{2,3,5}}")));
    }
    FieldSpec::prime(p)
}

/// The stable category of k[x]/(x^n) over F_p, with its shift T = Ω⁻¹ and a
/// triangulation generated by the short exact sequences among
/// indecomposables plus the split triangles.
pub fn nakayama_stable(n: usize, p: u64) -> Result<(CategoryPresentation, Triangulation), Error> {
    let field = check_params(n, p)?;
    let count = n - 1;
    // Index m = 0..count stands for the module M_{m+1}.
    let size = |m: usize| m + 1;
    let indecomposables: Vec<String> = (0..count).map(|m| format!("M{}", size(m))).collect();

    let mut hom_dims = vec![vec![0usize; count]; count];
    let mut basis_names = BTreeMap::new();
    for x in 0..count {
        for y in 0..count {
            let (lo, hi) = stable_range(n, size(x), size(y));
            hom_dims[x][y] = hi - lo;
            if hi > lo {
                basis_names.insert((x, y), (lo..hi).map(|e| format!("x^{e}")).collect::<Vec<_>>());
            }
        }
    }

    let mut comp = BTreeMap::new();
    for x in 0..count {
        for y in 0..count {
            if hom_dims[x][y] == 0 {
                continue;
            }
            for z in 0..count {
                if hom_dims[y][z] == 0 || hom_dims[x][z] == 0 {
                    continue;
                }
                let (flo, _) = stable_range(n, size(x), size(y));
                let (glo, _) = stable_range(n, size(y), size(z));
                let (olo, ohi) = stable_range(n, size(x), size(z));
                let mut table = Vec::with_capacity(hom_dims[y][z]);
                for gb in 0..hom_dims[y][z] {
                    let mut row = Vec::with_capacity(hom_dims[x][y]);
                    for fb in 0..hom_dims[x][y] {
                        let e = (flo + fb) + (glo + gb);
                        let mut cell = vec![field.zero(); ohi - olo];
                        if e < ohi {
                            debug_assert!(e >= olo);
                            cell[e - olo] = field.one();
                        }
                        row.push(cell);
                    }
                    table.push(row);
                }
                comp.insert((x, y, z), table);
            }
        }
    }

    let id_coords = (0..count)
        .map(|x| {
            let mut v = vec![field.zero(); hom_dims[x][x]];
            v[0] = field.one();
            v
        })
        .collect();

    // Shift T = Ω⁻¹: M_i goes to M_{n-i}; on morphisms x^e: M_i -> M_j lifts
    // over the injective envelope and induces x^{e+i-j}: M_{n-i} -> M_{n-j}.
    let shift_of = |m: usize| count - 1 - m; // M_{m+1} -> M_{n-(m+1)}
    let mut on_homs = BTreeMap::new();
    for x in 0..count {
        for y in 0..count {
            let d = hom_dims[x][y];
            if d == 0 {
                continue;
            }
            let (lo, _) = stable_range(n, size(x), size(y));
            let (tx, ty) = (shift_of(x), shift_of(y));
            let (tlo, thi) = stable_range(n, size(tx), size(ty));
            let mut m = Mat::zeros(field, hom_dims[tx][ty], d);
            for b in 0..d {
                let e = lo + b;
                let te = e + size(x) - size(y);
                if (tlo..thi).contains(&te) {
                    m.set(te - tlo, b, field.one());
                }
            }
            on_homs.insert((x, y), m);
        }
    }
    let shift = FunctorData {
        on_objects: (0..count).map(|m| Obj::single(shift_of(m))).collect(),
        on_homs,
    };

    let cat = CategoryPresentation {
        field,
        indecomposables,
        hom_dims,
        basis_names,
        comp,
        id_coords,
        shift,
    };

    let generators = standard_triangles(&cat)
        .into_iter()
        .chain(cone_triangles(&cat, n))
        .collect();
    Ok((cat, Triangulation::new(generators, 2)))
}

/// Trivial and split triangles: the Lemma-2.9 layer of any store.
pub(crate) fn standard_triangles(cat: &CategoryPresentation) -> Vec<Triangle> {
    let mut out = Vec::new();
    for x in 0..cat.indec_count() {
        out.push(trivial_triangle(cat, &Obj::single(x)));
        out.push(direct_sum_triangle(cat, &Obj::single(x), &Obj::zero()));
    }
    for x in 0..cat.indec_count() {
        for y in 0..cat.indec_count() {
            out.push(direct_sum_triangle(cat, &Obj::single(x), &Obj::single(y)));
        }
    }
    out
}

/// The standard triangle over every stable basis morphism x^e: M_i -> M_j.
///
/// The mapping cone is the pushout (M_j ⊕ M_n) / (x^e, x^{n-i}), whose
/// Smith normal form over k[x] splits it as M_e ⊕ M_{j+n-i-e}; the free and
/// zero parts drop in the stable category. In the split basis w1 = v +
/// x^{n-i-e}·u, w2 = u (v, u the images of the generators of M_j and M_n)
/// the inclusion of M_j and the projection to the cosyzygy M_{n-i} read off
/// as monomial components, giving g and h exactly.
fn cone_triangles(cat: &CategoryPresentation, n: usize) -> Vec<Triangle> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let (lo, hi) = stable_range(n, i, j);
            for e in lo..hi {
                out.push(cone_triangle(cat, n, i, j, e));
            }
        }
    }
    out
}

/// The distinguished triangle M_i -> M_j -> C -> T M_i over x^e, with
/// C = M_e ⊕ M_{j+n-i-e} stably (each summand dropped when zero or free).
fn cone_triangle(cat: &CategoryPresentation, n: usize, i: usize, j: usize, e: usize) -> Triangle {
    let field = cat.field;
    let idx = |sz: usize| sz - 1;
    let s2 = j + n - i - e;
    debug_assert!(e < n - i && e < j, "stable basis exponent out of range");
    debug_assert!((n - i..=n).contains(&s2));

    let mut summands = Vec::new();
    if e > 0 {
        summands.push(idx(e));
    }
    if s2 < n {
        summands.push(idx(s2));
    }
    let cone = Obj::from_summands(summands);
    let mid = Obj::single(idx(j));
    let cosyz = Obj::single(idx(n - i));

    let f = monomial_mor(cat, n, i, j, e);

    // g: M_j -> C with components (x^0 into M_e, -x^{n-i-e} into M_{s2}).
    let mut g = cat.zero_mor(&mid, &cone);
    let mut h = cat.zero_mor(&cone, &cosyz);
    let mut pos = 0;
    if e > 0 {
        set_monomial(n, &mut g.blocks[pos][0], j, e, 0, field.one());
        set_monomial(n, &mut h.blocks[0][pos], e, n - i, n - i - e, field.one());
        pos += 1;
    }
    if s2 < n {
        set_monomial(n, &mut g.blocks[pos][0], j, s2, n - i - e, field.neg(&field.one()));
        set_monomial(n, &mut h.blocks[0][pos], s2, n - i, 0, field.one());
    }
    Triangle::new(f, g, h)
}

/// Write the stable class of c·x^t into a block of Hom(M_i, M_j)
/// coordinates (a no-op when the monomial is stably zero).
fn set_monomial(
    n: usize,
    block: &mut [crate::exactla::Scalar],
    i: usize,
    j: usize,
    t: usize,
    c: crate::exactla::Scalar,
) {
    let (lo, hi) = stable_range(n, i, j);
    if (lo..hi).contains(&t) {
        block[t - lo] = c;
    }
}

/// The stable class of multiplication by x^e as a morphism M_i -> M_j.
fn monomial_mor(
    cat: &CategoryPresentation,
    n: usize,
    i: usize,
    j: usize,
    e: usize,
) -> crate::addcat::Mor {
    let src = Obj::single(i - 1);
    let tgt = Obj::single(j - 1);
    let (lo, hi) = stable_range(n, i, j);
    let mut m = cat.zero_mor(&src, &tgt);
    if (lo..hi).contains(&e) {
        m.blocks[0][0][e - lo] = cat.field.one();
    }
    m
}
