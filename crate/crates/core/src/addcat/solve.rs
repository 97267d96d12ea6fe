//! Joint linear systems over morphism unknowns, and bounded searches of
//! their solution spaces for invertible points.
//!
//! Every "does a morphism exist making this diagram commute" question in the
//! crate reduces to a [`MorSystem`]: unknowns are morphisms between fixed
//! objects, equations are linear maps of their flattened coordinates. The
//! solution set is an affine space; when a search additionally needs
//! invertible components (isomorphism witnesses), it enumerates the space if
//! it is small enough and otherwise falls back to seeded random sampling,
//! returning `Undecided` when the budget runs out.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{enumerate_vectors, solve, FieldSpec, Mat, Scalar, Subspace};
use crate::report::Decision;

use super::mor::Mor;
use super::obj::Obj;
use super::presentation::CategoryPresentation;

/// Budgets for solution-space searches. With a fixed seed all searches are
/// deterministic.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Enumerate the affine solution space exhaustively when it has at most
    /// this many field points.
    pub enum_limit: u64,
    /// Number of random points to try above the enumeration limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { enum_limit: 1 << 16, samples: 1024, seed: 0 }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig { seed, ..Default::default() }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub struct MorSystem<'a> {
    cat: &'a CategoryPresentation,
    unknowns: Vec<(Obj, Obj)>,
    offsets: Vec<usize>,
    total: usize,
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

impl<'a> MorSystem<'a> {
    pub fn new(cat: &'a CategoryPresentation) -> Self {
        MorSystem { cat, unknowns: Vec::new(), offsets: Vec::new(), total: 0, rows: Vec::new(), rhs: Vec::new() }
    }

    /// Declare an unknown morphism `source -> target`; returns its handle.
    pub fn unknown(&mut self, source: &Obj, target: &Obj) -> usize {
        let dim = self.cat.hom_space_dim(source, target);
        self.unknowns.push((source.clone(), target.clone()));
        self.offsets.push(self.total);
        self.total += dim;
        self.unknowns.len() - 1
    }

    /// Add the equation `Σ mats[u] · x_u = rhs`, all in flattened
    /// coordinates. Each matrix must map its unknown's coordinate space into
    /// the common row space of dimension `rhs.len()`.
    pub fn equation(&mut self, terms: &[(usize, &Mat)], rhs: &[Scalar]) {
        let fld = self.cat.field;
        for r in 0..rhs.len() {
            let mut row = vec![fld.zero(); self.total];
            for &(u, m) in terms {
                assert_eq!(m.rows, rhs.len(), "equation row-space mismatch");
                let off = self.offsets[u];
                for c in 0..m.cols {
                    row[off + c] = fld.add(&row[off + c], m.at(r, c));
                }
            }
            self.rows.push(row);
            self.rhs.push(rhs[r].clone());
        }
    }

    /// Solve the stacked system. `None` means inconsistent.
    pub fn solve(self) -> Option<MorSolutions> {
        let fld = self.cat.field;
        let mat = Mat::from_rows(fld, self.total, &self.rows);
        let sol = solve(&mat, &self.rhs)?;
        Some(MorSolutions {
            unknowns: self.unknowns,
            offsets: self.offsets,
            total: self.total,
            particular: sol.particular,
            nullspace: sol.nullspace,
        })
    }
}

/// The affine space of solutions of a [`MorSystem`].
#[derive(Clone, Debug)]
pub struct MorSolutions {
    pub unknowns: Vec<(Obj, Obj)>,
    offsets: Vec<usize>,
    total: usize,
    pub particular: Vec<Scalar>,
    pub nullspace: Subspace,
}

impl MorSolutions {
    /// Split a stacked coordinate point into one morphism per unknown.
    pub fn point_mors(&self, cat: &CategoryPresentation, point: &[Scalar]) -> Vec<Mor> {
        assert_eq!(point.len(), self.total);
        self.unknowns
            .iter()
            .zip(&self.offsets)
            .map(|((s, t), &off)| {
                let dim = cat.hom_space_dim(s, t);
                cat.unflatten(s, t, &point[off..off + dim])
            })
            .collect()
    }

    pub fn particular_mors(&self, cat: &CategoryPresentation) -> Vec<Mor> {
        let p = self.particular.clone();
        self.point_mors(cat, &p)
    }

    /// Number of solutions, when the field is finite.
    pub fn count(&self, field: FieldSpec) -> Option<u64> {
        let p = field.size()?;
        let mut n: u64 = 1;
        for _ in 0..self.nullspace.dim() {
            n = n.checked_mul(p)?;
        }
        Some(n)
    }

    fn point_from_coeffs(&self, field: FieldSpec, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut point = self.particular.clone();
        for (c, row) in coeffs.iter().zip(self.nullspace.basis_rows()) {
            if field.is_zero(c) {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                point[j] = field.add(&point[j], &field.mul(c, v));
            }
        }
        point
    }

    /// All solution points, if enumerable within the limit. The particular
    /// solution comes first.
    pub fn enumerate_points(&self, field: FieldSpec, limit: u64) -> Option<Vec<Vec<Scalar>>> {
        let coeffs = enumerate_vectors(field, self.nullspace.dim(), limit)?;
        Some(coeffs.iter().map(|c| self.point_from_coeffs(field, c)).collect())
    }

    pub fn sample_point(&self, field: FieldSpec, rng: &mut impl rand::Rng) -> Vec<Scalar> {
        let coeffs: Vec<Scalar> = (0..self.nullspace.dim()).map(|_| field.random(rng)).collect();
        self.point_from_coeffs(field, coeffs.as_slice())
    }

    /// Search the solution space for a point whose components all pass the
    /// predicate, which may attach a witness (typically an inverse).
    pub fn search<W>(
        &self,
        cat: &CategoryPresentation,
        config: &SearchConfig,
        mut accept: impl FnMut(&[Mor]) -> Option<W>,
    ) -> Decision<(Vec<Mor>, W)> {
        if let Some(points) = self.enumerate_points(cat.field, config.enum_limit) {
            for p in points {
                let mors = self.point_mors(cat, &p);
                if let Some(w) = accept(&mors) {
                    return Decision::Yes((mors, w));
                }
            }
            Decision::No
        } else {
            let mut rng = config.rng();
            for _ in 0..config.samples {
                let p = self.sample_point(cat.field, &mut rng);
                let mors = self.point_mors(cat, &p);
                if let Some(w) = accept(&mors) {
                    return Decision::Yes((mors, w));
                }
            }
            Decision::Undecided
        }
    }
}

impl CategoryPresentation {
    /// Two-sided inverse of `f`, if one exists. Solves `f∘g = 1` and
    /// `g∘f = 1` jointly; the solution, when it exists, is unique.
    pub fn is_isomorphism(&self, f: &Mor) -> Option<Mor> {
        let mut sys = MorSystem::new(self);
        let g = sys.unknown(&f.target, &f.source);
        let left = self.compose_left_matrix(f, &f.target);
        sys.equation(&[(g, &left)], &self.flatten(&self.identity_mor(&f.target)));
        let right = self.compose_right_matrix(f, &f.source);
        sys.equation(&[(g, &right)], &self.flatten(&self.identity_mor(&f.source)));
        let sols = sys.solve()?;
        let mors = sols.particular_mors(self);
        Some(mors.into_iter().next().expect("one unknown"))
    }

    /// All isomorphisms x -> y with their inverses, if the hom-space can be
    /// enumerated within `limit` points. `None` means "too large", not
    /// "none exist".
    pub fn isomorphisms_between(&self, x: &Obj, y: &Obj, limit: u64) -> Option<Vec<(Mor, Mor)>> {
        if !x.multiset_eq(y) {
            // Krull-Schmidt: different summand multisets are never isomorphic.
            return Some(Vec::new());
        }
        let all = self.enumerate_homs(x, y, limit)?;
        Some(
            all.into_iter()
                .filter_map(|m| self.is_isomorphism(&m).map(|inv| (m, inv)))
                .collect(),
        )
    }
}
