//! Brute-force module-theoretic oracle for modules over k[x]/(x^n).
//!
//! This is the referee for every number the fixture generators produce: it
//! enumerates module homomorphisms as matrices commuting with the x-action,
//! computes the subspace factoring through the free module, and returns
//! stable hom dimensions with explicit coset representatives. It is written
//! directly against the linear algebra layer and shares no code with the
//! fixture generators it checks.

use crate::exactla::{nullspace, FieldSpec, Mat, Scalar, Subspace};
use crate::Error;

/// A finite-dimensional k[x]/(x^n)-module: a vector space with a nilpotent
/// x-action.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRep {
    pub dimension: usize,
    pub x_action: Mat,
}

impl ModuleRep {
    /// M_i = k[x]/(x^i) with basis 1, x, ..., x^{i-1}.
    pub fn truncated(field: FieldSpec, i: usize) -> Self {
        let mut m = Mat::zeros(field, i, i);
        for t in 0..i.saturating_sub(1) {
            m.set(t + 1, t, field.one());
        }
        ModuleRep { dimension: i, x_action: m }
    }

    /// Nilpotency index of the x-action: least e with x^e = 0.
    pub fn nilpotency_index(&self) -> usize {
        let n = self.dimension;
        if n == 0 {
            return 0;
        }
        let mut power = Mat::identity(self.x_action.field, n);
        for e in 0..=n {
            if power.is_zero() {
                return e;
            }
            power = power.mul(&self.x_action);
        }
        n + 1
    }

    /// Indecomposable truncated modules are exactly those whose nilpotency
    /// index equals their dimension (a single Jordan block).
    pub fn is_indecomposable_truncated(&self) -> bool {
        self.dimension > 0 && self.nilpotency_index() == self.dimension
    }
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

/// Basis of the space of module homomorphisms src -> tgt, found by solving
/// the commutation equations Φ·x_src = x_tgt·Φ.
pub fn module_hom_basis(src: &ModuleRep, tgt: &ModuleRep) -> Vec<Mat> {
    let field = src.x_action.field;
    let (rows, cols) = (tgt.dimension, src.dimension);
    let unknowns = rows * cols;
    if unknowns == 0 {
        return Vec::new();
    }
    // Row (r,c) of the system: (Φ·x_src - x_tgt·Φ)(r,c) = 0.
    let mut sys = Mat::zeros(field, unknowns, unknowns);
    let idx = |r: usize, c: usize| r * cols + c;
    for r in 0..rows {
        for c in 0..cols {
            let eq = idx(r, c);
            for k in 0..cols {
                let v = src.x_action.at(k, c).clone();
                let cur = sys.at(eq, idx(r, k)).clone();
                sys.set(eq, idx(r, k), field.add(&cur, &v));
            }
            for k in 0..rows {
                let v = field.neg(tgt.x_action.at(r, k));
                let cur = sys.at(eq, idx(k, c)).clone();
                sys.set(eq, idx(k, c), field.add(&cur, &v));
            }
        }
    }
    nullspace(&sys)
        .basis_rows()
        .iter()
        .map(|flat| Mat::from_fn(field, rows, cols, |r, c| flat[idx(r, c)].clone()))
        .collect()
}

/// Stable hom data for a pair of truncated modules.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub field: FieldSpec,
    /// dim Hom as module homomorphisms.
    pub module_dim: usize,
    /// dim of the subspace of maps factoring through the free module.
    pub free_factoring_dim: usize,
    /// Stable dimension: module_dim - free_factoring_dim.
    pub dim: usize,
    pub module_basis: Vec<Mat>,
    /// Canonical coset representatives spanning the stable hom-space.
    pub reps: Vec<Mat>,
    free_factoring: Subspace,
    ambient: usize,
}

impl StableHom {
    /// Coordinates of a module homomorphism's stable class in the `reps`
    /// basis; `None` if the matrix is not a module homomorphism.
    pub fn stable_class(&self, m: &Mat) -> Option<Vec<Scalar>> {
        let flat: Vec<Scalar> = m.data.clone();
        let reduced = self.free_factoring.coset_representative(&flat);
        if self.reps.is_empty() {
            return if reduced.iter().all(|s| self.field.is_zero(s)) { Some(Vec::new()) } else { None };
        }
        let cols: Vec<Vec<Scalar>> = self.reps.iter().map(|r| r.data.clone()).collect();
        let mut sys = Mat::zeros(self.field, self.ambient, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                sys.set(r, c, v.clone());
            }
        }
        crate::exactla::solve(&sys, &reduced).map(|s| s.particular)
    }
}

/// The oracle: stable Hom(M_i, M_j) inside mod k[x]/(x^n) over F_p.
pub fn oracle_stable_hom(n: usize, p: u64, i: usize, j: usize) -> Result<StableHom, Error> {
    let field = check_params(n, p)?;
    if i == 0 || i >= n || j == 0 || j >= n {
        return Err(Error::Parameter(format!("module index outside 1..{}", n - 1)));
    }
    let mi = ModuleRep::truncated(field, i);
    let mj = ModuleRep::truncated(field, j);
    let mn = ModuleRep::truncated(field, n);
    let ambient = i * j;

    let module_basis = module_hom_basis(&mi, &mj);
    let module_space = Subspace::from_rows(
        field,
        ambient,
        &module_basis.iter().map(|m| m.data.clone()).collect::<Vec<_>>(),
    );

    let through_in = module_hom_basis(&mi, &mn);
    let through_out = module_hom_basis(&mn, &mj);
    let mut products = Vec::new();
    for a in &through_in {
        for b in &through_out {
            products.push(b.mul(a).data);
        }
    }
    let free_factoring = Subspace::from_rows(field, ambient, &products);

    // Project the module-hom basis onto canonical coset representatives and
    // re-reduce: the result is a canonical basis of the stable quotient.
    let projected: Vec<Vec<Scalar>> = module_space
        .basis_rows()
        .iter()
        .map(|v| free_factoring.coset_representative(v))
        .collect();
    let stable_span = Subspace::from_rows(field, ambient, &projected);
    let reps: Vec<Mat> = stable_span
        .basis_rows()
        .iter()
        .map(|flat| Mat::from_fn(field, j, i, |r, c| flat[r * i + c].clone()))
        .collect();

    Ok(StableHom {
        field,
        module_dim: module_space.dim(),
        free_factoring_dim: free_factoring.dim(),
        dim: stable_span.dim(),
        module_basis,
        reps,
        free_factoring,
        ambient,
    })
}

/// Syzygy: kernel of the projective cover M_n ->> M_i, computed as an honest
/// kernel with its inherited x-action.
pub fn syzygy(n: usize, p: u64, i: usize) -> Result<ModuleRep, Error> {
    let field = check_params(n, p)?;
    if i == 0 || i >= n {
        return Err(Error::Parameter(format!("module index outside 1..{}", n - 1)));
    }
    let mn = ModuleRep::truncated(field, n);
    // Cover: e_t -> e_t for t < i, e_t -> 0 otherwise.
    let cover = Mat::from_fn(field, i, n, |r, c| {
        if r == c {
            field.one()
        } else {
            field.zero()
        }
    });
    submodule_from_kernel(&mn, &cover)
}

/// Cosyzygy: cokernel of the injective envelope M_i >-> M_n.
pub fn cosyzygy(n: usize, p: u64, i: usize) -> Result<ModuleRep, Error> {
    let field = check_params(n, p)?;
    if i == 0 || i >= n {
        return Err(Error::Parameter(format!("module index outside 1..{}", n - 1)));
    }
    let mn = ModuleRep::truncated(field, n);
    // Envelope: e_t -> e_{n-i+t} (multiplication by x^{n-i}).
    let env = Mat::from_fn(field, n, i, |r, c| {
        if r == n - i + c {
            field.one()
        } else {
            field.zero()
        }
    });
    quotient_module(&mn, &env)
}

fn submodule_from_kernel(ambient: &ModuleRep, map: &Mat) -> Result<ModuleRep, Error> {
    let field = ambient.x_action.field;
    let ker = nullspace(map);
    let basis = ker.basis_rows();
    let d = basis.len();
    // x-action in the kernel basis: solve basis-matrix · y = x · v.
    let mut basis_mat = Mat::zeros(field, ambient.dimension, d);
    for (c, v) in basis.iter().enumerate() {
        for (r, s) in v.iter().enumerate() {
            basis_mat.set(r, c, s.clone());
        }
    }
    let mut action = Mat::zeros(field, d, d);
    for (c, v) in basis.iter().enumerate() {
        let xv = ambient.x_action.mul_vec(v);
        let sol = crate::exactla::solve(&basis_mat, &xv)
            .ok_or_else(|| Error::Shape("kernel is not x-stable".into()))?;
        for (r, s) in sol.particular.iter().enumerate() {
            action.set(r, c, s.clone());
        }
    }
    Ok(ModuleRep { dimension: d, x_action: action })
}

fn quotient_module(ambient: &ModuleRep, inclusion: &Mat) -> Result<ModuleRep, Error> {
    let field = ambient.x_action.field;
    let image = Subspace::from_rows(
        field,
        ambient.dimension,
        &(0..inclusion.cols).map(|c| inclusion.col(c)).collect::<Vec<_>>(),
    );
    // Complement coordinates: ambient basis vectors with nonzero canonical
    // representative span the quotient.
    let mut rep_basis: Vec<Vec<Scalar>> = Vec::new();
    for t in 0..ambient.dimension {
        let mut e = vec![field.zero(); ambient.dimension];
        e[t] = field.one();
        rep_basis.push(image.coset_representative(&e));
    }
    let span = Subspace::from_rows(field, ambient.dimension, &rep_basis);
    let reps = span.basis_rows();
    let d = reps.len();
    let mut rep_mat = Mat::zeros(field, ambient.dimension, d);
    for (c, v) in reps.iter().enumerate() {
        for (r, s) in v.iter().enumerate() {
            rep_mat.set(r, c, s.clone());
        }
    }
    let mut action = Mat::zeros(field, d, d);
    for (c, v) in reps.iter().enumerate() {
        let xv = image.coset_representative(&ambient.x_action.mul_vec(v));
        let sol = crate::exactla::solve(&rep_mat, &xv)
            .ok_or_else(|| Error::Shape("quotient action failed to express".into()))?;
        for (r, s) in sol.particular.iter().enumerate() {
            action.set(r, c, s.clone());
        }
    }
    Ok(ModuleRep { dimension: d, x_action: action })
}

/// True when Ω² fixes every indecomposable, computed by two honest syzygy
/// steps. The intermediate module is identified by its Jordan type.
pub fn tau_fixes_all(n: usize, p: u64) -> Result<bool, Error> {
    for i in 1..n {
        let first = syzygy(n, p, i)?;
        if !first.is_indecomposable_truncated() {
            return Ok(false);
        }
        let second = syzygy(n, p, first.dimension)?;
        if !second.is_indecomposable_truncated() || second.dimension != i {
            return Ok(false);
        }
    }
    Ok(true)
}
