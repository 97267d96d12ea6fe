//! The category file format: JSON, UTF-8, one object per file.
//!
//! ```json
//! { "format": 1,
//!   "field": {"kind": "prime", "p": 2},
//!   "indecomposables": ["M1", "M2"],
//!   "hom": { "M1|M2": {"dim": 1, "basis_names": ["incl"]} },
//!   "compose": { "M1|M2|M1": [[[0]]] },
//!   "identity": { "M1": [1], "M2": [1, 0] },
//!   "shift": { "objects": {"M1": ["M1"]}, "homs": {"M1|M1": [[1]]} },
//!   "triangles": [ {"A": ["M1"], "B": [], "C": ["M1"], "f": [], "g": [], "h": [[[1]]]} ],
//!   "subcats": { "Z": ["M1", "M2"], "D": ["M2"] } }
//! ```
//!
//! Hom keys are `source|target` name pairs; composition keys are
//! `source|middle|target`; missing hom entries mean dimension zero and
//! missing composition entries mean all composites vanish. Morphisms are
//! block matrices of coordinate vectors indexed (target summand, source
//! summand). Scalars are integers, or `"a/b"` strings over the rationals.
//! Unknown keys are rejected; `format` defaults to 1 and only 1 is
//! accepted. Quotient outputs carry an extra `quotient_data` section with
//! the projection matrices and the fixed σ-triangles of the construction.

use std::collections::BTreeMap;
use std::path::Path;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::addcat::{CategoryPresentation, FunctorData, Mor, Obj};
use crate::exactla::{FieldSpec, Mat, Scalar};
use crate::quotient::QuotientPresentation;
use crate::rtstruct::{Triangle, Triangulation};
use crate::Error;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Frac(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldJson {
    Prime { p: u64 },
    Rationals,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftJson {
    pub objects: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub homs: BTreeMap<String, Vec<Vec<ScalarJson>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleJson {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<String>,
    pub f: Vec<Vec<Vec<ScalarJson>>>,
    pub g: Vec<Vec<Vec<ScalarJson>>>,
    pub h: Vec<Vec<Vec<ScalarJson>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSidecar {
    pub base_indecomposables: Vec<String>,
    pub z: Vec<String>,
    pub d: Vec<String>,
    /// Projection matrices per surviving base pair `x|y`.
    pub projections: BTreeMap<String, Vec<Vec<ScalarJson>>>,
    /// The fixed triangle per base member of Z, in base coordinates.
    pub sigma_triangles: BTreeMap<String, TriangleJson>,
}

fn default_format() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    #[serde(default = "default_format")]
    pub format: u32,
    pub field: FieldJson,
    pub indecomposables: Vec<String>,
    #[serde(default)]
    pub hom: BTreeMap<String, HomEntry>,
    #[serde(default)]
    pub compose: BTreeMap<String, Vec<Vec<Vec<ScalarJson>>>>,
    pub identity: BTreeMap<String, Vec<ScalarJson>>,
    pub shift: ShiftJson,
    #[serde(default)]
    pub triangles: Vec<TriangleJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subcats: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_data: Option<QuotientSidecar>,
}

/// A parsed category file, in memory.
#[derive(Debug)]
pub struct Loaded {
    pub cat: CategoryPresentation,
    pub triangles: Vec<Triangle>,
    pub subcats: BTreeMap<String, Vec<String>>,
    pub quotient_data: Option<QuotientSidecar>,
}

fn scalar_from_json(field: FieldSpec, s: &ScalarJson) -> Result<Scalar, Error> {
    match s {
        ScalarJson::Int(v) => Ok(field.from_i64(*v)),
        ScalarJson::Frac(text) => {
            let (num, den) = text
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("bad scalar '{text}', expected a/b")))?;
            let num: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in '{text}'")))?;
            let den: i64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in '{text}'")))?;
            if den == 0 {
                return Err(Error::Parse(format!("zero denominator in '{text}'")));
            }
            let d = field.from_i64(den);
            let inv = field
                .inv(&d)
                .ok_or_else(|| Error::Parse(format!("denominator of '{text}' is zero in the field")))?;
            Ok(field.mul(&field.from_i64(num), &inv))
        }
    }
}

fn scalar_to_json(field: FieldSpec, s: &Scalar) -> ScalarJson {
    match s {
        Scalar::Fp(v) => ScalarJson::Int(*v as i64),
        Scalar::Rat(r) => {
            if num::Integer::is_multiple_of(r.numer(), r.denom()) {
                let q: BigInt = r.numer() / r.denom();
                if let Ok(v) = i64::try_from(q.clone()) {
                    return ScalarJson::Int(v);
                }
            }
            ScalarJson::Frac(field.render(s))
        }
    }
}

fn split_key<'k>(key: &'k str, parts: usize) -> Result<Vec<&'k str>, Error> {
    let out: Vec<&str> = key.split('|').collect();
    if out.len() != parts {
        return Err(Error::Parse(format!(
            "key '{key}' should have {parts} '|'-separated names"
        )));
    }
    Ok(out)
}

struct NameTable<'a> {
    names: &'a [String],
}

impl<'a> NameTable<'a> {
    fn index(&self, name: &str) -> Result<usize, Error> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown indecomposable '{name}'")))
    }

    fn obj(&self, names: &[String]) -> Result<Obj, Error> {
        Ok(Obj::from_summands(
            names.iter().map(|n| self.index(n)).collect::<Result<_, _>>()?,
        ))
    }
}

fn mor_from_json(
    cat: &CategoryPresentation,
    source: &Obj,
    target: &Obj,
    blocks: &[Vec<Vec<ScalarJson>>],
) -> Result<Mor, Error> {
    let mut m = cat.zero_mor(source, target);
    if blocks.len() != target.rank() {
        return Err(Error::Parse(format!(
            "morphism has {} block rows, target has {} summands",
            blocks.len(),
            target.rank()
        )));
    }
    for (j, row) in blocks.iter().enumerate() {
        if row.len() != source.rank() {
            return Err(Error::Parse(format!(
                "morphism block row {j} has {} entries, source has {} summands",
                row.len(),
                source.rank()
            )));
        }
        for (i, cell) in row.iter().enumerate() {
            let want = cat.hom_dim(source.summands[i], target.summands[j]);
            if cell.len() != want {
                return Err(Error::Parse(format!(
                    "block ({j},{i}) has {} coordinates, expected {want}",
                    cell.len()
                )));
            }
            m.blocks[j][i] = cell
                .iter()
                .map(|s| scalar_from_json(cat.field, s))
                .collect::<Result<_, _>>()?;
        }
    }
    Ok(m)
}

fn mor_to_json(cat: &CategoryPresentation, m: &Mor) -> Vec<Vec<Vec<ScalarJson>>> {
    m.blocks
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| cell.iter().map(|s| scalar_to_json(cat.field, s)).collect())
                .collect()
        })
        .collect()
}

/// Interpret a parsed file as a presentation plus its triangle store.
pub fn from_file(file: &CategoryFile) -> Result<Loaded, Error> {
    if file.format != 1 {
        return Err(Error::Parse(format!("unsupported format version {}", file.format)));
    }
    let field = match &file.field {
        FieldJson::Prime { p } => FieldSpec::prime(*p)?,
        FieldJson::Rationals => FieldSpec::Rationals,
    };
    let names = NameTable { names: &file.indecomposables };
    let n = file.indecomposables.len();

    let mut hom_dims = vec![vec![0usize; n]; n];
    let mut basis_names = BTreeMap::new();
    for (key, entry) in &file.hom {
        let parts = split_key(key, 2)?;
        let x = names.index(parts[0])?;
        let y = names.index(parts[1])?;
        hom_dims[x][y] = entry.dim;
        if let Some(bn) = &entry.basis_names {
            if bn.len() != entry.dim {
                return Err(Error::Parse(format!(
                    "hom entry '{key}' has {} basis names for dimension {}",
                    bn.len(),
                    entry.dim
                )));
            }
            basis_names.insert((x, y), bn.clone());
        }
    }

    let mut comp = BTreeMap::new();
    for (key, table) in &file.compose {
        let parts = split_key(key, 3)?;
        let x = names.index(parts[0])?;
        let y = names.index(parts[1])?;
        let z = names.index(parts[2])?;
        let (dg, df, dout) = (hom_dims[y][z], hom_dims[x][y], hom_dims[x][z]);
        if table.len() != dg || table.iter().any(|r| r.len() != df) {
            return Err(Error::Parse(format!("composition table '{key}' has the wrong shape")));
        }
        let mut out = Vec::with_capacity(dg);
        for row in table {
            let mut orow = Vec::with_capacity(df);
            for cell in row {
                if cell.len() != dout {
                    return Err(Error::Parse(format!(
                        "composition table '{key}' has a cell of length {}, expected {dout}",
                        cell.len()
                    )));
                }
                orow.push(
                    cell.iter()
                        .map(|s| scalar_from_json(field, s))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            out.push(orow);
        }
        comp.insert((x, y, z), out);
    }

    let mut id_coords = Vec::with_capacity(n);
    for (x, name) in file.indecomposables.iter().enumerate() {
        let entry = file
            .identity
            .get(name)
            .ok_or_else(|| Error::Parse(format!("missing identity for '{name}'")))?;
        if entry.len() != hom_dims[x][x] {
            return Err(Error::Parse(format!(
                "identity of '{name}' has {} coordinates, dim End = {}",
                entry.len(),
                hom_dims[x][x]
            )));
        }
        id_coords.push(
            entry
                .iter()
                .map(|s| scalar_from_json(field, s))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }

    let mut on_objects = Vec::with_capacity(n);
    for name in &file.indecomposables {
        let img = file
            .shift
            .objects
            .get(name)
            .ok_or_else(|| Error::Parse(format!("missing shift image for '{name}'")))?;
        on_objects.push(names.obj(img)?);
    }
    let mut cat = CategoryPresentation {
        field,
        indecomposables: file.indecomposables.clone(),
        hom_dims,
        basis_names,
        comp,
        id_coords,
        shift: FunctorData { on_objects, on_homs: BTreeMap::new() },
    };
    let mut on_homs = BTreeMap::new();
    for (key, rows) in &file.shift.homs {
        let parts = split_key(key, 2)?;
        let x = names.index(parts[0])?;
        let y = names.index(parts[1])?;
        let cols = cat.hom_dim(x, y);
        let want_rows = cat.hom_space_dim(&cat.shift.on_objects[x], &cat.shift.on_objects[y]);
        if rows.len() != want_rows || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse(format!(
                "shift hom matrix '{key}' should be {want_rows}x{cols}"
            )));
        }
        let mut m = Mat::zeros(field, want_rows, cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, scalar_from_json(field, s)?);
            }
        }
        on_homs.insert((x, y), m);
    }
    cat.shift.on_homs = on_homs;

    let mut triangles = Vec::with_capacity(file.triangles.len());
    for (k, tj) in file.triangles.iter().enumerate() {
        let a = names.obj(&tj.a)?;
        let b = names.obj(&tj.b)?;
        let c = names.obj(&tj.c)?;
        let ta = cat.apply_functor_obj(&cat.shift, &a);
        let t = Triangle::new(
            mor_from_json(&cat, &a, &b, &tj.f)?,
            mor_from_json(&cat, &b, &c, &tj.g)?,
            mor_from_json(&cat, &c, &ta, &tj.h)?,
        );
        t.validate_shape(&cat)
            .map_err(|e| Error::Parse(format!("triangle {k}: {e}")))?;
        triangles.push(t);
    }

    for (name, members) in &file.subcats {
        for m in members {
            names
                .index(m)
                .map_err(|_| Error::Parse(format!("subcategory '{name}' lists unknown '{m}'")))?;
        }
    }

    Ok(Loaded {
        cat,
        triangles,
        subcats: file.subcats.clone(),
        quotient_data: file.quotient_data.clone(),
    })
}

/// Serialize a presentation with its triangle store (and optional named
/// subcategories). Zero-dimensional hom entries are omitted.
pub fn to_file(
    cat: &CategoryPresentation,
    triangles: &[Triangle],
    subcats: &BTreeMap<String, Vec<String>>,
) -> CategoryFile {
    let name = |i: usize| cat.indecomposables[i].clone();
    let mut hom = BTreeMap::new();
    for x in 0..cat.indec_count() {
        for y in 0..cat.indec_count() {
            let dim = cat.hom_dim(x, y);
            if dim == 0 {
                continue;
            }
            hom.insert(
                format!("{}|{}", name(x), name(y)),
                HomEntry { dim, basis_names: cat.basis_names.get(&(x, y)).cloned() },
            );
        }
    }
    let mut compose = BTreeMap::new();
    for (&(x, y, z), table) in &cat.comp {
        let all_zero = table
            .iter()
            .all(|r| r.iter().all(|c| c.iter().all(|s| cat.field.is_zero(s))));
        if all_zero {
            continue;
        }
        compose.insert(
            format!("{}|{}|{}", name(x), name(y), name(z)),
            table
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|c| c.iter().map(|s| scalar_to_json(cat.field, s)).collect())
                        .collect()
                })
                .collect(),
        );
    }
    let identity = (0..cat.indec_count())
        .map(|x| {
            (
                name(x),
                cat.id_coords[x].iter().map(|s| scalar_to_json(cat.field, s)).collect(),
            )
        })
        .collect();
    let objects = (0..cat.indec_count())
        .map(|x| {
            (
                name(x),
                cat.shift.on_objects[x].summands.iter().map(|&s| name(s)).collect(),
            )
        })
        .collect();
    let mut homs = BTreeMap::new();
    for (&(x, y), m) in &cat.shift.on_homs {
        if m.rows == 0 || m.is_zero() {
            continue;
        }
        homs.insert(
            format!("{}|{}", name(x), name(y)),
            (0..m.rows)
                .map(|r| m.row(r).iter().map(|s| scalar_to_json(cat.field, s)).collect())
                .collect(),
        );
    }
    let triangles = triangles
        .iter()
        .map(|t| TriangleJson {
            a: t.a().summands.iter().map(|&s| name(s)).collect(),
            b: t.b().summands.iter().map(|&s| name(s)).collect(),
            c: t.c().summands.iter().map(|&s| name(s)).collect(),
            f: mor_to_json(cat, &t.f),
            g: mor_to_json(cat, &t.g),
            h: mor_to_json(cat, &t.h),
        })
        .collect();
    CategoryFile {
        format: 1,
        field: match cat.field {
            FieldSpec::Prime(p) => FieldJson::Prime { p },
            FieldSpec::Rationals => FieldJson::Rationals,
        },
        indecomposables: cat.indecomposables.clone(),
        hom,
        compose,
        identity,
        shift: ShiftJson { objects, homs },
        triangles,
        subcats: subcats.clone(),
        quotient_data: None,
    }
}

/// Serialize a quotient presentation: the quotient category as a first-class
/// category file (with σ as its shift and the induced generators), plus the
/// sidecar recording where it came from.
pub fn quotient_to_file(
    q: &QuotientPresentation,
    induced: &Triangulation,
    subcats: &BTreeMap<String, Vec<String>>,
) -> CategoryFile {
    let mut file = to_file(&q.cat, &induced.generators, subcats);
    let bname = |i: usize| q.base.indecomposables[i].clone();
    let projections = q
        .projections
        .iter()
        .map(|(&(x, y), m)| {
            (
                format!("{}|{}", bname(x), bname(y)),
                (0..m.rows)
                    .map(|r| m.row(r).iter().map(|s| scalar_to_json(q.base.field, s)).collect())
                    .collect(),
            )
        })
        .collect();
    let sigma_triangles = q
        .sigma_table
        .iter()
        .map(|(&m, t)| {
            (
                bname(m),
                TriangleJson {
                    a: t.a().summands.iter().map(|&s| bname(s)).collect(),
                    b: t.b().summands.iter().map(|&s| bname(s)).collect(),
                    c: t.c().summands.iter().map(|&s| bname(s)).collect(),
                    f: mor_to_json(&q.base, &t.f),
                    g: mor_to_json(&q.base, &t.g),
                    h: mor_to_json(&q.base, &t.h),
                },
            )
        })
        .collect();
    file.quotient_data = Some(QuotientSidecar {
        base_indecomposables: q.base.indecomposables.clone(),
        z: q.z.members.iter().map(|&m| bname(m)).collect(),
        d: q.d.members.iter().map(|&m| bname(m)).collect(),
        projections,
        sigma_triangles,
    });
    file
}

pub fn parse_str(text: &str) -> Result<Loaded, Error> {
    let file: CategoryFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_file(&file)
}

pub fn load_path(path: &Path) -> Result<Loaded, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn render(file: &CategoryFile) -> String {
    serde_json::to_string_pretty(file).expect("serialization is infallible") + "\n"
}

/// Atomic write: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), Error> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content).map_err(|e| Error::Io(format!("{}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::nakayama_stable;

    #[test]
    fn round_trip_nakayama() {
        let (cat, tri) = nakayama_stable(4, 2).unwrap();
        let mut subcats = BTreeMap::new();
        subcats.insert("D".to_string(), vec!["M2".to_string()]);
        let file = to_file(&cat, &tri.generators, &subcats);
        let text = render(&file);
        let loaded = parse_str(&text).unwrap();
        assert_eq!(loaded.cat.indecomposables, cat.indecomposables);
        for x in 0..cat.indec_count() {
            for y in 0..cat.indec_count() {
                assert_eq!(loaded.cat.hom_dim(x, y), cat.hom_dim(x, y));
            }
        }
        assert_eq!(loaded.triangles, tri.generators);
        assert_eq!(loaded.subcats["D"], vec!["M2".to_string()]);
        assert_eq!(loaded.cat.validate().status(), crate::report::Status::Pass);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let (cat, tri) = nakayama_stable(2, 2).unwrap();
        let file = to_file(&cat, &tri.generators, &BTreeMap::new());
        let mut v: serde_json::Value = serde_json::from_str(&render(&file)).unwrap();
        v.as_object_mut()
            .unwrap()
            .insert("surprise".to_string(), serde_json::json!(1));
        let err = parse_str(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("surprise"), "{err}");
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_str("{ \"field\": ").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let (cat, tri) = nakayama_stable(2, 2).unwrap();
        let mut file = to_file(&cat, &tri.generators, &BTreeMap::new());
        file.identity.insert("M1".to_string(), vec![ScalarJson::Int(1), ScalarJson::Int(0)]);
        let err = from_file(&file).unwrap_err();
        assert!(err.to_string().contains("identity"), "{err}");
    }

    #[test]
    fn rational_scalars_parse() {
        let f = FieldSpec::Rationals;
        let half = scalar_from_json(f, &ScalarJson::Frac("1/2".into())).unwrap();
        assert_eq!(f.render(&half), "1/2");
        match scalar_to_json(f, &half) {
            ScalarJson::Frac(s) => assert_eq!(s, "1/2"),
            other => panic!("expected fraction, got {other:?}"),
        }
        let two = scalar_from_json(f, &ScalarJson::Int(2)).unwrap();
        assert!(matches!(scalar_to_json(f, &two), ScalarJson::Int(2)));
    }
}
