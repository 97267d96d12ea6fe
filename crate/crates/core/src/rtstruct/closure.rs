//! The candidate index for distinguishedness decisions.
//!
//! A triangle is distinguished when it is isomorphic to a member of the
//! closure of the generators under rotation and finite direct sums. Rotation
//! closure is computed once per store with cycle detection; direct sums are
//! assembled on demand against the summand multisets of the query, so the
//! search space stays tiny at desk scale.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use crate::addcat::{CategoryPresentation, Mor, Obj};
use crate::rtstruct::triangle::{rotate, sum_triangles, Triangle, Triangulation};

/// Hard cap on the rotation orbit of a single generator; orbits in finite
/// presentations cycle long before this, so hitting the cap is reported as
/// an "undecided" source rather than silently dropped.
const ROTATION_CAP: usize = 64;

/// Cap on candidate direct-sum combinations per query.
const CANDIDATE_CAP: usize = 4096;

type TriKey = (Vec<usize>, Vec<usize>, Vec<usize>);

pub struct ClosureIndex {
    /// Rotation closure of the generators, deduplicated, in deterministic
    /// order.
    pub basics: Vec<Triangle>,
    /// True when some rotation orbit hit the cap; decisions that would
    /// otherwise be "no" degrade to "undecided".
    pub truncated: bool,
    candidate_cache: RefCell<HashMap<TriKey, (Vec<Triangle>, bool)>>,
    extension_cache: RefCell<HashMap<(Vec<usize>, Vec<usize>), (Vec<Triangle>, bool)>>,
    pub(crate) dist_cache: RefCell<HashMap<Triangle, u8>>,
    pub(crate) ext_mor_cache: RefCell<HashMap<Mor, Option<Triangle>>>,
}

impl ClosureIndex {
    pub fn build(cat: &CategoryPresentation, store: &Triangulation) -> Self {
        let mut basics = Vec::new();
        let mut seen = HashSet::new();
        let mut truncated = false;
        for g in &store.generators {
            let mut t = g.clone();
            let mut steps = 0;
            // Rotate until the orbit closes up (deterministic tails merge).
            while seen.insert(t.clone()) {
                basics.push(t.clone());
                steps += 1;
                if steps >= ROTATION_CAP {
                    truncated = true;
                    break;
                }
                t = rotate(cat, &t);
            }
        }
        ClosureIndex {
            basics,
            truncated,
            candidate_cache: RefCell::new(HashMap::new()),
            extension_cache: RefCell::new(HashMap::new()),
            dist_cache: RefCell::new(HashMap::new()),
            ext_mor_cache: RefCell::new(HashMap::new()),
        }
    }

    fn basic_keys(&self) -> Vec<TriKey> {
        self.basics
            .iter()
            .map(|t| (t.a().multiset_key(), t.b().multiset_key(), t.c().multiset_key()))
            .collect()
    }

    /// All direct sums of basics whose objectwise summand multisets match
    /// the query exactly. The flag reports whether the candidate cap bound.
    pub fn candidates_for(&self, cat: &CategoryPresentation, t: &Triangle) -> (Vec<Triangle>, bool) {
        let key: TriKey = (t.a().multiset_key(), t.b().multiset_key(), t.c().multiset_key());
        if let Some(hit) = self.candidate_cache.borrow().get(&key) {
            return hit.clone();
        }
        let keys = self.basic_keys();
        let mut combos: Vec<Vec<usize>> = Vec::new();
        let mut capped = false;
        let mut stack = Vec::new();
        search_sums(
            &keys,
            0,
            (key.0.clone(), key.1.clone(), Some(key.2.clone())),
            &mut stack,
            &mut combos,
            &mut capped,
        );
        let out: Vec<Triangle> = combos.iter().map(|c| self.assemble(cat, c)).collect();
        let result = (out, capped);
        self.candidate_cache.borrow_mut().insert(key, result.clone());
        result
    }

    /// Candidates for extending a morphism: the A and B multisets are
    /// constrained, the cone is free. Basics contributing nothing to A or B
    /// are excluded (they would pad the cone unboundedly).
    pub fn extension_candidates(
        &self,
        cat: &CategoryPresentation,
        src: &Obj,
        tgt: &Obj,
    ) -> (Vec<Triangle>, bool) {
        let key = (src.multiset_key(), tgt.multiset_key());
        if let Some(hit) = self.extension_cache.borrow().get(&key) {
            return hit.clone();
        }
        let keys = self.basic_keys();
        let mut combos: Vec<Vec<usize>> = Vec::new();
        let mut capped = false;
        let mut stack = Vec::new();
        search_sums(
            &keys,
            0,
            (key.0.clone(), key.1.clone(), None),
            &mut stack,
            &mut combos,
            &mut capped,
        );
        let out: Vec<Triangle> = combos.iter().map(|c| self.assemble(cat, c)).collect();
        let result = (out, capped);
        self.extension_cache.borrow_mut().insert(key, result.clone());
        result
    }

    fn assemble(&self, cat: &CategoryPresentation, combo: &[usize]) -> Triangle {
        let zero = Triangle::new(
            cat.zero_mor(&Obj::zero(), &Obj::zero()),
            cat.zero_mor(&Obj::zero(), &Obj::zero()),
            cat.zero_mor(&Obj::zero(), &Obj::zero()),
        );
        combo
            .iter()
            .fold(zero, |acc, &i| sum_triangles(cat, &acc, &self.basics[i]))
    }
}

fn multiset_subtract(from: &[usize], take: &[usize]) -> Option<Vec<usize>> {
    let mut rem = from.to_vec();
    for t in take {
        let pos = rem.iter().position(|x| x == t)?;
        rem.remove(pos);
    }
    Some(rem)
}

/// Backtracking search for multisets of basics covering the remaining
/// summands. `rem.2 = None` leaves the cone unconstrained (extension mode);
/// in that mode basics must contribute to A or B.
fn search_sums(
    keys: &[TriKey],
    from: usize,
    rem: (Vec<usize>, Vec<usize>, Option<Vec<usize>>),
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    capped: &mut bool,
) {
    if out.len() >= CANDIDATE_CAP {
        *capped = true;
        return;
    }
    let (rem_a, rem_b, rem_c) = &rem;
    if rem_a.is_empty() && rem_b.is_empty() && rem_c.as_ref().map_or(true, |c| c.is_empty()) {
        out.push(stack.clone());
        return;
    }
    for i in from..keys.len() {
        let (ka, kb, kc) = &keys[i];
        let contributes = match rem_c {
            Some(_) => !(ka.is_empty() && kb.is_empty() && kc.is_empty()),
            None => !(ka.is_empty() && kb.is_empty()),
        };
        if !contributes {
            continue;
        }
        let Some(na) = multiset_subtract(rem_a, ka) else { continue };
        let Some(nb) = multiset_subtract(rem_b, kb) else { continue };
        let nc = match rem_c {
            Some(c) => match multiset_subtract(c, kc) {
                Some(x) => Some(x),
                None => continue,
            },
            None => None,
        };
        stack.push(i);
        search_sums(keys, i, (na, nb, nc), stack, out, capped);
        stack.pop();
    }
}
