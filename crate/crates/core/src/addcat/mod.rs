//! Data model and calculus for a finite additive Krull-Schmidt category:
//! objects as formal direct sums, morphisms as block matrices over hom
//! bases, composition via structure constants, additive endofunctors, and
//! the presentation validator.

mod functor;
mod mor;
mod obj;
mod presentation;
mod solve;
mod validate;

pub use mor::{DirectSum, Mor};
pub use obj::Obj;
pub use presentation::{CategoryPresentation, FunctorData};
pub use solve::{MorSolutions, MorSystem, SearchConfig};

#[cfg(test)]
pub(crate) mod testcat {
    use std::collections::BTreeMap;

    use crate::exactla::{FieldSpec, Mat};

    use super::{CategoryPresentation, FunctorData, Obj};

    /// The field itself as a one-object category: Hom(X,X) = k with
    /// composition given by multiplication, shift = identity.
    pub fn field_category(field: FieldSpec) -> CategoryPresentation {
        let mut comp = BTreeMap::new();
        comp.insert((0, 0, 0), vec![vec![vec![field.one()]]]);
        let mut on_homs = BTreeMap::new();
        on_homs.insert((0, 0), Mat::identity(field, 1));
        CategoryPresentation {
            field,
            indecomposables: vec!["X".to_string()],
            hom_dims: vec![vec![1]],
            basis_names: BTreeMap::new(),
            comp,
            id_coords: vec![vec![field.one()]],
            shift: FunctorData { on_objects: vec![Obj::single(0)], on_homs },
        }
    }
}
