//! Exact arithmetic: finite fields, products of fields, finite abelian
//! groups and the automorphism actions on them.

mod action;
mod field;
mod group;
mod iso;
mod poly;
mod ring;

pub use action::{
    fixed_point_witness, is_semiregular, orbits, unit_subgroup_of_order, Automorphism, AutomorphismGroup,
    GroupAction, GroupHom, UnitAction,
};
pub use field::{build_field, FieldDescriptor, FieldElement, MAX_CHARACTERISTIC};
pub use group::{Coord, GroupDescriptor, GroupElement, GroupFactor, ORDER_CAP};
pub use iso::{abelian_iso, invariant_factors, relation_matrix, smith_normal_form};
pub use ring::{build_ring, RingDescriptor, RingElement};
