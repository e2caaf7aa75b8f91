//! Construction and exhaustive verification of difference families,
//! difference sets, difference matrices and divisible difference sets over
//! finite abelian groups and products of finite fields.

pub mod admissibility;
pub mod algebra;
pub mod arith;
pub mod constructions;
pub mod designs;
mod error;

pub use algebra::{
    build_field, build_ring, FieldDescriptor, FieldElement, GroupDescriptor, GroupElement, GroupFactor,
    RingDescriptor, RingElement,
};

pub use constructions::{DifferenceSet, DivisibleDesign};
pub use designs::{DdsParams, DiffMatrix, DsParams, Family};
pub use error::{Error, Result};
