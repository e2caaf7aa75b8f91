//! Design types, the difference-multiset engine and the verifiers.

mod delta;
mod family;
mod matrix;
mod params;
mod verify;

pub use delta::{delta_multiset, DiffMultiset};
pub use family::{classify_family, extend_to_pdf, Family, FamilyKind};
pub use matrix::{dm_to_hdm, hdm_to_dm, normalize_dm, verify_dm, verify_hdm, DiffMatrix, DmReport};
pub use params::{DdsParams, DsParams};
pub use verify::{verify_dds, verify_df, verify_ds, DdsReport, DfReport, DsReport};
