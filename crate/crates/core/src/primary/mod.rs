//! Primary components in shifted-basis form and the prefix-tree families
//! they are organised in.

mod component;
mod family;
mod generate;
mod json;
mod local;

pub use component::{ComponentViolation, PrimaryComponent};
pub use family::{FamilyViolation, NodeId, PrimaryFamily};
pub use generate::{gen_family, GenSpec};
pub use json::{family_from_json, family_to_json, parse_family, validate_loaded};
pub use local::LocalQuotient;
