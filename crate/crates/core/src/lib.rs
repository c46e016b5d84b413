//! Quantum generalized Reed-Solomon codes.
//!
//! Finite-field towers GF(q) ⊂ GF(q²), linear codes with exact minimum-weight
//! enumeration, closed-form Hermitian self-orthogonal GRS constructions, and
//! the puncture-code search that decides which lengths are achievable.

pub mod analytic;
pub mod error;
pub mod fqlinalg;
pub mod galois;
pub mod grs;
pub mod puncture;
pub mod quantum;
pub mod record;

pub use analytic::{construct, Construction, Family, FamilyParams};
pub use error::{Error, Result};
pub use fqlinalg::{FqMatrix, LinearCode, Weight, DEFAULT_BUDGET};
pub use galois::{Elem, FieldCtx, FieldDescriptor, TowerCtx};
pub use grs::{grs_code, grs_generator, Extension, GrsSpec};
pub use puncture::{check_bounds, existence_scan, exists_weight, puncture_code, reconstruct_grs, BoundCheck, BoundClause, ExistenceVerdict, SearchOptions, Verdict};
pub use quantum::{hermitian_construction, singleton_status, DistanceOptions, QuantumParams, SingletonStatus};
pub use record::{verify_record, CodeRecord, UnificationTable};
