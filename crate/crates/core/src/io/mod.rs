//! Serialization: domain and factor descriptors, deterministic report
//! formatting, and the solver-run store.

pub mod descriptors;
pub mod jsonfmt;
pub mod runstore;

pub use descriptors::{
    BumpDescriptor, ComponentDescriptor, DomainDescriptor, FactorDescriptor, PoleDescriptor,
};
pub use jsonfmt::{csv_float, hash_json, to_json_string};
pub use runstore::{load_run, save_run, SolverRunRecord};
