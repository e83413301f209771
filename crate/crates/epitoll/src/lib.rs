//! Expected epidemic fatality projections.
//!
//! The crate turns age/sex-stratified demographics and infection fatality
//! rates into expected-death tables: demographic age boundaries are shifted
//! down to model vaccine protection, regrouped onto the fatality-rate
//! partition, multiplied through, and blended by coverage and attack rate.
//! A small CLI (`epitoll`) exposes the pipeline over CSV datasets and flat
//! scenario config files.

pub mod agebin;
pub mod cli;
pub mod dataio;
pub mod finalsize;
pub mod projection;
pub mod reporting;
pub mod sum;
