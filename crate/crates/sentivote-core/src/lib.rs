//! Core algorithms for polarity classification of software-engineering text:
//! corpus handling, bag-of-words features, three base classifier families,
//! majority-voting ensembles with seeded tie-breaking, evaluation statistics
//! (stratified folds, accuracy/macro-F1, Fleiss' kappa), and a config-driven
//! experiment grid.
//!
//! This crate is `no_std` (with `alloc`); file formats, configuration, and
//! the command-line interface live in the companion `sentivote` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classifiers;
pub mod corpus;
pub mod ensemble;
pub mod evaluation;
pub mod experiments;
pub mod features;
pub mod rng;

mod error;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
