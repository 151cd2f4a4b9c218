//! Graded finite-dimensional algebras: presentations, homological invariants,
//! quasi-hereditary structure and Koszul-type property checks, together with
//! Kazhdan-Lusztig combinatorics and a symmetric-group toolkit.

#![allow(clippy::needless_range_loop)]

pub mod casestudy;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod gradalg;
pub mod homolog;
pub mod kl;
pub mod koszul;
pub mod par;
pub mod qha;
pub mod report;
pub mod samples;
pub mod specfile;
pub mod symgrp;

pub use error::{GrexError, Result};
