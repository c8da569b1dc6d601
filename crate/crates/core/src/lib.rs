//! Concrete finite simple groups, their automorphisms, and symmetric
//! generating pairs.
//!
//! Groups are enumerated explicitly into a [`permgrp::GroupHandle`], which
//! numbers every element. Automorphism groups, inverter sets and the
//! generating-pair statistics all work on those indices.

pub mod autgrp;
pub mod chirality;
pub mod error;
pub mod families;
pub mod gf;
pub mod matgrp;
pub mod permgrp;
pub mod verify;

pub use error::{Error, Result};
