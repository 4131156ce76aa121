//! Quasi-cyclic LDPC codes from group rings.
//!
//! Finite groups, Galois fields, the binary tensor ring and its group rings,
//! S2-set and difference-set combinatorics, exponent-matrix constructions with
//! their lifting to parity-check matrices, group-ring encoders, and a
//! sum-product decoder with a reproducible AWGN simulation harness.
//!
//! The crate is `no_std` with `alloc`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod combinatorics;
pub mod construction;
pub mod encoder;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gf2;
pub mod group_ring;
pub mod groups;
pub mod poly;
pub mod ring;
pub mod sim;

pub use bits::BitVec;
pub use error::{Error, Result};
pub use field::{FieldExponent, GaloisField};
pub use gf2::BinaryMatrix;
pub use group_ring::{GroupRing, GroupRingElement};
pub use groups::{FiniteGroup, GroupKind};
pub use poly::Gf2Poly;
pub use ring::TensorRing;
