//! Exact relative homological algebra over finite-dimensional commutative
//! local F_p-algebras.
//!
//! Layers, bottom to top: [`exactlin`] (linear algebra mod p), [`algmod`]
//! (algebras, modules, Hom and tensor), [`chaincx`] (complexes, cones,
//! homology), [`catclass`] (membership oracles), [`resolve`] (resolutions
//! and approximations), [`relext`] (relative Ext, comparison maps, long
//! exact sequences, balance) and [`perfection`].

pub mod algmod;
pub mod catclass;
pub mod chaincx;
pub mod error;
pub mod exactlin;
pub mod perfection;
pub mod relext;
pub mod resolve;
pub mod sample;
pub mod shipped;

pub use error::{Error, Result};
