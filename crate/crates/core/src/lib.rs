//! Linearized polynomials over finite fields: the stabilizer algebra of a
//! polynomial's graph, the weight profile of its linear set, and the
//! associated rank-metric code with its idealizers.
//!
//! A field F_{p^k} is built once with a deterministic modulus; a [`Tower`]
//! views it as F_{q^n} over a subfield F_q, and everything else — graphs,
//! weights, stabilizers, codes — is exact linear algebra over that tower.
//!
//! ```
//! use linstab::{Field, LinPoly};
//! use linstab::geometry::{is_scattered, weight_spectrum_poly};
//! use linstab::stabilizer::compute_stabilizer;
//!
//! // F_2^5 with q = 2, and the monomial x^q
//! let tower = Field::new(2, 5).unwrap().prime_tower();
//! let f = LinPoly::parse(&tower, "x^q1").unwrap();
//!
//! assert!(is_scattered(&f));
//! assert_eq!(weight_spectrum_poly(&f).num_points(), 31);
//!
//! // its graph stabilizer is the field of order q^n
//! let stab = compute_stabilizer(&f);
//! assert_eq!(stab.order, Some(32));
//! assert!(stab.is_field);
//! ```

// index-style loops are the clearer idiom in the matrix kernels
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod error;
pub mod families;
pub mod field;
pub mod fppoly;
pub mod geometry;
pub mod linalg;
pub mod linpoly;
pub mod rankcode;
pub mod search;
pub mod stabilizer;
pub mod subspace;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, Tower};
pub use linpoly::LinPoly;
