//! Permutations of finite fields written as compositions of affine maps and
//! the power map `x -> x^(q-2)`.
//!
//! For q > 2 these two kinds of map generate the whole symmetric group on
//! F_q. This crate builds explicit words for transpositions and arbitrary
//! permutations, simplifies them, compiles them to reduced permutation
//! polynomials, and decides over which extensions F_{q^k} the inversion
//! map stays a bijection.
//!
//! ```
//! use std::sync::Arc;
//! use carlitz::{Field, GenWord, Gadget, Permutation};
//!
//! let field = Arc::new(Field::from_order(7).unwrap());
//! let sigma = Permutation::parse("(1 4 2)(3 6)", 7).unwrap();
//! let word = GenWord::decompose(field, &sigma, Gadget::Zieve).unwrap();
//! assert_eq!(word.to_permutation(), sigma);
//! let poly = word.compile().unwrap();
//! assert!(poly.degree().unwrap() <= 5);
//! ```

pub mod error;
pub mod exceptional;
pub mod field;
pub mod perm;
pub mod poly;
pub mod words;

pub use error::{Error, Result};
pub use exceptional::ExceptionalReport;
pub use field::{find_irreducible, Field, FieldElement, FieldSpec};
pub use perm::Permutation;
pub use poly::{Poly, PolyJson};
pub use words::{Gadget, GenToken, GenWord, WordJson, WordStats};
