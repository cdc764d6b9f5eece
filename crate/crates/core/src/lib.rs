//! Frobenius algebras and H*-algebras in finite matrix categories.
//!
//! Morphisms are dense matrices over one of four involutive semirings
//! (booleans, complex numbers, nonnegative reals, the extended nonnegative
//! real quantale). On top of that the crate checks the Frobenius axioms
//! (A), (U), (C), (M), (F), (F') and the H*-axiom (H) for a comultiplication
//! `δ : A → A ⊗ A`, solves for counits and star operations, and recovers
//! the structure of an algebra:
//!
//! * over ℂ, its copyable elements (an orthonormal basis when the algebra is
//!   a Frobenius algebra);
//! * in Rel, its decomposition into a disjoint union of abelian groups;
//! * over weighted domains, the same decomposition plus the weight forced
//!   on each summand.
//!
//! ```
//! use hstar::axioms::{check_axiom, Axiom};
//! use hstar::builders::from_basis;
//! use hstar::structure::hilb_decompose;
//!
//! let cand = from_basis(3);
//! assert!(check_axiom(&cand, Axiom::F).unwrap().pass);
//! let dec = hilb_decompose(&cand).unwrap();
//! assert_eq!(dec.summands.len(), 3);
//! assert_eq!(dec.radical_dim, 0);
//! ```

pub mod algfile;
pub mod axioms;
pub mod builders;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod matcat;
pub mod semiring;
pub mod structure;

pub use axioms::{AlgebraCandidate, Axiom, StarMap, Verdict};
pub use error::{Error, Result};
pub use matcat::{Mor, Obj};
pub use semiring::{Kind, Scalar, ScalarDomain};

/// Seed for every pseudorandom choice made by the library.
pub const DEFAULT_SEED: u64 = 0xF70B;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/axioms.md")]
    mod axioms {}
    #[doc = include_str!("../../../book/src/star.md")]
    mod star {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/files.md")]
    mod files {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
