//! Noncommutative Gröbner bases over the rationals, and universal associative
//! envelopes of multilinear operations.
//!
//! The pipeline is: build a [`groebner::Presentation`] (directly, or from
//! structure constants via [`envelope`]), complete it with
//! [`groebner::complete`], then inspect the quotient with [`quotient`].

pub mod arith;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod groebner;
pub mod par;
pub mod poly;
pub mod quotient;
pub mod reduce;
pub mod words;

pub use arith::{Field, Rational};
pub use error::{Error, Result};
pub use groebner::{complete, CompletionConfig, CompletionResult, Presentation, Status};
pub use poly::Polynomial;
pub use reduce::{normal_form, self_reduce};
pub use words::{Alphabet, Word};
