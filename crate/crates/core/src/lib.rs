//! Exact verification of rational points on Chatelet surfaces
//! `y^2 - alpha z^2 = P(x)`: local solvability with replayable
//! certificates, height-ordered point searches, and the irreducibility
//! machinery behind one conic bundle over `P^1`.
//!
//! The guide in `book/` walks through the modules in order; its code
//! snippets run as doctests of this crate.

pub mod arith;
pub mod chatelet;
pub mod error;
pub mod family;
pub mod genus1;
pub mod height;
pub mod json;
pub mod local;
pub mod quartic;

pub use arith::{Prime, Rational};
pub use error::{Error, Result};

/// Runs `f` on a pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

// Chapters of the guide, compiled as doctests so the book tracks the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/local-fields.md")]
    mod local_fields {}
    #[doc = include_str!("../../../book/src/quartics.md")]
    mod quartics {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/bundle.md")]
    mod bundle {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
}
