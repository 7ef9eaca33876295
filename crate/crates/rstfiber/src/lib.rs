//! Exact 2-adic machinery for odd hyperelliptic curves y^2 = f(x).
//!
//! Given the roots of an odd-degree squarefree f over a finite extension of
//! Q_2, the crate computes the cluster picture of f, the square-defect
//! functions attached to each even cluster, the valid discs those clusters
//! carry, and from these the toric rank, 2-rank, component genera and node
//! thicknesses of the special fibre of a relatively stable model.
//!
//! Entry points, roughly bottom up:
//! * [`field`]: towers `(unramified ext of Q_2)(2^(1/e))` with exact valuations;
//! * [`residue`]: the residue fields `F_{2^m}` and their polynomial algebra;
//! * [`plfun`]: concave piecewise linear functions with rational breakpoints;
//! * [`poly`]: polynomials over a tower, Gauss valuations, disc reductions;
//! * [`psd`]: partial square decompositions and the depth functions they bound;
//! * [`clusters`]: the cluster tree of a root multiset;
//! * [`discs`]: per-cluster thresholds, side functions and valid discs;
//! * [`fiber`]: assembling the special fibre report;
//! * [`report`]: JSON input/output documents, DOT and sweep rendering.
//!
//! Each major capability has a runnable example under `examples/`.

pub mod clusters;
pub mod discs;
pub mod error;
pub mod fiber;
pub mod field;
pub mod plfun;
pub mod poly;
pub mod psd;
pub mod rat;
pub mod report;
pub mod residue;

pub use error::Error;
pub use rat::Q;

/// Crate result alias; every fallible public operation uses [`Error`].
pub type Result<T> = std::result::Result<T, Error>;
