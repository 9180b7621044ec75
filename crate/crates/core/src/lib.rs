//! Exact computations on the dual graph of the special fibre at `p` of the
//! Shimura curve attached to the quaternion algebra of discriminant `pq`.
//!
//! The crate is layered bottom-up:
//!
//! * [`quat`]: the definite algebra `B_{q,inf}`, lattices, orders, ideals.
//! * [`graph`]: ideal classes (vertices), `p`-isogeny classes (edges),
//!   Atkin–Lehner involutions and Brandt matrices.
//! * [`gross`]: class numbers, optimal embeddings, Gross and Eisenstein vectors.
//! * [`compgroup`]: the `w_q` quotient, blow-up, component groups, Kirchhoff solves.
//! * [`criterion`]: the end-to-end criterion and its certificate.
//! * [`cache`]: on-disk storage of built graphs.

#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod arith;
pub mod cache;
pub mod codec;
pub mod compgroup;
pub mod criterion;
pub mod linalg;
pub mod graph;
pub mod gross;
pub mod quat;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("p and q must be distinct, both are {0}")]
    SamePrime(u64),
    #[error("lattice generators span rank {0}, expected 4")]
    RankDeficient(usize),
    #[error("auxiliary prime {0} is not usable here")]
    BadAuxiliaryPrime(u64),
    #[error("{0} is not a negative discriminant")]
    BadDiscriminant(i64),
    #[error("vector has {found} coefficients, basis has {expected}")]
    BasisMismatch { expected: usize, found: usize },
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{0}")]
    Internal(String),
}
