//! Exact rational scalars, sparse multivariate polynomials over ℚ and the
//! sparse linear algebra used for every rank and kernel computation.

mod linop;
mod monomial;
mod poly;
mod rational;

pub use linop::{bareiss_rank, LinearOp, RankKernelImage};
pub use monomial::{monomial_basis, BasisMode, Monomial};
pub use poly::Poly;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
