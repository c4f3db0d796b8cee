//! Exact computer algebra for Weyl group multiple Dirichlet series over
//! symmetrizable Kac-Moody root systems.
//!
//! The engine averages a metaplectic Weyl group action over the group to build
//! the deformed character `h(x; lambda)`, extracts the coefficient series
//! `N(x; lambda)`, assembles local coefficients `H(c; m)` by twisted
//! multiplicativity over a function-field arithmetic backend, and evaluates
//! desk-scale partial sums of the global series `Z(s; m, Psi)` together with
//! the region geometry governing its continuation.
//!
//! All series arithmetic is exact: coefficients live in a Laurent-polynomial
//! ring over the rationals in a formal `q`, extended by Gauss-sum symbols
//! `g1, ..., g_{n-1}` subject to `g_i * g_{n-i} = 1/q`. Numeric values enter
//! only through the function-field backend (`arith`), which produces exact
//! cyclotomic numbers.
//!
//! Entry points, in dependency order:
//!
//! - [`cartan`]: generalized Cartan matrices, symmetrizations, the root and
//!   weight lattices, dot and circle actions.
//! - [`weyl`]: reduced words, lengths, inversion sets, group enumeration.
//! - [`roots`]: root generation with multiplicities (Peterson recursion),
//!   the torsion integers `m(alpha)`, the sublattice `Q'`.
//! - [`coeff`] / [`cyclotomic`]: the exact coefficient ring and its
//!   specializations.
//! - [`dist`]: sparse truncated formal distributions.
//! - [`action`]: the metaplectic Weyl action, the cocycle `j(w, x)`, the
//!   series `Delta`, `D`, `s(x, lambda)`, `h(x; lambda)`, `N(x; lambda)`,
//!   and the local functional equations.
//! - [`arith`]: `F_q[t]` residue symbols, Gauss sums, and factorization.
//! - [`hcoeff`]: prime-power coefficients and twisted multiplicativity.
//! - [`zseries`]: partial sums of `Z`, the `G_m` factor, region predicates.
//! - [`charfn`]: the independent Freudenthal character oracle.
//! - [`presets`] / [`report`] / [`cli`]: bundled systems, the verification
//!   suite, and the command-line front end.
//!
//! Each major capability has a runnable example under `examples/`; see the
//! crate README for a tour.

pub mod action;
pub mod arith;
pub mod cartan;
pub mod charfn;
pub mod cli;
pub mod coeff;
pub mod cyclotomic;
pub mod dist;
pub mod error;
pub mod hcoeff;
pub mod presets;
pub mod report;
pub mod roots;
pub mod weyl;
pub mod zseries;

pub use action::{ActionContext, GeomSeries};
pub use cartan::{CartanData, DominantWeight, HPoint, LatticeVector};
pub use coeff::{CoeffElement, Specialization};
pub use cyclotomic::{Cyc, CycField};
pub use dist::TruncatedDistribution;
pub use error::Error;
pub use roots::RootTable;
pub use weyl::WeylWord;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer as a [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for a fraction as a [`Rat`].
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
