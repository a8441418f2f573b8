//! Exact-arithmetic toolkit for toric surface singularities.
//!
//! Given coprime integers `0 < p < q`, this crate computes the combinatorial
//! resolution data of the cyclic quotient singularity of the cone spanned by
//! `(1,0)` and `(p,q)`, assembles its local motivic Igusa zeta function and
//! Poincare series in closed form, specializes to the topological zeta
//! function, and recovers the singularity invariants back from the series.
//! Every closed-form value can be cross-checked by brute-force point counting
//! of jet schemes over small finite fields.
//!
//! Module map:
//! - [`lattice`]: Hirzebruch-Jung continued fractions, fan recurrence,
//!   duality algorithm, polar-polyhedron data.
//! - [`motivic`]: Laurent polynomials in the Lefschetz class, structured
//!   rational functions, power-series expansion, the Euler-characteristic
//!   limit.
//! - [`zeta`]: assembly of the zeta function from the per-stratum terms and
//!   derivation of the Poincare series coefficients.
//! - [`topo`]: poles, residues, and the inverse problem.
//! - [`arcs`]: dual-cone semigroup generators, the basis-minimizer condition
//!   on order vectors, and the threefold counterexample computations.
//! - [`oracle`]: brute-force jet counting over small finite fields.

pub mod arcs;
pub mod error;
pub mod gf;
pub mod lattice;
pub mod motivic;
pub mod oracle;
pub mod topo;
pub mod zeta;

pub use error::Error;
pub use lattice::{HJSequence, ResolutionData, SurfaceSingularity, ThetaData};
pub use motivic::{DenomFactor, LaurentPoly, MotivicRational, RationalFunctionD};
pub use zeta::ZetaFunction;
