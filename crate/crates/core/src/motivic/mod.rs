//! Exact arithmetic in the localized Grothendieck ring and its
//! Euler-characteristic specialization.
//!
//! Everything is polynomial in the class L of the affine line: Laurent
//! polynomials in L, bivariate numerators in (L, U), rational functions with
//! factored denominators, and the eps-expansion that sends L to 1.

mod bipoly;
mod laurent;
mod limit;
mod ratfn;
mod rational;

pub use bipoly::BiPoly;
pub use laurent::{eval_l, LaurentPoly};
pub use limit::{eps_expansion, topological_limit, EpsExpansion};
pub use ratfn::{laurent_at_pole, PolyD, RationalFunctionD};
pub use rational::{DenomFactor, MotivicRational};
