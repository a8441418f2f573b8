//! Rational functions in (L, U) with a factored denominator.
//!
//! The denominator is a multiset of factors `1 - L^{-nu} U^N`, never expanded
//! unless an equality test demands it. This keeps the candidate-pole structure
//! visible and avoids coefficient blow-up in intermediate arithmetic.

use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::laurent::LaurentPoly;
use crate::error::Error;

/// One denominator factor `1 - L^{-nu} U^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DenomFactor {
    /// Exponent of U; nonnegative.
    pub n: i64,
    /// Exponent of L, with the sign convention above.
    pub nu: i64,
}

impl DenomFactor {
    pub fn new(n: i64, nu: i64) -> Self {
        assert!(n >= 0, "U-exponent must be nonnegative");
        assert!((n, nu) != (0, 0), "trivial factor 1 - 1");
        Self { n, nu }
    }

    pub fn as_poly(&self) -> BiPoly {
        BiPoly::one().sub(&BiPoly::monomial(-self.nu, self.n, 1))
    }
}

/// A sum-of-terms-ready rational function: numerator over a multiset of
/// denominator factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotivicRational {
    pub num: BiPoly,
    pub den: Vec<DenomFactor>,
}

impl MotivicRational {
    pub fn new(num: BiPoly, mut den: Vec<DenomFactor>) -> Self {
        den.sort();
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self::new(BiPoly::zero(), Vec::new())
    }

    pub fn one() -> Self {
        Self::new(BiPoly::one(), Vec::new())
    }

    pub fn from_poly(num: BiPoly) -> Self {
        Self::new(num, Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn den_counts(&self) -> Vec<(DenomFactor, usize)> {
        let mut out: Vec<(DenomFactor, usize)> = Vec::new();
        for &f in &self.den {
            match out.last_mut() {
                Some((g, k)) if *g == f => *k += 1,
                _ => out.push((f, 1)),
            }
        }
        out
    }

    fn multiplicity(counts: &[(DenomFactor, usize)], f: DenomFactor) -> usize {
        counts.iter().find(|(g, _)| *g == f).map_or(0, |(_, k)| *k)
    }

    /// Sum over the union multiset of denominator factors.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let ca = self.den_counts();
        let cb = other.den_counts();
        let mut union: Vec<(DenomFactor, usize)> = ca.clone();
        for &(f, k) in &cb {
            match union.iter_mut().find(|(g, _)| *g == f) {
                Some((_, k0)) => *k0 = (*k0).max(k),
                None => union.push((f, k)),
            }
        }
        let mut num_a = self.num.clone();
        let mut num_b = other.num.clone();
        let mut den = Vec::new();
        for &(f, k) in &union {
            for _ in Self::multiplicity(&ca, f)..k {
                num_a = num_a.mul(&f.as_poly());
            }
            for _ in Self::multiplicity(&cb, f)..k {
                num_b = num_b.mul(&f.as_poly());
            }
            den.extend(std::iter::repeat(f).take(k));
        }
        Self::new(num_a.add(&num_b), den)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.num.neg(), self.den.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        den.extend_from_slice(&other.den);
        Self::new(self.num.mul(&other.num), den)
    }

    pub fn mul_poly(&self, p: &BiPoly) -> Self {
        Self::new(self.num.mul(p), self.den.clone())
    }

    /// Appends a factor to the denominator (division by it).
    pub fn div_factor(&self, f: DenomFactor) -> Self {
        let mut den = self.den.clone();
        den.push(f);
        Self::new(self.num.clone(), den)
    }

    fn den_poly(&self) -> BiPoly {
        self.den.iter().fold(BiPoly::one(), |acc, f| acc.mul(&f.as_poly()))
    }

    /// Decides equality by cross-multiplied polynomial identity.
    pub fn equal(&self, other: &Self) -> bool {
        self.num.mul(&other.den_poly()) == other.num.mul(&self.den_poly())
    }

    /// Power-series coefficients of `U^0 .. U^order`, each a Laurent
    /// polynomial in L.
    ///
    /// Factors with `N >= 1` expand as geometric series; factors constant in
    /// U must divide every coefficient exactly.
    pub fn series_coeffs(&self, order: usize) -> Result<Vec<LaurentPoly>, Error> {
        if self.num.min_u().map_or(false, |u| u < 0) {
            return Err(Error::NonExpandable);
        }
        let mut coeffs = self.num.u_coeffs(order);
        for f in &self.den {
            if f.n >= 1 {
                let n = f.n as usize;
                for k in 0..coeffs.len() {
                    if k >= n {
                        let prev = coeffs[k - n].shift(-f.nu);
                        coeffs[k] = coeffs[k].add(&prev);
                    }
                }
            } else if f.nu == 0 {
                return Err(Error::NonExpandable);
            } else {
                let div = LaurentPoly::one().sub(&LaurentPoly::monomial(-f.nu, 1));
                for c in coeffs.iter_mut() {
                    *c = c.exact_div(&div).ok_or(Error::NonExpandable)?;
                }
            }
        }
        Ok(coeffs)
    }

    /// Replaces `U` by `L^shift * T`; the result is a rational function of
    /// the same shape in (L, T).
    pub fn substitute_t(&self, shift: i64) -> Self {
        let num = self.num.reindex_u(shift);
        let den = self
            .den
            .iter()
            .map(|f| DenomFactor::new(f.n, f.nu - f.n * shift))
            .collect();
        Self::new(num, den)
    }
}
