//! Euler-characteristic limits: specialize L = exp(eps) and expand in eps.
//!
//! A term `num(L, U) / prod (1 - L^{-nu} U^N)` with `U = L^{-d}` becomes a
//! Laurent series in eps whose coefficients are rational functions of d. The
//! topological value is the eps^0 coefficient; negative powers must cancel in
//! the full sum, though individual terms may carry them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::rational::MotivicRational;
use super::ratfn::{PolyD, RationalFunctionD};
use crate::error::Error;

/// Truncated Laurent expansion in eps, exponents `min..=0`, with
/// rational-function-in-d coefficients.
#[derive(Debug, Clone, Default)]
pub struct EpsExpansion {
    coeffs: BTreeMap<i64, RationalFunctionD>,
}

impl EpsExpansion {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            let entry = out
                .coeffs
                .entry(k)
                .or_insert_with(RationalFunctionD::zero);
            *entry = entry.add(c);
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    /// Coefficients with negative eps-exponent, if any survive.
    pub fn negative_part(&self) -> Vec<(i64, &RationalFunctionD)> {
        self.coeffs.range(..0).map(|(&k, c)| (k, c)).collect()
    }

    pub fn constant_term(&self) -> RationalFunctionD {
        self.coeffs.get(&0).cloned().unwrap_or_else(RationalFunctionD::zero)
    }
}

/// Coefficients of `exp(c * eps)` through `eps^order`.
fn exp_series(c: &PolyD, order: usize) -> Vec<RationalFunctionD> {
    let mut out = Vec::with_capacity(order + 1);
    let mut power = PolyD::one();
    let mut fact = BigInt::one();
    for k in 0..=order {
        if k > 0 {
            power = power.mul(c);
            fact *= BigInt::from(k as i64);
        }
        out.push(RationalFunctionD::from_poly(
            power.scale(&BigRational::from(fact.clone()).recip()),
        ));
    }
    out
}

/// Coefficients of `(1 - exp(-c * eps)) / eps` through `eps^order`.
fn factor_series(c: &PolyD, order: usize) -> Vec<RationalFunctionD> {
    let mut out = Vec::with_capacity(order + 1);
    let mut power = c.clone();
    let mut fact = BigInt::one();
    for k in 0..=order {
        if k > 0 {
            power = power.mul(c);
            fact *= BigInt::from(k as i64 + 1);
        }
        let mut coeff = power.scale(&BigRational::from(fact.clone()).recip());
        if k % 2 == 1 {
            coeff = coeff.neg();
        }
        out.push(RationalFunctionD::from_poly(coeff));
    }
    out
}

fn series_mul(
    a: &[RationalFunctionD],
    b: &[RationalFunctionD],
    order: usize,
) -> Vec<RationalFunctionD> {
    let mut out = vec![RationalFunctionD::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
    }
    out
}

/// Laurent expansion of one term around eps = 0, kept through eps^0.
pub fn eps_expansion(x: &MotivicRational) -> Result<EpsExpansion, Error> {
    if x.is_zero() {
        return Ok(EpsExpansion::zero());
    }
    let f = x.den.len();
    let order = f;
    // Numerator: each monomial L^a U^b contributes exp((a - b d) eps).
    let mut num = vec![RationalFunctionD::zero(); order + 1];
    for ((l, u), c) in x.num.terms() {
        let coeff = RationalFunctionD::constant(BigRational::from(c.clone()));
        for (k, e) in exp_series(&PolyD::linear(-u, l), order).iter().enumerate() {
            num[k] = num[k].add(&coeff.mul(e));
        }
    }
    // Denominator: each factor 1 - L^{-(N d + nu)} is eps times a series with
    // nonzero constant term N d + nu.
    let mut den = vec![RationalFunctionD::zero(); order + 1];
    den[0] = RationalFunctionD::from_poly(PolyD::one());
    for fac in &x.den {
        den = series_mul(&den, &factor_series(&PolyD::linear(fac.n, fac.nu), order), order);
    }
    if den[0].is_zero() {
        return Err(Error::LimitAssertion(
            "denominator factor vanishes identically".into(),
        ));
    }
    // Divide the truncated series; the term's expansion starts at eps^{-f}.
    let lead_inv = den[0].recip();
    let mut quot = vec![RationalFunctionD::zero(); order + 1];
    for k in 0..=order {
        let mut acc = num[k].clone();
        for j in 1..=k {
            acc = acc.sub(&den[j].mul(&quot[k - j]));
        }
        quot[k] = acc.mul(&lead_inv);
    }
    let mut coeffs = BTreeMap::new();
    for (k, c) in quot.into_iter().enumerate() {
        if !c.is_zero() {
            coeffs.insert(k as i64 - f as i64, c);
        }
    }
    Ok(EpsExpansion { coeffs })
}

/// Sum of the expansions of `terms`; fails if any negative eps-power
/// survives the sum.
pub fn topological_limit(terms: &[MotivicRational]) -> Result<RationalFunctionD, Error> {
    let mut total = EpsExpansion::zero();
    for t in terms {
        total = total.add(&eps_expansion(t)?);
    }
    let neg = total.negative_part();
    if !neg.is_empty() {
        let detail: Vec<String> =
            neg.iter().map(|(k, c)| format!("eps^{k}: {c}")).collect();
        return Err(Error::LimitAssertion(format!(
            "uncancelled singular part: {}",
            detail.join("; ")
        )));
    }
    Ok(total.constant_term())
}
