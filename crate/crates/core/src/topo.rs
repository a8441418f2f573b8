//! Topological zeta function, pole and residue analysis, and the inverse
//! problem: recovering the singularity invariants from the series alone.
//!
//! The topological zeta function is the Euler-characteristic limit of the
//! motivic one, a reduced rational function of the jet variable d. Its
//! candidate poles are -t, -(t+2)/2, -(2t+2)/3 and one value
//! -((d_k+2)t+2)/(d_k+3) per double-point chain; for t != 2 these are
//! pairwise distinct across distinct chain lengths, while at t = 2 all of
//! them collapse onto -2, which then carries a pole of multiplicity 3.
//!
//! Recovery works backwards: t from the T^1 coefficient of the Poincare
//! series (cross-checked against the smallest pole), b from the residue at
//! -(2t+2)/3 when t >= 3, and the chain multiset by inverting the visible
//! chain poles and exact-matching a forward-computed candidate. Only t = 2
//! needs a blind bounded search, since there the poles carry no location
//! information.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::lattice::ResolutionData;
use crate::motivic::{
    laurent_at_pole, topological_limit, LaurentPoly, MotivicRational, RationalFunctionD,
};
use crate::zeta::{numerical_data, zeta_terms, ZetaFunction};

/// Largest chain length probed when locating poles.
const PROBE_D_MAX: i64 = 400;
/// Search bounds for the blind t = 2 chain search, tried in order.
const BLIND_BOUNDS: [i64; 4] = [8, 16, 32, 64];

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn rat2(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The pole contributed by one chain of length `d`: `-((d+2)t+2)/(d+3)`.
/// With `d = 0` this is the adjacency-family pole `-(2t+2)/3`.
pub fn chain_pole(t: i64, d: i64) -> BigRational {
    rat2(-((d + 2) * t + 2), d + 3)
}

/// A pole of the topological zeta function at a candidate point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleReport {
    pub pole: BigRational,
    pub order: usize,
    /// The leading Laurent coefficient; the residue when `order == 1`.
    pub residue_or_leading: BigRational,
    /// The `(N, nu)` data whose root sits at this point.
    pub provenance: Vec<(i64, i64)>,
}

/// Invariants read back from the series, together with the reconstructed
/// entry multiset `{2}^{t-b-r} + {3}^b + {d+3 : d in d_multiset}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredInvariants {
    pub t: i64,
    pub b: i64,
    pub d_multiset: Vec<i64>,
    pub c_multiset: Vec<i64>,
}

/// The Euler-characteristic limit of the assembled zeta function.
pub fn topological_zeta(zf: &ZetaFunction) -> Result<RationalFunctionD, Error> {
    topological_limit(&zf.z_terms())
}

/// All candidate poles of a resolved singularity, sorted ascending with
/// duplicates removed. The three leading values are always listed; each
/// distinct chain length adds one more.
pub fn candidate_poles(res: &ResolutionData) -> Vec<BigRational> {
    let t = res.t() as i64;
    let mut out: Vec<BigRational> = candidate_pole_data(t, &res.d_list)
        .into_iter()
        .map(|(_, pole)| pole)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Candidate poles labeled by the `(N, nu)` data that produce them,
/// including the adjacency factor `(3, 2t+2)`.
fn candidate_pole_data(t: i64, d_list: &[i64]) -> Vec<(Vec<(i64, i64)>, BigRational)> {
    let mut data = numerical_data(t, d_list);
    data.push((3, 2 * t + 2));
    let mut out: Vec<(Vec<(i64, i64)>, BigRational)> = Vec::new();
    for (n, nu) in data {
        let pole = rat2(-nu, n);
        match out.iter_mut().find(|(_, p)| *p == pole) {
            Some((prov, _)) => {
                if !prov.contains(&(n, nu)) {
                    prov.push((n, nu));
                }
            }
            None => out.push((vec![(n, nu)], pole)),
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// Every root of the reduced denominator, with multiplicity, found by
/// deflating against the full probe family of candidate points. Fails if
/// anything survives the deflation: the denominator always divides a product
/// of the known linear forms, so a leftover signals an inconsistency.
pub fn all_poles(
    ztop: &RationalFunctionD,
    t: i64,
) -> Result<Vec<(BigRational, usize)>, Error> {
    let mut probes = vec![rat(-t), rat2(-(t + 2), 2)];
    for d in 0..=PROBE_D_MAX {
        probes.push(chain_pole(t, d));
    }
    probes.sort();
    probes.dedup();
    let mut den = ztop.den().clone();
    let mut out = Vec::new();
    for p in probes {
        let m = den.root_multiplicity(&p);
        if m > 0 {
            for _ in 0..m {
                den = den.deflate(&p);
            }
            out.push((p, m));
        }
    }
    if den.degree() != Some(0) && !den.is_zero() {
        return Err(Error::Recovery(format!(
            "denominator has roots outside the candidate family: {den}"
        )));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Order, leading coefficient and provenance of the zeta function at every
/// candidate pole that is an actual pole. Fails when a pole falls outside
/// the candidate list.
pub fn pole_reports(
    ztop: &RationalFunctionD,
    res: &ResolutionData,
) -> Result<Vec<PoleReport>, Error> {
    let t = res.t() as i64;
    let labeled = candidate_pole_data(t, &res.d_list);
    let mut den = ztop.den().clone();
    let mut out = Vec::new();
    for (provenance, pole) in labeled {
        let (order, leading, _) = laurent_at_pole(ztop, &pole);
        for _ in 0..order {
            den = den.deflate(&pole);
        }
        if order > 0 {
            out.push(PoleReport { pole, order, residue_or_leading: leading, provenance });
        }
    }
    if den.degree() != Some(0) && !den.is_zero() {
        return Err(Error::Recovery(format!(
            "pole outside the candidate list: denominator leftover {den}"
        )));
    }
    Ok(out)
}

/// Reads `t` off the `T^1` coefficient of the series (a bare `L^{t+2}`),
/// then cross-checks it against the pole set of the topological zeta
/// function: every pole must lie in the candidate family of this `t`, and
/// an integral smallest pole must be `-t` itself. (The converse direction,
/// reading `t` off the smallest pole alone, fails when the numerator
/// cancels the `-t` factor and leaves a non-integral chain pole smallest,
/// as happens e.g. for the singularity of type (7, 30).)
pub fn recover_t(t1_coeff: &LaurentPoly, ztop: &RationalFunctionD) -> Result<i64, Error> {
    let exps: Vec<(i64, BigInt)> = t1_coeff.terms().map(|(e, c)| (e, c.clone())).collect();
    let t = match exps.as_slice() {
        [(e, c)] if c.is_one() && *e >= 3 => e - 2,
        _ => {
            return Err(Error::Recovery(format!(
                "T^1 coefficient {t1_coeff} is not a bare power of L"
            )))
        }
    };
    let poles = all_poles(ztop, t)?;
    if let Some((smallest, _)) = poles.first() {
        if smallest.is_integer() && *smallest != rat(-t) {
            return Err(Error::Recovery(format!(
                "series gives t = {t} but the smallest pole is {smallest}"
            )));
        }
    }
    Ok(t)
}

/// Recovers `b` from the residue at `-(2t+2)/3` when `t >= 3`: only the
/// adjacency family has a pole there, with residue `-2b(t+1)^2/(3(t-2)^2)`
/// (its three terms contribute `1/3`, `-(t-1)/(t-2)` and `-3t/(t-2)^2` per
/// adjacent pair), so `b = -residue * 3(t-2)^2 / (2(t+1)^2)`. For `t <= 2` the residue
/// carries no isolated information (the point collides with other
/// candidates), so `None` is returned and the chain search also determines
/// `b` by matching.
pub fn recover_b(ztop: &RationalFunctionD, t: i64) -> Result<Option<i64>, Error> {
    if t < 3 {
        return Ok(None);
    }
    let point = rat2(-(2 * t + 2), 3);
    let (order, leading, _) = laurent_at_pole(ztop, &point);
    let residue = match order {
        0 => BigRational::zero(),
        1 => leading,
        _ => {
            return Err(Error::Recovery(format!(
                "pole of order {order} at {point} with t = {t}"
            )))
        }
    };
    let b = -residue * rat(3 * (t - 2) * (t - 2)) / rat(2 * (t + 1) * (t + 1));
    if !b.is_integer() || b < BigRational::zero() {
        return Err(Error::Recovery(format!("non-integral b = {b} from the residue")));
    }
    Ok(Some(b.to_integer().try_into().map_err(|_| {
        Error::Recovery("recovered b out of range".into())
    })?))
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow::pow(x.clone(), e as usize)
    } else {
        num_traits::pow::pow(x.clone().recip(), (-e) as usize)
    }
}

/// Exact evaluation of a term sum at a sample point `(L, U)`; used as a
/// cheap complete prefilter before the rational-function comparison.
fn eval_terms(terms: &[MotivicRational], l: &BigRational, u: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for x in terms {
        let mut num = BigRational::zero();
        for ((le, ue), c) in x.num.terms() {
            num += BigRational::from(c.clone()) * pow_rat(l, le) * pow_rat(u, ue);
        }
        let mut den = BigRational::one();
        for f in &x.den {
            den *= BigRational::one() - pow_rat(l, -f.nu) * pow_rat(u, f.n);
        }
        acc += num / den;
    }
    acc
}

/// Evaluation at `L = l0`, `U = l0^{-dd}`, which keeps every denominator
/// factor nonzero for `l0 > 1` and `dd >= 1`.
fn sample(terms: &[MotivicRational], l0: i64, dd: i64) -> BigRational {
    let l = rat(l0);
    eval_terms(terms, &l, &pow_rat(&l, -dd))
}

/// All multisets over `cands` (as sorted vectors) with at most `cap`
/// elements; when `require_all` is set, every candidate appears at least
/// once.
fn multisets(cands: &[i64], cap: i64, require_all: bool) -> Vec<Vec<i64>> {
    fn go(
        cands: &[i64],
        idx: usize,
        left: i64,
        require_all: bool,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if idx == cands.len() {
            out.push(current.clone());
            return;
        }
        let min = if require_all { 1 } else { 0 };
        for m in min..=left {
            let before = current.len();
            current.extend(std::iter::repeat(cands[idx]).take(m as usize));
            go(cands, idx + 1, left - m, require_all, current, out);
            current.truncate(before);
        }
    }
    let mut out = Vec::new();
    if require_all && (cands.len() as i64) > cap {
        return out;
    }
    let mut current = Vec::new();
    go(cands, 0, cap, require_all, &mut current, &mut out);
    out
}

/// Inverts a pole back to an integral chain length, if it is one.
fn chain_length_from_pole(t: i64, pole: &BigRational) -> Option<i64> {
    // pole = -((d+2)t+2)/(d+3) solves to d = -(3 pole + 2t + 2)/(pole + t).
    let denom = pole + rat(t);
    if denom.is_zero() {
        return None;
    }
    let d = -(pole * rat(3) + rat(2 * t + 2)) / denom;
    if !d.is_integer() {
        return None;
    }
    let d: i64 = d.to_integer().try_into().ok()?;
    if d >= 1 && chain_pole(t, d) == *pole {
        Some(d)
    } else {
        None
    }
}

/// Full inverse problem: reads `(t, b, d_multiset)` back from an assembled
/// zeta function using only its series and topological specialization, and
/// reconstructs the entry multiset. The chain search enumerates candidate
/// multisets, prefilters by exact evaluation at two sample points, and
/// accepts on equality of the topological zeta functions; several survivors
/// within the searched bound are reported as an ambiguity.
pub fn recover(zf: &ZetaFunction) -> Result<RecoveredInvariants, Error> {
    let ztop = topological_zeta(zf)?;
    let coeffs = zf.series_coefficients(1)?;
    let t = recover_t(&coeffs[1], &ztop)?;
    let b_known = recover_b(&ztop, t)?;
    let input_terms = zf.z_terms();
    let targets = (sample(&input_terms, 2, 5), sample(&input_terms, 3, 1));

    let try_bound = |cands: &[i64], require_all: bool| -> Result<Vec<(i64, Vec<i64>)>, Error> {
        let mut matches = Vec::new();
        let cap = t - b_known.unwrap_or(0);
        for d_multiset in multisets(cands, cap, require_all) {
            let r = d_multiset.len() as i64;
            let b_options: Vec<i64> = match b_known {
                Some(b) => vec![b],
                None => (0..=t - r).collect(),
            };
            for b in b_options {
                if t - b - r < 0 {
                    continue;
                }
                let cand = zeta_terms(t, b + r + 1, b, &d_multiset);
                let terms = cand.z_terms();
                if sample(&terms, 2, 5) != targets.0 || sample(&terms, 3, 1) != targets.1 {
                    continue;
                }
                if topological_limit(&terms)? == ztop {
                    matches.push((b, d_multiset.clone()));
                }
            }
        }
        Ok(matches)
    };

    let matches = if t == 2 {
        // All candidate poles collapse onto -2, so the pole locations say
        // nothing about the chains: search blindly with growing bounds.
        let mut found = Vec::new();
        for bound in BLIND_BOUNDS {
            let cands: Vec<i64> = (1..=bound).collect();
            found = try_bound(&cands, false)?;
            if !found.is_empty() {
                break;
            }
        }
        found
    } else {
        // Each chain leaves a pole at a point determined by its length;
        // invert the visible poles to get the candidate lengths.
        let mut cands: Vec<i64> = all_poles(&ztop, t)?
            .iter()
            .filter_map(|(pole, _)| chain_length_from_pole(t, pole))
            .collect();
        cands.sort_unstable();
        cands.dedup();
        try_bound(&cands, true)?
    };

    match matches.as_slice() {
        [] => Err(Error::Recovery(format!(
            "no (b, chain) assignment matches with t = {t}"
        ))),
        [(b, d_multiset)] => {
            let b = *b;
            let r = d_multiset.len() as i64;
            let mut c_multiset = vec![2i64; (t - b - r) as usize];
            c_multiset.extend(std::iter::repeat(3).take(b as usize));
            c_multiset.extend(d_multiset.iter().map(|&d| d + 3));
            c_multiset.sort_unstable();
            Ok(RecoveredInvariants { t, b, d_multiset: d_multiset.clone(), c_multiset })
        }
        many => Err(Error::Recovery(format!(
            "ambiguous recovery with t = {t}: {many:?}"
        ))),
    }
}

/// [`recover`], checked against the forward invariants it came from.
pub fn recover_c_multiset(zf: &ZetaFunction) -> Result<RecoveredInvariants, Error> {
    recover(zf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{resolution_fan, SurfaceSingularity};
    use crate::motivic::{BiPoly, DenomFactor, PolyD};
    use crate::zeta::assemble_zeta;

    fn forward(p: i64, q: i64) -> (ResolutionData, ZetaFunction) {
        let res = resolution_fan(SurfaceSingularity::new(p, q).unwrap()).unwrap();
        let zf = assemble_zeta(&res);
        (res, zf)
    }

    #[test]
    fn adjacency_block_limit() {
        // (L^t - 1)(L - 1) L^{-3d-2t-2} / ((1 - L^{-d-t})(1 - L^{-2d-t-2}))
        // tends to t/((d+t)(2d+t+2)).
        for t in 1..=4i64 {
            let num = BiPoly::monomial(t, 0, 1)
                .sub(&BiPoly::one())
                .mul(&BiPoly::monomial(1, 0, 1).sub(&BiPoly::one()))
                .mul(&BiPoly::monomial(-2 * t - 2, 3, 1));
            let x = MotivicRational::new(
                num,
                vec![DenomFactor::new(1, t), DenomFactor::new(2, t + 2)],
            );
            let lim = topological_limit(&[x]).unwrap();
            let expect = RationalFunctionD::from_poly(PolyD::from_int(t))
                .mul(&RationalFunctionD::inv_linear(1, t))
                .mul(&RationalFunctionD::inv_linear(2, t + 2));
            assert_eq!(lim, expect, "t={t}");
        }
    }

    #[test]
    fn candidate_pole_examples() {
        // Chainless t = 3: exactly {-3, -8/3, -5/2}.
        let (res, _) = forward(3, 7);
        assert_eq!(
            candidate_poles(&res),
            vec![rat(-3), rat2(-8, 3), rat2(-5, 2)]
        );
        // t = 2: everything collapses onto -2.
        let (res, _) = forward(2, 5);
        assert_eq!(candidate_poles(&res), vec![rat(-2)]);
        // t = 1 with a chain of length 1 adds -5/4.
        let (res, _) = forward(1, 4);
        assert!(candidate_poles(&res).contains(&rat2(-5, 4)));
    }

    #[test]
    fn poles_stay_within_candidates() {
        for (p, q) in [(1, 2), (1, 4), (2, 5), (3, 7), (2, 7), (3, 8), (5, 12)] {
            let (res, zf) = forward(p, q);
            let ztop = topological_zeta(&zf).unwrap();
            pole_reports(&ztop, &res).unwrap_or_else(|e| panic!("({p},{q}): {e}"));
        }
    }

    #[test]
    fn simple_surface_pole_set() {
        // The A_1 case has poles only at -1 and -3/2.
        let (res, zf) = forward(1, 2);
        let ztop = topological_zeta(&zf).unwrap();
        let poles: Vec<BigRational> =
            pole_reports(&ztop, &res).unwrap().into_iter().map(|r| r.pole).collect();
        assert_eq!(poles, vec![rat2(-3, 2), rat(-1)]);
    }

    #[test]
    fn residue_recovers_b() {
        // t = 3, b = 1: residue at -8/3 is -2(t+1)^2/(3(t-2)^2) = -32/3.
        let (_, zf) = forward(3, 7);
        let ztop = topological_zeta(&zf).unwrap();
        let (order, _, res) = laurent_at_pole(&ztop, &rat2(-8, 3));
        assert_eq!(order, 1);
        assert_eq!(res.unwrap(), rat2(-32, 3));
        assert_eq!(recover_b(&ztop, 3).unwrap(), Some(1));
        // t = 3, b = 2 doubles it.
        let (res, zf) = forward(5, 13);
        assert_eq!(res.b, 2);
        let ztop = topological_zeta(&zf).unwrap();
        let (_, _, r) = laurent_at_pole(&ztop, &rat2(-8, 3));
        assert_eq!(r.unwrap(), rat2(-64, 3));
    }

    #[test]
    fn multiplicity_three_at_t_two() {
        let (_, zf) = forward(2, 5);
        let ztop = topological_zeta(&zf).unwrap();
        let (order, _, _) = laurent_at_pole(&ztop, &rat(-2));
        assert_eq!(order, 3);
    }

    #[test]
    fn recover_t_examples() {
        for (p, q, expect) in [(3, 7, 3), (1, 2, 1), (2, 5, 2)] {
            let (_, zf) = forward(p, q);
            let ztop = topological_zeta(&zf).unwrap();
            let coeffs = zf.series_coefficients(1).unwrap();
            assert_eq!(recover_t(&coeffs[1], &ztop).unwrap(), expect, "({p},{q})");
        }
    }

    #[test]
    fn round_trip_examples() {
        for (p, q) in [(1, 2), (1, 4), (2, 5), (3, 7), (2, 7), (3, 8), (5, 7), (7, 30)] {
            let (res, zf) = forward(p, q);
            let got = recover(&zf).unwrap_or_else(|e| panic!("({p},{q}): {e}"));
            assert_eq!(got.t, res.t() as i64, "({p},{q})");
            assert_eq!(got.b, res.b, "({p},{q})");
            let mut want_d = res.d_list.clone();
            want_d.sort_unstable();
            assert_eq!(got.d_multiset, want_d, "({p},{q})");
            let mut want_c = res.c_seq.entries().to_vec();
            want_c.sort_unstable();
            assert_eq!(got.c_multiset, want_c, "({p},{q})");
        }
    }
}
