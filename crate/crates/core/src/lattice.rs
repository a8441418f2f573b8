//! Continued fractions and lattice geometry of the singularity.
//!
//! Everything downstream consumes the combinatorial record produced here:
//! the two Hirzebruch-Jung expansions attached to `(p, q)`, the fan of the
//! minimal resolution, the blow-up counts `(a, r, b)`, and the chain lengths
//! `d_k` of the leftover rational double points.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The cyclic quotient surface singularity of the cone spanned by `(1,0)`
/// and `(p,q)`, with `0 < p < q` coprime and `q >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSingularity {
    p: i64,
    q: i64,
}

impl SurfaceSingularity {
    pub fn new(p: i64, q: i64) -> Result<Self, Error> {
        if !(0 < p && p < q) {
            return Err(Error::InvalidSingularity { p, q, reason: "need 0 < p < q" });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidSingularity { p, q, reason: "gcd(p, q) != 1" });
        }
        if q < 2 {
            return Err(Error::InvalidSingularity { p, q, reason: "q >= 2 required" });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// A Hirzebruch-Jung continued-fraction expansion: a nonempty list of
/// integer entries, all `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HJSequence {
    entries: Vec<i64>,
}

impl HJSequence {
    pub fn new(entries: Vec<i64>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        if let Some(&e) = entries.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidSequence(format!("entry {e} < 2")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Greedy Hirzebruch-Jung expansion of `numerator / denominator`.
///
/// Uses the recurrence `e = ceil(num/den)`, `(num, den) <- (den, e*den - num)`;
/// the denominators strictly decrease, so this terminates.
pub fn hj_expand(numerator: i64, denominator: i64) -> Result<HJSequence, Error> {
    if denominator < 1 || numerator <= denominator {
        return Err(Error::InvalidFraction {
            num: numerator,
            den: denominator,
            reason: "need numerator > denominator >= 1",
        });
    }
    if numerator.gcd(&denominator) != 1 {
        return Err(Error::InvalidFraction {
            num: numerator,
            den: denominator,
            reason: "not coprime",
        });
    }
    let (mut num, mut den) = (numerator, denominator);
    let mut entries = Vec::new();
    while den > 0 {
        let e = Integer::div_ceil(&num, &den);
        entries.push(e);
        let next = e * den - num;
        num = den;
        den = next;
    }
    HJSequence::new(entries)
}

/// Exact value of the continued fraction `e1 - 1/(e2 - 1/(...))`.
pub fn hj_value(seq: &HJSequence) -> Rational64 {
    let mut value = Rational64::from_integer(*seq.entries.last().unwrap());
    for &e in seq.entries.iter().rev().skip(1) {
        value = Rational64::from_integer(e) - value.recip();
    }
    value
}

/// The duality algorithm on Hirzebruch-Jung strings.
///
/// Reads the input entries left to right: a run of `j` 2's contributes a dual
/// entry `j + 3`, reduced by one for each of the two boundary positions the
/// run touches; an entry `e != 2` contributes `e - 3` dual 2's, with the same
/// boundary adjustment, followed by a 3 whenever the next entry also differs
/// from 2. The map is an involution: it sends the expansion of `q/(q-p)` to
/// the expansion of `q/p` and back.
pub fn dual_sequence(seq: &HJSequence) -> Result<HJSequence, Error> {
    let b = seq.entries();
    let s = b.len();
    let mut out: Vec<i64> = Vec::new();
    let mut i = 0;
    while i < s {
        if b[i] == 2 {
            let start = i;
            while i < s && b[i] == 2 {
                i += 1;
            }
            let j = (i - start) as i64;
            let mut entry = j + 3;
            if start == 0 {
                entry -= 1;
            }
            if i == s {
                entry -= 1;
            }
            out.push(entry);
        } else {
            let mut twos = b[i] - 3;
            if i == 0 {
                twos += 1;
            }
            if i == s - 1 {
                twos += 1;
            }
            debug_assert!(twos >= 0);
            out.extend(std::iter::repeat(2).take(twos as usize));
            if i + 1 < s && b[i + 1] != 2 {
                out.push(3);
            }
            i += 1;
        }
    }
    HJSequence::new(out).map_err(|_| {
        Error::InvalidSequence(format!("{:?} has no dual expansion", seq.entries()))
    })
}

/// A lattice vector in the plane.
pub type Vec2 = (i64, i64);

/// Full combinatorial record of the resolution of a singularity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub sing: SurfaceSingularity,
    /// Expansion of `q/(q-p)`, length `s`.
    pub b_seq: HJSequence,
    /// Expansion of `q/p`, length `t`.
    pub c_seq: HJSequence,
    /// `v_0 = (1,0), v_1 = (1,1), ..., v_{s+1} = (p,q)`.
    pub fan_vectors: Vec<Vec2>,
    /// Vectors inserted by the first blow-up.
    pub a: i64,
    /// Number of leftover double-point chains.
    pub r: i64,
    /// Number of adjacent inserted pairs, `b = a - r - 1`.
    pub b: i64,
    /// Chain lengths, one per maximal run of 2's in the interior of the
    /// b-sequence; equals the multiset `{c_k - 3 : c_k > 3}`.
    pub d_list: Vec<i64>,
    /// Set when `s <= 2`: the blow-up count rule for such short b-sequences
    /// is validated only empirically by the finite-field oracle.
    pub short_chain: bool,
}

impl ResolutionData {
    pub fn s(&self) -> usize {
        self.b_seq.len()
    }

    pub fn t(&self) -> usize {
        self.c_seq.len()
    }
}

/// Counts `(a, r, b, d_list)` from a b-sequence.
///
/// `r` is the number of maximal runs of 2's within the interior entries
/// `b_2..b_{s-1}`, `d_list` their lengths in order, and `a` the number of
/// interior entries differing from 2 augmented by two. For `s = 1` only one
/// vector is inserted by the first blow-up, so `a = 1`.
pub fn derived_invariants(b_seq: &HJSequence) -> (i64, i64, i64, Vec<i64>) {
    let b = b_seq.entries();
    let s = b.len();
    if s == 1 {
        return (1, 0, 0, Vec::new());
    }
    let interior = &b[1..s - 1];
    let mut d_list = Vec::new();
    let mut run = 0i64;
    let mut non_two = 0i64;
    for &e in interior {
        if e == 2 {
            run += 1;
        } else {
            non_two += 1;
            if run > 0 {
                d_list.push(run);
                run = 0;
            }
        }
    }
    if run > 0 {
        d_list.push(run);
    }
    let a = non_two + 2;
    let r = d_list.len() as i64;
    let b_count = a - r - 1;
    (a, r, b_count, d_list)
}

/// Runs the fan recurrence `v_{j+1} = b_j v_j - v_{j-1}` and collects all
/// combinatorial invariants of the minimal resolution.
pub fn resolution_fan(sing: SurfaceSingularity) -> Result<ResolutionData, Error> {
    let (p, q) = (sing.p(), sing.q());
    let b_seq = hj_expand(q, q - p)?;
    let c_seq = hj_expand(q, p)?;
    let s = b_seq.len();
    let mut fan: Vec<Vec2> = vec![(1, 0), (1, 1)];
    for j in 1..=s {
        let bj = b_seq.entries()[j - 1];
        let vj = fan[j];
        let vjm1 = fan[j - 1];
        fan.push((bj * vj.0 - vjm1.0, bj * vj.1 - vjm1.1));
    }
    debug_assert_eq!(fan.len(), s + 2);
    if *fan.last().unwrap() != (p, q) {
        return Err(Error::InvalidSequence(format!(
            "fan recurrence for ({p}, {q}) ended at {:?}",
            fan.last().unwrap()
        )));
    }
    for w in fan.windows(2) {
        let det = w[0].0 * w[1].1 - w[0].1 * w[1].0;
        if det != 1 {
            return Err(Error::InvalidSequence(format!(
                "non-unimodular pair {:?}, {:?} in fan of ({p}, {q})",
                w[0], w[1]
            )));
        }
    }
    let (a, r, b, d_list) = derived_invariants(&b_seq);
    if b < 0 {
        return Err(Error::InvalidSequence(format!(
            "negative adjacency count b = {b} for ({p}, {q})"
        )));
    }
    // Cross-check against the dual expansion: the chain lengths must match
    // the entries c_k > 3, as multisets.
    let mut from_c: Vec<i64> =
        c_seq.entries().iter().filter(|&&c| c > 3).map(|&c| c - 3).collect();
    from_c.sort_unstable();
    let mut from_b = d_list.clone();
    from_b.sort_unstable();
    if from_b != from_c {
        return Err(Error::InvalidSequence(format!(
            "chain lengths {from_b:?} disagree with c-entries {from_c:?} for ({p}, {q})"
        )));
    }
    Ok(ResolutionData {
        sing,
        b_seq,
        c_seq,
        fan_vectors: fan,
        a,
        r,
        b,
        d_list,
        short_chain: s <= 2,
    })
}

/// A single binomial relation `x_{i-1} x_{i+1} = x_i^{c}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialEquation {
    /// Index `i` of the middle variable, `1 <= i <= t`.
    pub i: usize,
    /// Exponent `c_i` on the middle variable.
    pub power: i64,
}

/// Generators of the ideal of the embedding into affine `(t+2)`-space:
/// `x_{i-1} x_{i+1} - x_i^{c_i}` for `i = 1..t`, variables `x_0..x_{t+1}`.
pub fn embedding_ideal(c_seq: &HJSequence) -> Vec<BinomialEquation> {
    c_seq
        .entries()
        .iter()
        .enumerate()
        .map(|(k, &c)| BinomialEquation { i: k + 1, power: c })
        .collect()
}

/// Vertices of the compact boundary of the fan hull and of its dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaData {
    /// `v_{j(0)}, ..., v_{j(l)}`: the endpoints `v_0`, `v_{s+1}` together
    /// with every `v_i` with `b_i != 2`.
    pub theta_vertices: Vec<Vec2>,
    /// `m_{j(0)} = (0,1), ..., m_{j(l+1)} = (q,-p)`; the interior ones pair
    /// to 1 against the two fan vectors they support.
    pub dual_vertices: Vec<Vec2>,
}

/// Computes the vertex chains of both hulls for a singularity.
pub fn theta_vertices(sing: SurfaceSingularity) -> Result<ThetaData, Error> {
    let res = resolution_fan(sing)?;
    theta_from_resolution(&res)
}

pub fn theta_from_resolution(res: &ResolutionData) -> Result<ThetaData, Error> {
    let fan = &res.fan_vectors;
    let b = res.b_seq.entries();
    let s = res.s();
    let mut idx: Vec<usize> = vec![0];
    for (i, &bi) in b.iter().enumerate() {
        if bi != 2 {
            idx.push(i + 1);
        }
    }
    idx.push(s + 1);
    let theta: Vec<Vec2> = idx.iter().map(|&j| fan[j]).collect();
    let l = idx.len() - 1;

    // One support vector per edge of the hull boundary, framed by the duals
    // of the two rays.
    let mut duals: Vec<Vec2> = vec![(0, 1)];
    for alpha in 1..=l {
        let va = fan[idx[alpha - 1]];
        let vb = fan[idx[alpha]];
        duals.push(solve_unit_pairings(va, vb)?);
    }
    duals.push((res.sing.q(), -res.sing.p()));
    Ok(ThetaData { theta_vertices: theta, dual_vertices: duals })
}

/// The integer vector `m` with `<m, va> = <m, vb> = 1`, when it exists.
fn solve_unit_pairings(va: Vec2, vb: Vec2) -> Result<Vec2, Error> {
    let det = va.0 * vb.1 - va.1 * vb.0;
    if det == 0 {
        return Err(Error::InvalidSequence(format!(
            "degenerate vertex pair {va:?}, {vb:?}"
        )));
    }
    // Cramer on m.va = 1, m.vb = 1.
    let mx = vb.1 - va.1;
    let my = va.0 - vb.0;
    if mx % det != 0 || my % det != 0 {
        return Err(Error::InvalidSequence(format!(
            "no integral support vector for {va:?}, {vb:?}"
        )));
    }
    Ok((mx / det, my / det))
}

/// Number of lattice points on the closed segment between two lattice points.
pub fn segment_lattice_points(m0: Vec2, m1: Vec2) -> i64 {
    let dx = m1.0 - m0.0;
    let dy = m1.1 - m0.1;
    if dx == 0 && dy == 0 {
        1
    } else {
        dx.gcd(&dy) + 1
    }
}
