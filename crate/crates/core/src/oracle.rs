//! Brute-force jet counting over small finite fields.
//!
//! Enumerates truncated power-series solutions of binomial equation systems
//! coefficient layer by coefficient layer, pruning as soon as the lowest
//! undetermined equation coefficient fails. Counts are compared against the
//! specialization of the closed-form series at L = q, which makes this module
//! the independent referee for every formula in the crate.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;
use crate::gf::Gf;
use crate::lattice::HJSequence;
use crate::zeta::ZetaFunction;

/// A difference of two monomials, `lhs - rhs = 0`; each side is a list of
/// `(variable, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialEq {
    pub lhs: Vec<(usize, u32)>,
    pub rhs: Vec<(usize, u32)>,
}

impl MonomialEq {
    fn min_degree(&self) -> u32 {
        let deg = |side: &[(usize, u32)]| side.iter().map(|&(_, e)| e).sum::<u32>();
        deg(&self.lhs).min(deg(&self.rhs))
    }
}

/// The full defining binomial system of the surface in `t + 2` variables,
/// from the expansion of `q/p`: for every pair `1 <= i <= j <= t`,
///
/// `x_{i-1} x_{j+1} = x_i^{c_i - 1} x_{i+1}^{c_{i+1} - 2} ... x_{j-1}^{c_{j-1} - 2} x_j^{c_j - 1}`
///
/// (with the single exponent `c_i` when `i = j`). The adjacent equations
/// (`i = j`) alone cut out the surface only up to extra components once the
/// codimension exceeds one, so jet counts need the whole quasi-determinantal
/// family.
pub fn surface_equations(c_seq: &HJSequence) -> (Vec<MonomialEq>, usize) {
    let c = c_seq.entries();
    let t = c.len();
    let mut eqs = Vec::new();
    for i in 1..=t {
        for j in i..=t {
            let mut rhs = Vec::new();
            for k in i..=j {
                let drop = if i == j { 0 } else if k == i || k == j { 1 } else { 2 };
                let e = c[k - 1] - drop;
                if e > 0 {
                    rhs.push((k, e as u32));
                }
            }
            eqs.push(MonomialEq { lhs: vec![(i - 1, 1), (j + 1, 1)], rhs });
        }
    }
    (eqs, t + 2)
}

/// One finite-field jet-scheme enumeration job.
#[derive(Debug, Clone)]
pub struct JetCountTask {
    pub equations: Vec<MonomialEq>,
    pub num_vars: usize,
    /// Truncation order n: series of degree <= n, equations modulo t^{n+1}.
    pub order: usize,
    pub field: u64,
    /// Require constant terms zero.
    pub at_origin: bool,
}

const SPACE_LIMIT: f64 = 1e9;

fn ensure_size(q: u64, vars: usize, layers: usize) -> Result<(), Error> {
    let estimate = (q as f64).powi((vars * layers) as i32);
    if estimate > SPACE_LIMIT {
        return Err(Error::TooLarge { estimate, limit: SPACE_LIMIT });
    }
    Ok(())
}

/// Coefficient of `t^k` in the monomial evaluated on the truncated series.
fn monomial_coeff(gf: &Gf, arcs: &[Vec<u8>], side: &[(usize, u32)], k: usize) -> u8 {
    let mut buf = vec![0u8; k + 1];
    buf[0] = 1;
    let mut tmp = vec![0u8; k + 1];
    for &(v, e) in side {
        for _ in 0..e {
            tmp.iter_mut().for_each(|x| *x = 0);
            for (i, &bi) in buf.iter().enumerate() {
                if bi == 0 {
                    continue;
                }
                for (j, &aj) in arcs[v].iter().take(k + 1 - i).enumerate() {
                    if aj != 0 {
                        tmp[i + j] = gf.add(tmp[i + j], gf.mul(bi, aj));
                    }
                }
            }
            std::mem::swap(&mut buf, &mut tmp);
        }
    }
    buf[k]
}

fn eq_holds_at(gf: &Gf, arcs: &[Vec<u8>], eq: &MonomialEq, k: usize) -> bool {
    monomial_coeff(gf, arcs, &eq.lhs, k) == monomial_coeff(gf, arcs, &eq.rhs, k)
}

/// Enumeration plan: which `(equation, k)` checks run after each layer, and
/// how many trailing layers are unconstrained.
struct Plan<'a> {
    gf: &'a Gf,
    eqs: &'a [MonomialEq],
    vars: usize,
    order: usize,
    start: usize,
    /// Checks indexed by layer; `checks[j - start]` runs after layer j.
    checks: Vec<Vec<(usize, usize)>>,
    /// Last enumerated layer (inclusive); `start - 1` when nothing needs
    /// checking. Layers above it are free.
    last: i64,
}

fn build_plan<'a>(task: &'a JetCountTask, gf: &'a Gf) -> Plan<'a> {
    let n = task.order;
    let start = usize::from(task.at_origin);
    // Coefficient t^k of an equation whose sparsest monomial has degree m is
    // determined once layers up to k - (m - 1) are set (origin case), or k
    // in general; it vanishes identically below degree m at the origin.
    let mut triggers: Vec<(usize, usize, usize)> = Vec::new();
    for (e, eq) in task.equations.iter().enumerate() {
        let m = eq.min_degree() as usize;
        for k in 0..=n {
            let layer = if task.at_origin {
                if k < m {
                    continue;
                }
                (k + 1 - m).max(start)
            } else {
                k
            };
            triggers.push((layer, e, k));
        }
    }
    let last = triggers
        .iter()
        .map(|&(layer, _, _)| layer as i64)
        .max()
        .unwrap_or(start as i64 - 1);
    let span = (last - start as i64 + 1).max(0) as usize;
    let mut checks = vec![Vec::new(); span];
    for (layer, e, k) in triggers {
        checks[layer - start].push((e, k));
    }
    Plan { gf, eqs: &task.equations, vars: task.num_vars, order: n, start, checks, last }
}

impl Plan<'_> {
    fn free_layers(&self) -> usize {
        if self.order < self.start {
            0
        } else {
            (self.order as i64 - self.last) as usize
        }
    }

    fn layer_ok(&self, arcs: &[Vec<u8>], layer: usize) -> bool {
        self.checks[layer - self.start]
            .iter()
            .all(|&(e, k)| eq_holds_at(self.gf, arcs, &self.eqs[e], k))
    }

    fn count_from(&self, arcs: &mut [Vec<u8>], layer: usize) -> u64 {
        if layer as i64 > self.last {
            return 1;
        }
        let q = self.gf.q() as u8;
        let mut total = 0u64;
        let mut digits = vec![0u8; self.vars];
        loop {
            for (v, &d) in digits.iter().enumerate() {
                arcs[v][layer] = d;
            }
            if self.layer_ok(arcs, layer) {
                total += self.count_from(arcs, layer + 1);
            }
            // Odometer step.
            let mut i = 0;
            loop {
                if i == self.vars {
                    return total;
                }
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

fn fresh_arcs(vars: usize, order: usize) -> Vec<Vec<u8>> {
    vec![vec![0u8; order + 1]; vars]
}

/// Sequential jet count.
pub fn count_jets_seq(task: &JetCountTask) -> Result<u64, Error> {
    let gf = Gf::new(task.field)?;
    ensure_size(task.field, task.num_vars, task.order + usize::from(!task.at_origin))?;
    let plan = build_plan(task, &gf);
    let mut arcs = fresh_arcs(task.num_vars, task.order);
    let base = if task.order >= plan.start {
        plan.count_from(&mut arcs, plan.start)
    } else {
        1
    };
    Ok(base * (gf.q() as u64).pow((task.num_vars * plan.free_layers()) as u32))
}

/// Parallel jet count: the first enumerated layer is split across workers.
#[cfg(feature = "parallel")]
pub fn count_jets_par(task: &JetCountTask) -> Result<u64, Error> {
    let gf = Gf::new(task.field)?;
    ensure_size(task.field, task.num_vars, task.order + usize::from(!task.at_origin))?;
    let plan = build_plan(task, &gf);
    if task.order < plan.start || (plan.start as i64) > plan.last {
        return count_jets_seq(task);
    }
    let q = gf.q() as u64;
    let branches = q.pow(task.num_vars as u32);
    let base: u64 = (0..branches)
        .into_par_iter()
        .map(|mut idx| {
            let mut arcs = fresh_arcs(task.num_vars, task.order);
            for v in 0..task.num_vars {
                arcs[v][plan.start] = (idx % q) as u8;
                idx /= q;
            }
            if plan.layer_ok(&arcs, plan.start) {
                plan.count_from(&mut arcs, plan.start + 1)
            } else {
                0
            }
        })
        .sum();
    Ok(base * q.pow((task.num_vars * plan.free_layers()) as u32))
}

/// Jet count; parallel when the crate is built with the `parallel` feature.
pub fn count_jets(task: &JetCountTask) -> Result<u64, Error> {
    #[cfg(feature = "parallel")]
    {
        count_jets_par(task)
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_jets_seq(task)
    }
}

/// Truncation key of the first `n` coefficient layers at the origin.
fn truncation_key(arcs: &[Vec<u8>], n: usize) -> Vec<u8> {
    let mut key = Vec::with_capacity(arcs.len() * n);
    for a in arcs {
        key.extend_from_slice(&a[1..=n]);
    }
    key
}

/// Cardinality of the image of the truncation map from origin m-jets to
/// n-jets over `F_q`.
pub fn count_image_jets(
    equations: &[MonomialEq],
    num_vars: usize,
    n: usize,
    m: usize,
    field: u64,
) -> Result<u64, Error> {
    assert!(n <= m, "truncation target above source order");
    let task = JetCountTask {
        equations: equations.to_vec(),
        num_vars,
        order: m,
        field,
        at_origin: true,
    };
    let gf = Gf::new(field)?;
    let plan = build_plan(&task, &gf);
    // Layers past both the truncation window and the last check are free and
    // cannot change the image.
    let enum_last = plan.last.max(n as i64).min(m as i64);
    if m == 0 || enum_last <= 0 {
        return Ok(1);
    }
    let enum_last = enum_last as usize;
    // Memory is bounded by the target key space, not the source: the source
    // traversal backtracks layer by layer and only visits consistent
    // prefixes, so gate on the stored image keys.
    ensure_size(field, num_vars, n)?;
    let q = gf.q() as u64;

    #[cfg(feature = "parallel")]
    let set: HashSet<Vec<u8>> = {
        let branches = q.pow(num_vars as u32);
        (0..branches)
            .into_par_iter()
            .map(|mut idx| {
                let mut arcs = fresh_arcs(num_vars, m);
                for v in 0..num_vars {
                    arcs[v][1] = (idx % q) as u8;
                    idx /= q;
                }
                let mut out = HashSet::new();
                if plan.last < 1 || plan.layer_ok(&arcs, 1) {
                    image_dfs(&plan, &mut arcs, 2, enum_last, n, &mut out);
                }
                out
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    };
    #[cfg(not(feature = "parallel"))]
    let set: HashSet<Vec<u8>> = {
        let _ = q;
        let mut out = HashSet::new();
        let mut arcs = fresh_arcs(num_vars, m);
        image_dfs(&plan, &mut arcs, 1, enum_last, n, &mut out);
        out
    };
    Ok(set.len() as u64)
}

/// Returns whether the current truncation key is known to be in the image
/// (meaningful once `layer > n`), so siblings of a witnessed completion are
/// skipped instead of re-explored.
fn image_dfs(
    plan: &Plan<'_>,
    arcs: &mut [Vec<u8>],
    layer: usize,
    enum_last: usize,
    n: usize,
    out: &mut HashSet<Vec<u8>>,
) -> bool {
    if layer > enum_last {
        out.insert(truncation_key(arcs, n));
        return true;
    }
    if layer == n + 1 && out.contains(&truncation_key(arcs, n)) {
        return true;
    }
    let q = plan.gf.q() as u8;
    let vars = plan.vars;
    let mut digits = vec![0u8; vars];
    loop {
        for (v, &d) in digits.iter().enumerate() {
            arcs[v][layer] = d;
        }
        if (layer as i64 > plan.last || plan.layer_ok(arcs, layer))
            && image_dfs(plan, arcs, layer + 1, enum_last, n, out)
            && layer > n
        {
            return true;
        }
        let mut i = 0;
        loop {
            if i == vars {
                return false;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Image counts for increasing source order until two consecutive values
/// agree; returns the stable count and the witness order.
pub fn stabilized_image_count(
    equations: &[MonomialEq],
    num_vars: usize,
    n: usize,
    field: u64,
    m_max: usize,
) -> Result<(u64, usize), Error> {
    let mut prev: Option<u64> = None;
    for m in n..=m_max {
        let count = count_image_jets(equations, num_vars, n, m, field)?;
        if prev == Some(count) {
            return Ok((count, m));
        }
        prev = Some(count);
    }
    Err(Error::Truncation(m_max))
}

/// One row of a series-versus-count comparison.
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub order: usize,
    pub predicted: BigInt,
    pub counted: u64,
    pub pass: bool,
}

/// Compares the Poincare series specialized at L = q against brute-force jet
/// counts for all orders up to `n_max`.
pub fn compare_with_series(
    zeta: &ZetaFunction,
    c_seq: &HJSequence,
    field: u64,
    n_max: usize,
) -> Result<Vec<ComparisonRow>, Error> {
    let coeffs = zeta.series_coefficients(n_max)?;
    let (equations, num_vars) = surface_equations(c_seq);
    let at = BigRational::from(BigInt::from(field as i64));
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let value = coeffs[n].eval(&at)?;
        assert!(value.is_integer(), "series value must be integral at L = q");
        let predicted = value.to_integer();
        let counted = count_jets(&JetCountTask {
            equations: equations.clone(),
            num_vars,
            order: n,
            field,
            at_origin: true,
        })?;
        let pass = predicted == BigInt::from(counted);
        rows.push(ComparisonRow { order: n, predicted, counted, pass });
    }
    Ok(rows)
}
