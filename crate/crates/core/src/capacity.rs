//! Rate bounds for list decoding over the Z-channel, in bits.
//!
//! Logarithms are base 2. Probabilities below `1e-15` count as zero and
//! `0·log 0 = 0`.

use std::collections::HashMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::tau_of_weight;
use crate::combinatorics::{binomial_f64, Combinations};
use crate::error::{Error, Result};
use crate::words::Word;

const CLAMP: f64 = 1e-15;
const SLACK: f64 = 1e-12;

/// `x·log₂(x/y)` with `0·log 0 = 0`.
fn xlog_ratio(x: f64, y: f64) -> f64 {
    if x <= CLAMP {
        0.0
    } else {
        x * (x / y).log2()
    }
}

/// `−x·log₂ x` with `0·log 0 = 0`.
fn neg_xlog(x: f64) -> f64 {
    if x <= CLAMP {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy `H(x)`.
pub fn h2(x: f64) -> f64 {
    neg_xlog(x) + neg_xlog(1.0 - x)
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

/// The joint law of `(U, X)` with `X ~ Ber(w)`, `U ~ Ber(v)` and `P(U=1, X=1) = a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoveringDistribution {
    pub w: f64,
    pub v: f64,
    pub a: f64,
}

impl CoveringDistribution {
    pub fn new(w: f64, v: f64, a: f64) -> Result<Self> {
        check_unit("w", w)?;
        check_unit("v", v)?;
        if a < (w + v - 1.0).max(0.0) - SLACK || a > w.min(v) + SLACK {
            return Err(Error::invalid(format!(
                "a = {a} outside [max(0, w+v-1), min(w, v)] for w = {w}, v = {v}"
            )));
        }
        Ok(CoveringDistribution { w, v, a })
    }

    /// Cells `[(X=0,U=0), (X=0,U=1), (X=1,U=0), (X=1,U=1)]`.
    pub fn cells(&self) -> [f64; 4] {
        let (w, v, a) = (self.w, self.v, self.a);
        [1.0 - w - v + a, v - a, w - a, a]
    }
}

/// `I(w, v, a)`: mutual information of [`CoveringDistribution`].
pub fn mutual_info(w: f64, v: f64, a: f64) -> Result<f64> {
    let d = CoveringDistribution::new(w, v, a)?;
    let [c00, c01, c10, c11] = d.cells();
    Ok(xlog_ratio(c00, (1.0 - w) * (1.0 - v))
        + xlog_ratio(c01, (1.0 - w) * v)
        + xlog_ratio(c10, w * (1.0 - v))
        + xlog_ratio(c11, w * v))
}

/// `(1−v)·τ_L(p) + v·τ_L(q)` with `p = (w−a)/(1−v)` and `q = a/v`.
fn eb_constraint(list_size: usize, w: f64, v: f64, a: f64) -> f64 {
    let mut g = 0.0;
    if v < 1.0 {
        let p = ((w - a) / (1.0 - v)).clamp(0.0, 1.0);
        g += (1.0 - v) * tau_of_weight(list_size, p);
    }
    if v > 0.0 {
        let q = (a / v).clamp(0.0, 1.0);
        g += v * tau_of_weight(list_size, q);
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EbResult {
    pub value: f64,
    pub v: f64,
    pub a: f64,
}

/// Coarse grid size over `v` used by [`eb_upper_bound`].
pub const EB_GRID: usize = 200;

/// Elias–Bassalygo-type upper bound: the smallest `I(w, v, a)` over `(v, a)`
/// satisfying the list-decoding constraint.
///
/// For fixed `v` the constraint is concave in `a` and `I` is convex in `a`
/// with its zero at `a = wv`, so the best feasible `a` on each side of `wv`
/// is the nearest point of the constraint boundary; it is found by
/// bisection. Over `v` a grid of `grid` points is searched and then refined
/// twice, tenfold each time, around the incumbent.
pub fn eb_upper_bound(list_size: usize, w: f64, tau: f64, grid: usize) -> Result<EbResult> {
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall {
            min: 2,
            got: list_size,
        });
    }
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::invalid(format!("w = {w} must lie in (0, 1)")));
    }
    if tau < 0.0 {
        return Err(Error::invalid(format!("tau = {tau} must be nonnegative")));
    }
    if tau_of_weight(list_size, w) <= tau {
        // a = wv is feasible and I vanishes there
        return Ok(EbResult {
            value: 0.0,
            v: 1.0,
            a: w,
        });
    }
    let grid = grid.max(4);
    let eval = |v: f64| best_a_for_v(list_size, w, tau, v);
    let scan = |lo: f64, hi: f64| -> Option<EbResult> {
        (0..=grid)
            .into_par_iter()
            .filter_map(|i| eval(lo + (hi - lo) * i as f64 / grid as f64))
            .min_by(|x, y| x.value.total_cmp(&y.value))
    };
    // U = X (v = a = w) is feasible for every tau and gives H(w)
    let identity = EbResult {
        value: h2(w),
        v: w,
        a: w,
    };
    let mut best = match scan(0.0, 1.0) {
        Some(r) if r.value < identity.value => r,
        _ => identity,
    };
    let mut step = 1.0 / grid as f64;
    for _ in 0..2 {
        let (lo, hi) = ((best.v - step).max(0.0), (best.v + step).min(1.0));
        if let Some(r) = scan(lo, hi) {
            if r.value < best.value {
                best = r;
            }
        }
        step = (hi - lo) / grid as f64;
    }
    Ok(best)
}

fn best_a_for_v(list_size: usize, w: f64, tau: f64, v: f64) -> Option<EbResult> {
    let lo = (w + v - 1.0).max(0.0);
    let hi = w.min(v);
    let g = |a: f64| eb_constraint(list_size, w, v, a);
    let center = (w * v).clamp(lo, hi);
    let mut candidates = Vec::with_capacity(2);
    if g(center) <= tau {
        candidates.push(center);
    } else {
        for end in [lo, hi] {
            if g(end) <= tau {
                // g is above tau at the center and at most tau at `end`
                let (mut feasible, mut infeasible) = (end, center);
                for _ in 0..100 {
                    let mid = 0.5 * (feasible + infeasible);
                    if g(mid) <= tau {
                        feasible = mid;
                    } else {
                        infeasible = mid;
                    }
                    if (feasible - infeasible).abs() < 1e-15 {
                        break;
                    }
                }
                candidates.push(feasible);
            }
        }
    }
    candidates
        .into_iter()
        .filter_map(|a| {
            mutual_info(w, v, a.clamp(lo, hi))
                .ok()
                .map(|value| EbResult { value, v, a })
        })
        .min_by(|x, y| x.value.total_cmp(&y.value))
}

/// A distribution on `{0,1}^L`, indexed with `X_1` as the most significant bit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointDist {
    pub list_size: usize,
    pub probs: Vec<f64>,
    /// Mass of each Hamming-weight class, when the law is exchangeable.
    pub exchangeable: Option<Vec<f64>>,
}

impl JointDist {
    /// Spreads each class mass uniformly over the tuples of that weight.
    pub fn from_exchangeable(list_size: usize, classes: Vec<f64>) -> Result<Self> {
        if classes.len() != list_size + 1 {
            return Err(Error::invalid("need one mass per weight class 0..=L"));
        }
        let probs = (0..1usize << list_size)
            .map(|x| {
                let k = x.count_ones() as u64;
                classes[k as usize] / binomial_f64(list_size as u64, k)
            })
            .collect();
        Ok(JointDist {
            list_size,
            probs,
            exchangeable: Some(classes),
        })
    }

    /// `P(X_i = 1)`.
    pub fn marginal(&self, i: usize) -> f64 {
        let bit = 1usize << (self.list_size - 1 - i);
        self.probs
            .iter()
            .enumerate()
            .filter(|(x, _)| x & bit != 0)
            .map(|(_, p)| p)
            .sum()
    }

    pub fn all_ones(&self) -> f64 {
        *self.probs.last().expect("nonempty")
    }

    /// `D(P ‖ Ber(w)^{⊗L})` in bits.
    pub fn kl_to_product(&self, w: f64) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(x, &p)| {
                let k = x.count_ones() as i32;
                let q = w.powi(k) * (1.0 - w).powi(self.list_size as i32 - k);
                xlog_ratio(p, q)
            })
            .sum()
    }
}

/// Minimizer of the random-coding exponent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentSolution {
    /// `E(w, τ)` in bits.
    pub value: f64,
    pub dist: JointDist,
    /// Whether `P(1…1) ≥ w − τ` holds with equality at the optimum.
    pub constraint_active: bool,
    /// Multiplier of that constraint (in nats); nonnegative at a true optimum
    /// and zero when the constraint is slack.
    pub multiplier: f64,
}

/// `E(w, τ)`: least `D(P ‖ Ber(w)^{⊗L})` over laws with `Ber(w)` marginals
/// and `P(1…1) ≥ w − τ`.
///
/// The objective and constraints are invariant under permuting coordinates
/// and the objective is convex, so an exchangeable optimum exists: a law
/// on the `L + 1` weight classes. If the product law is feasible the value
/// is zero. Otherwise the all-ones class sits at `w − τ` and the remaining
/// classes are an exponential tilt `c·θ^k·C(L,k)w^k(1−w)^{L−k}` of the
/// binomial law, with `θ` found by bisection on the mean constraint.
pub fn rc_exponent(list_size: usize, w: f64, tau: f64) -> Result<ExponentSolution> {
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall {
            min: 2,
            got: list_size,
        });
    }
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::invalid(format!("w = {w} must lie in (0, 1)")));
    }
    if tau < 0.0 || tau > w * (1.0 + SLACK) {
        return Err(Error::invalid(format!("tau = {tau} must lie in [0, w = {w}]")));
    }
    let tau = tau.min(w);
    let l = list_size;
    let binom: Vec<f64> = (0..=l)
        .map(|k| binomial_f64(l as u64, k as u64) * w.powi(k as i32) * (1.0 - w).powi((l - k) as i32))
        .collect();
    let top = w - tau;
    if binom[l] >= top {
        let dist = JointDist::from_exchangeable(l, binom)?;
        return Ok(ExponentSolution {
            value: 0.0,
            dist,
            constraint_active: false,
            multiplier: 0.0,
        });
    }
    let rest = 1.0 - top;
    // mean weight the classes 0..L−1 must carry
    let target = l as f64 * (w - top) / rest;
    let mut classes = vec![0.0; l + 1];
    classes[l] = top;
    let multiplier;
    if target <= 0.0 {
        // tau = 0: everything else collapses onto the zero word
        classes[0] = rest;
        multiplier = f64::INFINITY;
    } else {
        let tilt = |log_theta: f64| -> (f64, Vec<f64>) {
            // weights θ^k·B_k for k < L, normalized in log space
            let logs: Vec<f64> = (0..l)
                .map(|k| k as f64 * log_theta + binom[k].ln())
                .collect();
            let mx = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let ws: Vec<f64> = logs.iter().map(|x| (x - mx).exp()).collect();
            let z: f64 = ws.iter().sum();
            let mean = ws.iter().enumerate().map(|(k, x)| k as f64 * x).sum::<f64>() / z;
            (mean, ws.iter().map(|x| x / z).collect())
        };
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        while tilt(lo).0 > target {
            lo *= 2.0;
        }
        while tilt(hi).0 < target {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if tilt(mid).0 < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        let log_theta = 0.5 * (lo + hi);
        let shape = tilt(log_theta).1;
        for k in 0..l {
            classes[k] = rest * shape[k];
        }
        // ln(Q_k/B_k) = ln c + k ln θ for k < L; compare the all-ones class
        let ln_c = (classes[0] / binom[0]).ln();
        multiplier = (top / binom[l]).ln() - (ln_c + l as f64 * log_theta);
    }
    let dist = JointDist::from_exchangeable(l, classes)?;
    let value = dist.kl_to_product(w);
    Ok(ExponentSolution {
        value,
        dist,
        constraint_active: true,
        multiplier,
    })
}

/// `E(w, τ)` for `L = 2` from the forced table `(1−w−τ, τ, τ, w−τ)`.
pub fn rc_exponent_pair(w: f64, tau: f64) -> Result<f64> {
    if !(w > 0.0 && w < 1.0) || tau < 0.0 || tau > w {
        return Err(Error::invalid("need 0 < w < 1 and 0 <= tau <= w"));
    }
    if w * w >= w - tau {
        return Ok(0.0);
    }
    let (q0, q1, q2) = ((1.0 - w) * (1.0 - w), w * (1.0 - w), w * w);
    Ok(xlog_ratio(1.0 - w - tau, q0) + 2.0 * xlog_ratio(tau, q1) + xlog_ratio(w - tau, q2))
}

/// Random-coding lower bound `E(w, τ)/(L−1)`.
pub fn rc_lower_bound(list_size: usize, w: f64, tau: f64) -> Result<f64> {
    if tau >= tau_of_weight(list_size, w) {
        // validates the arguments; the exponent is zero here
        rc_exponent(list_size, w, tau.min(w))?;
        return Ok(0.0);
    }
    Ok(rc_exponent(list_size, w, tau)?.value / (list_size - 1) as f64)
}

/// `C_LD(w, τ) = −(1−w+τ)log(1−w+τ) + τ log τ − w log w`.
pub fn cld(w: f64, tau: f64) -> Result<f64> {
    if !(0.0 <= tau && tau <= w && w <= 1.0) {
        return Err(Error::invalid(format!("need 0 <= tau <= w <= 1, got w = {w}, tau = {tau}")));
    }
    Ok(neg_xlog(1.0 - w + tau) - neg_xlog(tau) + neg_xlog(w))
}

/// `C_LD(τ) = max_w C_LD(w, τ)`, attained at `w = (1+τ)/2`.
pub fn cld_max(tau: f64) -> Result<(f64, f64)> {
    check_unit("tau", tau)?;
    let w = (1.0 + tau) / 2.0;
    Ok((w, cld(w, tau)?))
}

/// Capacity of the stochastic Z-channel with input weight `w`:
/// `H(w(1−τ)) − w·H(τ)`.
pub fn stochastic_capacity(w: f64, tau: f64) -> Result<f64> {
    check_unit("w", w)?;
    check_unit("tau", tau)?;
    Ok(h2(w * (1.0 - tau)) - w * h2(tau))
}

/// Capacity-achieving input weight `(1 − τ + τ^{−τ/(1−τ)})^{−1}`; the
/// limit `1/e` is returned at `τ = 1`.
pub fn stochastic_optimal_weight(tau: f64) -> Result<f64> {
    check_unit("tau", tau)?;
    if tau == 0.0 {
        return Ok(0.5);
    }
    if tau == 1.0 {
        return Ok(std::f64::consts::E.recip());
    }
    Ok(1.0 / (1.0 - tau + tau.powf(-tau / (1.0 - tau))))
}

/// `(w_max(τ), C(τ))`.
pub fn stochastic_capacity_max(tau: f64) -> Result<(f64, f64)> {
    let w = stochastic_optimal_weight(tau)?;
    Ok((w, stochastic_capacity(w, tau)?))
}

/// One row of a capacity curve. Quantities that are undefined at the point
/// are `None` and explained in `flags`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    #[serde(rename = "L")]
    pub list_size: usize,
    pub w: f64,
    pub tau: f64,
    pub eb_upper: Option<f64>,
    pub rc_lower: Option<f64>,
    pub cld: Option<f64>,
    pub stochastic: Option<f64>,
    pub flags: Vec<String>,
}

impl CurvePoint {
    pub fn is_flagged(&self) -> bool {
        !self.flags.is_empty()
    }
}

/// Evaluates every rate at one `(L, w, τ)`; never fails.
pub fn curve_point(list_size: usize, w: f64, tau: f64) -> CurvePoint {
    let mut flags = Vec::new();
    let mut keep = |name: &str, r: Result<f64>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            flags.push(format!("{name}: {e}"));
            None
        }
    };
    let eb_upper = keep("eb_upper", eb_upper_bound(list_size, w, tau, EB_GRID).map(|r| r.value));
    let rc_lower = keep("rc_lower", rc_lower_bound(list_size, w, tau));
    let cld = keep("cld", cld(w, tau));
    let stochastic = keep("stochastic", stochastic_capacity(w, tau));
    CurvePoint {
        list_size,
        w,
        tau,
        eb_upper,
        rc_lower,
        cld,
        stochastic,
        flags,
    }
}

/// CSV with columns `L, w, tau, eb_upper, rc_lower, cld, stochastic, flags`;
/// undefined values are empty.
pub fn write_curve_csv<W: std::io::Write>(out: W, points: &[CurvePoint]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::invalid(format!("csv: {e}"));
    wr.write_record(["L", "w", "tau", "eb_upper", "rc_lower", "cld", "stochastic", "flags"])
        .map_err(io)?;
    let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for p in points {
        wr.write_record([
            p.list_size.to_string(),
            p.w.to_string(),
            p.tau.to_string(),
            cell(p.eb_upper),
            cell(p.rc_lower),
            cell(p.cld),
            cell(p.stochastic),
            p.flags.join(";"),
        ])
        .map_err(io)?;
    }
    wr.flush().map_err(|e| Error::invalid(format!("csv: {e}")))?;
    Ok(())
}

/// Which side of `C_LD` a Monte-Carlo check probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CldMode {
    /// Rate `C_LD + δ`: a random bad center captures about `2^{nδ}` codewords.
    Ub,
    /// Rate `C_LD − δ`: no Z-ball holds `⌊1/δ⌋ + 1` codewords.
    Lb,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CldCheck {
    pub mode: CldMode,
    pub n: usize,
    pub code_size: usize,
    pub trials: usize,
    /// Ub: mean number of codewords captured by a random center. Lb: mean
    /// over trials of the largest list.
    pub mean_count: f64,
    /// `log₂(mean_count)/n`.
    pub rate: f64,
    /// Ub: exact expectation of the captured count. Lb: list-size limit `L − 1`.
    pub prediction: f64,
    /// Lb: trials where every Z-ball held at most `L − 1` codewords.
    pub list_decodable_trials: usize,
}

/// Largest length for [`cld_monte_carlo`].
pub const CLD_MAX_N: usize = 24;

fn integral(x: f64, what: &str) -> Result<usize> {
    let r = x.round();
    if (x - r).abs() > 1e-9 || r < 0.0 {
        return Err(Error::invalid(format!("{what} = {x} is not a nonnegative integer")));
    }
    Ok(r as usize)
}

fn random_weight_word(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Word {
    Word::from_support(n, index::sample(rng, n, k)).expect("indices in range")
}

/// Monte-Carlo probes of `C_LD(w, τ)` on random weight-`nw` codes.
pub fn cld_monte_carlo(
    w: f64,
    tau: f64,
    n: usize,
    delta: f64,
    trials: usize,
    mode: CldMode,
    seed: u64,
) -> Result<CldCheck> {
    if n > CLD_MAX_N {
        return Err(Error::GuardExceeded {
            what: "length for Monte-Carlo capacity checks",
            actual: n.to_string(),
            limit: CLD_MAX_N.to_string(),
        });
    }
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let c = cld(w, tau)?;
    let nw = integral(n as f64 * w, "nw")?;
    let nt = integral(n as f64 * tau, "n*tau")?;
    match mode {
        CldMode::Ub => {
            let size = (n as f64 * (c + delta)).exp2().ceil() as usize;
            let counts: Vec<usize> = (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(trial as u64);
                    let code: Vec<Word> =
                        (0..size).map(|_| random_weight_word(&mut rng, n, nw)).collect();
                    let center = random_weight_word(&mut rng, n, nw - nt);
                    code.iter()
                        .filter(|x| center.is_subset_of(x).expect("equal lengths"))
                        .count()
                })
                .collect();
            let mean = counts.iter().sum::<usize>() as f64 / trials as f64;
            let expected = size as f64 * binomial_f64((n - nw + nt) as u64, nt as u64)
                / binomial_f64(n as u64, nw as u64);
            Ok(CldCheck {
                mode,
                n,
                code_size: size,
                trials,
                mean_count: mean,
                rate: mean.log2() / n as f64,
                prediction: expected,
                list_decodable_trials: 0,
            })
        }
        CldMode::Lb => {
            let rate = (c - delta).max(0.0);
            let size = ((n as f64 * rate).exp2().floor() as usize).max(1);
            let limit = (1.0 / delta).floor() as usize;
            let lists: Vec<usize> = (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(trial as u64);
                    let code: Vec<Word> = if rate == 0.0 {
                        vec![random_weight_word(&mut rng, n, nw)]
                    } else {
                        (0..size).map(|_| random_weight_word(&mut rng, n, nw)).collect()
                    };
                    largest_list(&code, nw, nt)
                })
                .collect();
            let mean = lists.iter().sum::<usize>() as f64 / trials as f64;
            Ok(CldCheck {
                mode,
                n,
                code_size: size,
                trials,
                mean_count: mean,
                rate: mean.log2() / n as f64,
                prediction: limit as f64,
                list_decodable_trials: lists.iter().filter(|&&s| s <= limit).count(),
            })
        }
    }
}

/// Most codewords of weight `nw` inside one Z-ball of radius `t`.
///
/// A ball holds a set of weight-`nw` words exactly when they share
/// `nw − t` ones, so it suffices to count codewords above each
/// `(nw − t)`-subset of a codeword support. Repeated codewords count once.
fn largest_list(code: &[Word], nw: usize, t: usize) -> usize {
    let mut distinct: Vec<&Word> = code.iter().collect();
    distinct.sort();
    distinct.dedup();
    if t >= nw {
        return distinct.len();
    }
    let core = nw - t;
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut best = 0;
    for x in distinct {
        let support: Vec<usize> = x.support().collect();
        Combinations::new(support.len(), core).for_each_while(|pick| {
            let key: Vec<usize> = pick.iter().map(|&i| support[i]).collect();
            let c = counts.entry(key).or_insert(0);
            *c += 1;
            best = best.max(*c);
            true
        });
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutual_info_examples() {
        assert!(mutual_info(0.3, 0.6, 0.18).unwrap().abs() < 1e-12);
        assert!((mutual_info(0.5, 0.5, 0.5).unwrap() - 1.0).abs() < 1e-12);
        let v = mutual_info(0.5, 0.25, 0.25).unwrap();
        assert!((v - (h2(0.25) - 0.5 * h2(0.5))).abs() < 1e-12);
        assert!((v - 0.311278).abs() < 1e-6);
        assert!(mutual_info(0.5, 0.25, 0.3).is_err());
    }

    #[test]
    fn mutual_info_chain_rule() {
        for i in 1..20 {
            for j in 1..20 {
                let (w, v) = (i as f64 / 20.0, j as f64 / 20.0);
                let (lo, hi) = ((w + v - 1.0).max(0.0), w.min(v));
                for k in 0..=10 {
                    let a = lo + (hi - lo) * k as f64 / 10.0;
                    let chain = h2(w)
                        - (1.0 - v) * h2(((w - a) / (1.0 - v)).clamp(0.0, 1.0))
                        - v * h2((a / v).clamp(0.0, 1.0));
                    assert!((mutual_info(w, v, a).unwrap() - chain).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn eb_examples() {
        let above = eb_upper_bound(2, 0.5, 0.25, EB_GRID).unwrap();
        assert_eq!(above.value, 0.0);
        let r = eb_upper_bound(2, 0.5, 0.1, EB_GRID).unwrap();
        assert!(r.value > 0.0 && r.value < 1.0);
        assert!(r.value >= rc_lower_bound(2, 0.5, 0.1).unwrap());
        assert!(eb_constraint(2, 0.5, r.v, r.a) <= 0.1 + 1e-12);
        let small = eb_upper_bound(2, 0.5, 1e-4, EB_GRID).unwrap();
        assert!(small.value <= h2(0.5) + 1e-12);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(rc_exponent(2, 0.5, 0.25).unwrap().value, 0.0);
        let s = rc_exponent(2, 0.5, 0.2).unwrap();
        let closed = 2.0 * (0.3 * 1.2f64.log2() + 0.2 * 0.8f64.log2());
        assert!((s.value - closed).abs() < 1e-9);
        assert!((s.value - 0.0290).abs() < 1e-4);
        assert!((rc_exponent_pair(0.5, 0.2).unwrap() - closed).abs() < 1e-12);
        assert!(s.constraint_active && s.multiplier >= 0.0);
        let d = &s.dist;
        for i in 0..2 {
            assert!((d.marginal(i) - 0.5).abs() < 1e-12);
        }
        assert!((d.all_ones() - 0.3).abs() < 1e-12);
        assert!(rc_exponent(2, 0.5, 0.6).is_err());

        // tau = 0 leaves only the all-zero and all-one tuples
        for l in 2..5 {
            let e0 = rc_exponent(l, 0.3, 0.0).unwrap().value;
            assert!((e0 - (l - 1) as f64 * h2(0.3)).abs() < 1e-9);
        }
    }

    #[test]
    fn exponent_vanishes_approaching_plotkin_point() {
        let w = 3f64.powf(-0.5);
        let t3 = tau_of_weight(3, w);
        let mut prev = f64::INFINITY;
        for k in 1..=10 {
            let tau = t3 * (1.0 - 0.5f64.powi(k));
            let e = rc_exponent(3, w, tau).unwrap().value;
            assert!(e > 0.0 && e < prev);
            prev = e;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn pair_exponent_matches_solver() {
        for i in 1..20 {
            let w = i as f64 / 20.0;
            for j in 0..=20 {
                let tau = w * j as f64 / 20.0;
                let a = rc_exponent(2, w, tau).unwrap().value;
                let b = rc_exponent_pair(w, tau).unwrap();
                assert!((a - b).abs() < 1e-8, "w={w} tau={tau}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn cld_examples() {
        for w in [0.1, 0.37, 0.5, 0.9] {
            assert!((cld(w, 0.0).unwrap() - h2(w)).abs() < 1e-15);
            assert_eq!(cld(w, w).unwrap(), 0.0);
        }
        let v = cld(0.6, 0.2).unwrap();
        let direct = -0.6 * 0.6f64.log2() + 0.2 * 0.2f64.log2() - 0.6 * 0.6f64.log2();
        assert!((v - direct).abs() < 1e-15);
        assert!((v - 0.41997).abs() < 1e-5);
        assert!(cld(0.3, 0.4).is_err());
        let (w, c) = cld_max(0.2).unwrap();
        assert_eq!(w, 0.6);
        for k in 0..=80 {
            let other = 0.2 + 0.8 * k as f64 / 80.0;
            assert!(cld(other, 0.2).unwrap() <= c + 1e-12);
        }
    }

    #[test]
    fn stochastic_examples() {
        for w in [0.2, 0.5, 0.8] {
            assert!((stochastic_capacity(w, 0.0).unwrap() - h2(w)).abs() < 1e-15);
        }
        assert!((stochastic_optimal_weight(0.5).unwrap() - 0.4).abs() < 1e-15);
        let c = stochastic_capacity(0.4, 0.5).unwrap();
        assert!((c - (h2(0.2) - 0.4)).abs() < 1e-12);
        assert!((c - 0.3219).abs() < 1e-4);
        assert!((stochastic_capacity(0.5, 0.5).unwrap() - (h2(0.25) - 0.5)).abs() < 1e-12);
        let (w, best) = stochastic_capacity_max(0.3).unwrap();
        for k in 1..100 {
            assert!(stochastic_capacity(k as f64 / 100.0, 0.3).unwrap() <= best + 1e-12);
        }
        assert!(w > 0.0 && w < 0.5);
    }

    #[test]
    fn curve_rows_flag_instead_of_failing() {
        let ok = curve_point(2, 0.5, 0.1);
        assert!(!ok.is_flagged());
        assert!(ok.eb_upper.unwrap() >= ok.rc_lower.unwrap());
        let bad = curve_point(2, 0.3, 0.5);
        assert!(bad.cld.is_none() && bad.is_flagged());
        assert_eq!(bad.rc_lower, Some(0.0));
        let mut out = Vec::new();
        write_curve_csv(&mut out, &[]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "L,w,tau,eb_upper,rc_lower,cld,stochastic,flags\n");
    }

    #[test]
    fn monte_carlo_degenerate_cases() {
        // radius zero: a weight-nw center only captures itself
        let r = cld_monte_carlo(0.5, 0.0, 12, 0.2, 20, CldMode::Ub, 3).unwrap();
        assert!((r.prediction - r.code_size as f64 / 924.0).abs() < 1e-12);
        let lb = cld_monte_carlo(0.5, 0.5, 12, 0.5, 5, CldMode::Lb, 3).unwrap();
        assert_eq!(lb.code_size, 1);
        assert_eq!(lb.list_decodable_trials, 5);
        assert!(cld_monte_carlo(0.5, 0.25, 28, 0.1, 1, CldMode::Ub, 0).is_err());
    }

    #[test]
    fn largest_list_counts_shared_cores() {
        let code: Vec<Word> = ["1100", "1010", "1001", "0110"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        // radius 1 around 1000 holds the three words through position 0
        assert_eq!(largest_list(&code, 2, 1), 3);
        assert_eq!(largest_list(&code, 2, 0), 1);
        assert_eq!(largest_list(&code, 2, 2), 4);
    }
}
