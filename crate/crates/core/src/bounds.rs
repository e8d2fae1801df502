//! Upper bounds on code sizes above the Plotkin point.
//!
//! Every bound returns a [`BoundReport`]. A bound whose hypotheses fail
//! carries no value; a bound whose formula degenerates (zero denominator,
//! ratio at most one) reports an infinite value with a flag, so sweeps over
//! parameter grids never abort.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A bound value: finite or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum BoundValue {
    Finite(f64),
    Infinite,
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Finite(v) => *v,
            BoundValue::Infinite => f64::INFINITY,
        }
    }

    /// True when `size` codewords are allowed by this value.
    pub fn admits(&self, size: usize) -> bool {
        size as f64 <= self.as_f64()
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Finite(v) => write!(f, "{v}"),
            BoundValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Precondition {
    pub name: String,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub inputs: Vec<(String, f64)>,
    /// Present only when every precondition holds.
    pub value: Option<BoundValue>,
    pub preconditions: Vec<Precondition>,
    pub flags: Vec<String>,
    /// Secondary quantities, such as first-order asymptotic forms.
    pub extras: Vec<(String, f64)>,
}

impl BoundReport {
    fn new(name: &'static str, inputs: &[(&str, f64)]) -> Self {
        BoundReport {
            name,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value: None,
            preconditions: Vec::new(),
            flags: Vec::new(),
            extras: Vec::new(),
        }
    }

    fn require(&mut self, name: &str, met: bool) -> bool {
        self.preconditions.push(Precondition {
            name: name.to_string(),
            met,
        });
        met
    }

    fn flag(&mut self, flag: &str) {
        self.flags.push(flag.to_string());
    }

    fn set(&mut self, value: BoundValue) {
        if self.preconditions_met() {
            self.value = Some(value);
        }
    }

    pub fn preconditions_met(&self) -> bool {
        self.preconditions.iter().all(|p| p.met)
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn extra(&self, key: &str) -> Option<f64> {
        self.extras.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    /// True when the report is usable as an upper bound on code size.
    pub fn is_applicable(&self) -> bool {
        self.value.is_some()
    }

    pub fn inputs_text(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn preconditions_text(&self) -> String {
        self.preconditions
            .iter()
            .map(|p| format!("{}={}", p.name, if p.met { "ok" } else { "failed" }))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Rounds a real bound down to an integer size limit, nudged up so that
/// floating-point error never cuts below the true value.
fn floor_safe(v: f64) -> f64 {
    (v * (1.0 + 1e-12) + 1e-9).floor()
}

/// The list-decoding Plotkin point for list size `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotkinPoint {
    pub list_size: usize,
    /// `L^{-1/(L-1)}`, the weight maximizing `w − w^L`.
    pub w_max: f64,
    /// `w_max − w_max^L`.
    pub tau: f64,
}

pub fn plotkin_point(list_size: usize) -> Result<PlotkinPoint> {
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall {
            min: 2,
            got: list_size,
        });
    }
    let l = list_size as f64;
    let w_max = l.powf(-1.0 / (l - 1.0));
    Ok(PlotkinPoint {
        list_size,
        w_max,
        tau: w_max - w_max.powi(list_size as i32),
    })
}

/// `τ_L(w) = w − w^L`.
pub fn tau_of_weight(list_size: usize, w: f64) -> f64 {
    w - w.powi(list_size as i32)
}

/// `2⌊(2t+2)/(4t+3−n)⌋` for codes correcting `t > n/4` symmetric errors.
///
/// When `n ≤ 2t` the formula gives 0, yet a single codeword corrects any
/// number of errors; such reports carry the flag `degenerate`.
pub fn plotkin_classic(n: u64, t: u64) -> BoundReport {
    let mut r = BoundReport::new("plotkin_classic", &[("n", n as f64), ("t", t as f64)]);
    if r.require("t > n/4", 4 * t > n) {
        let v = 2 * ((2 * t + 2) / (4 * t + 3 - n));
        if n <= 2 * t {
            r.flag("degenerate");
        }
        r.set(BoundValue::Finite(v as f64));
    }
    r
}

/// `⌊tn/(w² − (w−t)n)⌋` for weight-`w` codes correcting `t` symmetric errors.
pub fn bassalygo_cw(n: u64, t: u64, w: u64) -> BoundReport {
    let mut r = BoundReport::new(
        "bassalygo_cw",
        &[("n", n as f64), ("t", t as f64), ("w", w as f64)],
    );
    let (ni, ti, wi) = (n as i128, t as i128, w as i128);
    r.require("t + 1 <= w", t < w);
    // w ≤ (n − √(n² − 4tn))/2, squared out to stay exact
    let disc = ni * ni - 4 * ti * ni;
    let upper = disc >= 0 && ni - 2 * wi >= 0 && (ni - 2 * wi).pow(2) >= disc;
    r.require("w <= (n - sqrt(n^2 - 4tn))/2", upper);
    if r.preconditions_met() {
        let den = wi * wi - (wi - ti) * ni;
        if den <= 0 {
            r.flag("singular");
            r.set(BoundValue::Infinite);
        } else {
            r.set(BoundValue::Finite(((ti * ni) / den) as f64));
        }
    }
    r
}

/// The closed-form size bound for codes correcting a fraction `1/4 + eps`
/// of asymmetric errors.
pub fn unique_above_plotkin(n: u64, eps: f64) -> BoundReport {
    let mut r = BoundReport::new("unique_above_plotkin", &[("n", n as f64), ("eps", eps)]);
    let nf = n as f64;
    r.require("n > 36", n > 36);
    r.require("0 < eps < 1/12 - 3/n", eps > 0.0 && eps < 1.0 / 12.0 - 3.0 / nf);
    if r.preconditions_met() {
        let s = eps.sqrt();
        let num = 1.0 + 7.0 / nf + 2.0 * s + 4.0 * eps + 16.0 * s / nf;
        r.set(BoundValue::Finite(num / eps.powf(1.5) + 10.0));
    }
    r
}

/// `ln(M^L / (M(M−1)···(M−L+1)))`, infinite for `M < L`.
fn log_falling_ratio(m: u64, list_size: usize) -> f64 {
    if (m as usize) < list_size {
        return f64::INFINITY;
    }
    let mf = m as f64;
    (1..list_size).map(|i| -(-(i as f64) / mf).ln_1p()).sum()
}

/// Largest `M` with `M^L/(M···(M−L+1)) ≥ ratio`, or `None` when every `M`
/// qualifies (`ratio ≤ 1`). A relative slack of `1e-12` errs towards larger `M`.
pub fn falling_factorial_limit(list_size: usize, ratio: f64) -> Option<u64> {
    if ratio.is_nan() || ratio <= 1.0 {
        return None;
    }
    let target = ratio.ln() * (1.0 - 1e-12);
    let ok = |m: u64| log_falling_ratio(m, list_size) >= target;
    let mut lo = (list_size as u64).saturating_sub(1).max(1);
    let mut hi = lo.max(1) * 2;
    while ok(hi) {
        lo = hi;
        if hi > u64::MAX / 4 {
            return Some(u64::MAX);
        }
        hi *= 2;
    }
    // ok(lo), !ok(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

fn set_from_ratio(r: &mut BoundReport, list_size: usize, ratio: f64) {
    r.extras.push(("ratio".into(), ratio));
    match falling_factorial_limit(list_size, ratio) {
        Some(m) => r.set(BoundValue::Finite(m as f64)),
        None => {
            r.flag("vacuous");
            r.set(BoundValue::Infinite);
        }
    }
}

/// Size limit for weight-`w` codes with list-decoding radius `w − w^L + eps`:
/// the exact double-counting inequality, with `C_{L,w}/eps` reported as the
/// extra `asymptotic`.
pub fn cw_list_upper(list_size: usize, w: f64, eps: f64) -> BoundReport {
    let mut r = BoundReport::new(
        "cw_list_upper",
        &[("L", list_size as f64), ("w", w), ("eps", eps)],
    );
    r.require("L >= 2", list_size >= 2);
    r.require("0 < w < 1", w > 0.0 && w < 1.0);
    r.require("eps > 0", eps > 0.0);
    if !r.preconditions_met() {
        return r;
    }
    let tw = tau_of_weight(list_size, w);
    let tau = tw + eps;
    let pairs = (list_size * (list_size - 1) / 2) as f64;
    r.extras.push(("asymptotic".into(), tw * pairs / eps));
    if tau >= w {
        // every L-list of weight-w words has radius at most nw
        r.flag("radius-at-least-weight");
        r.set(BoundValue::Finite((list_size - 1) as f64));
        return r;
    }
    set_from_ratio(&mut r, list_size, tau / tw);
    r
}

/// Size limit for codes whose weights lie in `[nw(1−δ), nw(1+δ)]` with
/// list-decoding radius `tau`.
pub fn apx_cw_ratio_bound(list_size: usize, w: f64, delta: f64, tau: f64) -> BoundReport {
    let mut r = BoundReport::new(
        "apx_cw_ratio_bound",
        &[("L", list_size as f64), ("w", w), ("delta", delta), ("tau", tau)],
    );
    r.require("L >= 2", list_size >= 2);
    r.require("0 < w <= 1", w > 0.0 && w <= 1.0);
    r.require("0 <= delta < tau/(2w)", delta >= 0.0 && delta < tau / (2.0 * w));
    if !r.preconditions_met() {
        return r;
    }
    let ratio = (tau - 2.0 * w * delta)
        / (w * (1.0 + delta) - (w * (1.0 - delta)).powi(list_size as i32));
    set_from_ratio(&mut r, list_size, ratio);
    r
}

/// `(L−1)/(1 − inner^{1/(L−1)})` for codes with weights in `[nw1, nw2]`,
/// where `inner = (w2/s − (w2/s)^L)/(τ/s)` and `s = 1 + w2 − w1`.
pub fn augmented_weight_band_bound(list_size: usize, w1: f64, w2: f64, tau: f64) -> BoundReport {
    let mut r = BoundReport::new(
        "augmented_weight_band_bound",
        &[("L", list_size as f64), ("w1", w1), ("w2", w2), ("tau", tau)],
    );
    if !r.require("L >= 2", list_size >= 2) {
        return r;
    }
    let tau_l = plotkin_point(list_size).expect("L >= 2").tau;
    r.require("0 <= w1 <= w2 <= 1", 0.0 <= w1 && w1 <= w2 && w2 <= 1.0);
    r.require("tau > tau_L", tau > tau_l);
    if !r.preconditions_met() {
        return r;
    }
    let inner = band_inner(list_size, w1, w2, tau);
    r.extras.push(("inner".into(), inner));
    if inner >= 1.0 {
        r.flag("singular");
        r.set(BoundValue::Infinite);
    } else {
        r.set(BoundValue::Finite(band_value(list_size, inner)));
    }
    r
}

fn band_inner(list_size: usize, w1: f64, w2: f64, tau: f64) -> f64 {
    let s = 1.0 + w2 - w1;
    let u = w2 / s;
    (u - u.powi(list_size as i32)) / (tau / s)
}

fn band_value(list_size: usize, inner: f64) -> f64 {
    let l1 = (list_size - 1) as f64;
    l1 / (1.0 - inner.max(0.0).powf(1.0 / l1))
}

/// `(L−1)²/eps` for codes with radius `τ_L + eps` whose relative weights lie
/// in a narrow band.
///
/// With a band given, two conditions are checked: the width limit
/// `w2 − w1 ≤ φ_L·eps` with `φ_L = (1−τ_L)/(2τ_L)`, and the finite-`eps`
/// inequality `inner ≤ (1 − eps/(L−1))^{L−1}` that makes the band bound at
/// most `(L−1)²/eps` (the corollary itself only promises this for small eps).
pub fn close_weights_bound(list_size: usize, eps: f64, band: Option<(f64, f64)>) -> BoundReport {
    let mut inputs = vec![("L", list_size as f64), ("eps", eps)];
    if let Some((w1, w2)) = band {
        inputs.push(("w1", w1));
        inputs.push(("w2", w2));
    }
    let mut r = BoundReport::new("close_weights_bound", &inputs);
    if !r.require("L >= 2", list_size >= 2) {
        return r;
    }
    r.require("eps > 0", eps > 0.0);
    let pp = plotkin_point(list_size).expect("L >= 2");
    let l1 = (list_size - 1) as f64;
    if let Some((w1, w2)) = band {
        let phi = (1.0 - pp.tau) / (2.0 * pp.tau);
        r.require("w2 - w1 <= phi_L*eps", w2 - w1 <= phi * eps && w1 <= w2);
        let inner = band_inner(list_size, w1, w2, pp.tau + eps);
        r.require(
            "inner <= (1 - eps/(L-1))^(L-1)",
            eps < l1 && inner <= (1.0 - eps / l1).powf(l1),
        );
    }
    r.set(BoundValue::Finite(l1 * l1 / eps));
    r
}

/// One weight band of the slicing bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightBand {
    pub w1: f64,
    pub w2: f64,
    /// Integer size limit for codewords with relative weight in `[w1, w2]`.
    pub limit: f64,
}

/// Bisection tolerance for band endpoints.
pub const BAND_TOLERANCE: f64 = 1e-9;

/// Size limit for any code with list-decoding radius `τ_L + eps`, by slicing
/// `[0, 1]` into weight bands.
///
/// Starting at `w1 = 0`, each band is stretched to the largest `w2` whose
/// band bound stays within `(L−1)²/eps`; the band limits are summed. Bands
/// come out narrowest around `w_max`. The returned report carries the total
/// and the number of bands; the schedule is the second element.
pub fn general_upper_bound(list_size: usize, eps: f64) -> Result<(BoundReport, Vec<WeightBand>)> {
    let mut r = BoundReport::new("general_upper_bound", &[("L", list_size as f64), ("eps", eps)]);
    if !r.require("L >= 2", list_size >= 2) {
        return Ok((r, Vec::new()));
    }
    let pp = plotkin_point(list_size)?;
    if !r.require("0 < eps < tau_L", eps > 0.0 && eps < pp.tau) {
        return Ok((r, Vec::new()));
    }
    let tau = pp.tau + eps;
    let l1 = (list_size - 1) as f64;
    let cap = l1 * l1 / eps;
    let within = |w1: f64, w2: f64| {
        let inner = band_inner(list_size, w1, w2, tau);
        inner < 1.0 && band_value(list_size, inner) <= cap
    };
    let mut bands = Vec::new();
    let mut w1 = 0.0f64;
    loop {
        let w2 = if within(w1, 1.0) {
            1.0
        } else {
            // the band bound grows with w2, so bisect on the boundary
            let (mut lo, mut hi) = (w1, 1.0);
            if !within(w1, w1) {
                return Err(Error::invalid(format!(
                    "no admissible weight band starts at {w1} for L = {list_size}, eps = {eps}"
                )));
            }
            while hi - lo > BAND_TOLERANCE {
                let mid = 0.5 * (lo + hi);
                if within(w1, mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        if w2 - w1 < BAND_TOLERANCE && w2 < 1.0 {
            return Err(Error::invalid(format!(
                "weight slicing stalled at {w1} for L = {list_size}, eps = {eps}"
            )));
        }
        let limit = floor_safe(band_value(list_size, band_inner(list_size, w1, w2, tau)));
        bands.push(WeightBand { w1, w2, limit });
        if w2 >= 1.0 {
            break;
        }
        w1 = w2;
    }
    let total: f64 = bands.iter().map(|b| b.limit).sum();
    r.extras.push(("bands".into(), bands.len() as f64));
    r.set(BoundValue::Finite(total));
    Ok((r, bands))
}

/// CSV with columns `name, inputs, value, preconditions, flags`.
pub fn write_bounds_csv<W: std::io::Write>(out: W, reports: &[BoundReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::invalid(format!("csv: {e}"));
    w.write_record(["name", "inputs", "value", "preconditions", "flags"])
        .map_err(io)?;
    for r in reports {
        let value = r.value.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            r.name.to_string(),
            r.inputs_text(),
            value,
            r.preconditions_text(),
            r.flags.join(";"),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::invalid(format!("csv: {e}")))?;
    Ok(())
}
