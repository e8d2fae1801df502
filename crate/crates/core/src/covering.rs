//! Random coverings of a Hamming sphere by centers at a fixed joint type.
//!
//! A center `u` of weight `nv` covers `x` of weight `nw` when the pair has
//! joint type `(w, v, a)`, i.e. when `|supp u ∩ supp x| = na`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::capacity::{mutual_info, CoveringDistribution};
use crate::codes::Code;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::words::{weight_class, Word};

/// Largest length the verifier will enumerate.
pub const MAX_COVERING_N: usize = 20;

/// Largest number of centers [`sample_covering`] will draw.
pub const MAX_CENTERS: usize = 1 << 22;

/// Integer cell counts of a joint type at length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypeCounts {
    pub n: usize,
    /// `nw`
    pub target_weight: usize,
    /// `nv`
    pub center_weight: usize,
    /// `na`
    pub overlap: usize,
}

impl TypeCounts {
    pub fn new(n: usize, w: f64, v: f64, a: f64) -> Result<Self> {
        CoveringDistribution::new(w, v, a)?;
        let cell = |x: f64, name: &str| -> Result<usize> {
            let y = x * n as f64;
            let r = y.round();
            if (y - r).abs() > 1e-9 {
                return Err(Error::invalid(format!("n{name} = {y} is not an integer")));
            }
            Ok(r as usize)
        };
        Ok(TypeCounts {
            n,
            target_weight: cell(w, "w")?,
            center_weight: cell(v, "v")?,
            overlap: cell(a, "a")?,
        })
    }

    /// Number of weight-`nw` words one center covers:
    /// `C(nv, na)·C(n − nv, nw − na)`.
    pub fn single_center_coverage(&self) -> BigUint {
        let (n, nw, nv, na) = (self.n, self.target_weight, self.center_weight, self.overlap);
        if na > nv || na > nw || nw - na > n - nv {
            return BigUint::zero();
        }
        binomial(nv as u64, na as u64) * binomial((n - nv) as u64, (nw - na) as u64)
    }

    fn check_length(&self) -> Result<()> {
        if self.n > MAX_COVERING_N {
            return Err(Error::GuardExceeded {
                what: "covering length",
                actual: self.n.to_string(),
                limit: MAX_COVERING_N.to_string(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Covering {
    /// Distinct centers, all of weight `nv`.
    pub centers: Code,
    pub counts: TypeCounts,
    pub joint: CoveringDistribution,
    /// Number of draws, including repeats.
    pub sampled: usize,
}

impl Covering {
    pub fn new(centers: Code, joint: CoveringDistribution, counts: TypeCounts) -> Result<Self> {
        if centers.len() != counts.n {
            return Err(Error::LengthMismatch {
                left: centers.len(),
                right: counts.n,
            });
        }
        if centers.words().iter().any(|u| u.weight() != counts.center_weight) {
            return Err(Error::invalid(format!(
                "every center must have weight {}",
                counts.center_weight
            )));
        }
        let sampled = centers.size();
        Ok(Covering {
            centers,
            counts,
            joint,
            sampled,
        })
    }

    /// The centers as a code file, with the joint law in its metadata.
    pub fn to_code(&self) -> Code {
        self.centers
            .clone()
            .with_meta("joint", json!({"w": self.joint.w, "v": self.joint.v, "a": self.joint.a}))
            .with_meta("target_weight", json!(self.counts.target_weight))
            .with_meta("sampled", json!(self.sampled))
    }
}

/// Draws `⌈2^{n(I(w,v,a)+ε)}⌉` uniform weight-`nv` centers.
pub fn sample_covering(n: usize, w: f64, v: f64, a: f64, eps: f64, seed: u64) -> Result<Covering> {
    let counts = TypeCounts::new(n, w, v, a)?;
    counts.check_length()?;
    if eps < 0.0 {
        return Err(Error::invalid("eps must be nonnegative"));
    }
    let joint = CoveringDistribution::new(w, v, a)?;
    let info = mutual_info(w, v, a)?;
    let draws = (n as f64 * (info + eps)).exp2().ceil();
    if draws > MAX_CENTERS as f64 {
        return Err(Error::GuardExceeded {
            what: "covering centers",
            actual: format!("{draws}"),
            limit: MAX_CENTERS.to_string(),
        });
    }
    let draws = draws as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words: Vec<Word> = (0..draws)
        .map(|_| {
            Word::from_support(n, index::sample(&mut rng, n, counts.center_weight))
                .expect("indices in range")
        })
        .collect();
    words.sort();
    words.dedup();
    let centers = Code::new(n, words)?.with_meta("seed", json!(seed));
    Ok(Covering {
        centers,
        counts,
        joint,
        sampled: draws,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringCheck {
    pub complete: bool,
    pub sphere_size: usize,
    pub uncovered: Vec<Word>,
}

/// Checks every weight-`nw` word for a center at the exact joint type.
pub fn verify_covering(c: &Covering) -> Result<CoveringCheck> {
    c.counts.check_length()?;
    let centers: Vec<u64> = c.centers.words().iter().map(|u| u.to_u64()).collect();
    let sphere: Vec<Word> = weight_class(c.counts.n, c.counts.target_weight).collect();
    let overlap = c.counts.overlap as u32;
    let uncovered: Vec<Word> = sphere
        .par_iter()
        .filter(|x| {
            let bits = x.to_u64();
            !centers.iter().any(|u| (u & bits).count_ones() == overlap)
        })
        .cloned()
        .collect();
    Ok(CoveringCheck {
        complete: uncovered.is_empty(),
        sphere_size: sphere.len(),
        uncovered,
    })
}

/// Sphere-covering lower bound `⌈C(n, nw) / coverage⌉` on any covering.
pub fn covering_converse_lower(n: usize, w: f64, v: f64, a: f64) -> Result<BigUint> {
    let counts = TypeCounts::new(n, w, v, a)?;
    let per_center = counts.single_center_coverage();
    if per_center.is_zero() {
        return Err(Error::invalid("the joint type class is empty"));
    }
    Ok(Integer::div_ceil(
        &binomial(n as u64, counts.target_weight as u64),
        &per_center,
    ))
}
