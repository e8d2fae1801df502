//! Code constructions: balanced constant-weight codes, the block codes `A_j`,
//! and stacks of randomly column-permuted blocks.
//!
//! Every construction builds a matrix column by column and returns its rows.
//! A "column code" with `r` rows and column weight `k` has one column for
//! every weight-`k` vector of length `r`, so each row has weight
//! `C(r-1, k-1)` and any `L` rows share exactly `C(r-L, k-L)` ones.
//!
//! Stacked codes replicate each block `z_j` times so that all blocks reach a
//! common length `N`, permute the columns of each block independently, and
//! place the blocks one below the other. Block `b` draws its permutation from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `b`, so the output
//! only depends on the seed and the block order.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::Code;
use crate::combinatorics::{binomial, binomial_u128, lcm, Combinations};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::words::{asym_delta, z_distance, Word};

/// Largest number of columns a construction may materialize.
pub const MAX_COLUMNS: u128 = 10_000_000;
/// Largest number of matrix cells (rows times columns).
pub const MAX_CELLS: u128 = 1 << 32;
/// Stacked codes longer than this get sampled rather than exhaustive cross-block checks.
pub const EXACT_CROSS_CHECK_LENGTH: usize = 100_000;

fn guard_columns(columns: u128, rows: u128) -> Result<()> {
    if columns > MAX_COLUMNS {
        return Err(Error::GuardExceeded {
            what: "columns",
            actual: columns.to_string(),
            limit: MAX_COLUMNS.to_string(),
        });
    }
    if columns.saturating_mul(rows) > MAX_CELLS {
        return Err(Error::GuardExceeded {
            what: "matrix cells",
            actual: columns.saturating_mul(rows).to_string(),
            limit: MAX_CELLS.to_string(),
        });
    }
    Ok(())
}

fn set_bit(blocks: &mut [u64], pos: usize) {
    blocks[pos / 64] |= 1u64 << (63 - pos % 64);
}

fn clear_bit(blocks: &mut [u64], pos: usize) {
    blocks[pos / 64] &= !(1u64 << (63 - pos % 64));
}

/// Rows of the matrix whose columns are all weight-`k` vectors of length `r`.
///
/// Columns follow the lexicographic order of their one-positions, or of
/// their zero-positions when `k > r/2`. Rows come back in row order.
pub fn column_code_rows(r: usize, k: usize) -> Result<Vec<Word>> {
    if k > r {
        return Err(Error::invalid(format!("column weight {k} exceeds {r} rows")));
    }
    let n = binomial_u128(r as u64, k as u64).unwrap_or(u128::MAX);
    guard_columns(n, r as u128)?;
    let n = n as usize;
    let nb = n.div_ceil(64);
    let complement = 2 * k > r;
    let fill = if complement { u64::MAX } else { 0 };
    let mut rows = vec![vec![fill; nb]; r];
    let picks = if complement { r - k } else { k };
    let mut col = 0usize;
    Combinations::new(r, picks).for_each_while(|subset| {
        for &row in subset {
            if complement {
                clear_bit(&mut rows[row], col);
            } else {
                set_bit(&mut rows[row], col);
            }
        }
        col += 1;
        true
    });
    debug_assert_eq!(col, n);
    Ok(rows.into_iter().map(|b| Word::from_blocks(n, b)).collect())
}

/// Parameters of a balanced code: `M = m/w` rows, one column per weight-`m` vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BalancedParams {
    pub m: u64,
    #[serde(with = "rational::serde_text")]
    pub w: Rational,
}

impl BalancedParams {
    pub fn new(m: u64, w: Rational) -> Result<Self> {
        let p = BalancedParams { m, w };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::invalid("m must be positive"));
        }
        if !rational::is_positive(&self.w) || self.w >= Rational::from_integer(1) {
            return Err(Error::invalid(format!("w = {} must lie in (0, 1)", self.w)));
        }
        let rows = Rational::from_integer(self.m as i64) / self.w;
        if !rows.is_integer() {
            return Err(Error::invalid(format!(
                "m/w = {} is not an integer",
                rational::format_rational(&rows)
            )));
        }
        Ok(())
    }

    /// `M = m/w`.
    pub fn rows(&self) -> u64 {
        (Rational::from_integer(self.m as i64) / self.w).to_integer() as u64
    }

    /// `n = C(M, m)`.
    pub fn length(&self) -> BigUint {
        binomial(self.rows(), self.m)
    }
}

pub fn balanced_code(p: &BalancedParams) -> Result<Code> {
    p.validate()?;
    let rows = column_code_rows(p.rows() as usize, p.m as usize)?;
    let n = rows[0].len();
    Ok(Code::new(n, rows)?
        .with_meta("construction", serde_json::json!("balanced"))
        .with_meta("m", serde_json::json!(p.m))
        .with_meta("w", serde_json::json!(rational::format_rational(&p.w))))
}

/// `nw − n·C(m,L)/C(M,L)`, the list-decoding radius of the balanced code.
pub fn balanced_radius_formula(p: &BalancedParams, list_size: u64) -> Result<BigRational> {
    p.validate()?;
    let rows = p.rows();
    if list_size > rows {
        return Err(Error::invalid(format!(
            "list size {list_size} exceeds the {rows} codewords"
        )));
    }
    if list_size <= 1 {
        return Ok(BigRational::zero());
    }
    let n = BigInt::from(p.length());
    // nw = n·m/M
    let nw = BigRational::new(n.clone() * BigInt::from(p.m), BigInt::from(rows));
    let shared = BigRational::new(
        n * BigInt::from(binomial(p.m, list_size)),
        BigInt::from(binomial(rows, list_size)),
    );
    Ok(nw - shared)
}

fn check_offset(m: u64, j: i64) -> Result<()> {
    if m == 0 || j.unsigned_abs() >= m {
        return Err(Error::invalid(format!("offset j = {j} needs |j| < m = {m}")));
    }
    Ok(())
}

/// `A_j`: `2m` rows, one column per weight-`(m-j)` vector of length `2m`.
pub fn unique_block_code(m: u64, j: i64) -> Result<Code> {
    check_offset(m, j)?;
    let rows = column_code_rows(2 * m as usize, (m as i64 - j) as usize)?;
    let n = rows[0].len();
    Ok(Code::new(n, rows)?
        .with_meta("construction", serde_json::json!("unique-block"))
        .with_meta("m", serde_json::json!(m))
        .with_meta("j", serde_json::json!(j)))
}

/// `C(2m−2, m−j−1)`, the asymmetric difference between any two rows of `A_j`.
pub fn unique_block_delta(m: u64, j: i64) -> Result<BigUint> {
    check_offset(m, j)?;
    let k = (m as i64 - j - 1) as u64;
    Ok(binomial(2 * m - 2, k))
}

/// The three closed forms of the fraction of errors `A_j` corrects:
/// `(C(2m−2,m−j−1) − 1)/C(2m,m−j)`, `(m−j)(m+j)/(2m(2m−1)) − 1/C(2m,m−j)`
/// and `1/4 + (m/2 − j²)/(4m² − 2m) − 1/C(2m,m−j)`.
pub fn unique_block_tau_forms(m: u64, j: i64) -> Result<[BigRational; 3]> {
    check_offset(m, j)?;
    let big = |v: i64| BigInt::from(v);
    let (mi, ji) = (m as i64, j);
    let length = BigInt::from(binomial(2 * m, (mi - ji) as u64));
    let delta = BigInt::from(unique_block_delta(m, j)?);
    let inv_len = BigRational::new(big(1), length.clone());

    let first = BigRational::new(delta - big(1), length);
    let second = BigRational::new(big((mi - ji) * (mi + ji)), big(2 * mi * (2 * mi - 1)))
        - inv_len.clone();
    // m/2 − j² over 4m² − 2m, with both scaled by 2
    let third = BigRational::new(big(1), big(4))
        + BigRational::new(big(mi - 2 * ji * ji), big(2 * (4 * mi * mi - 2 * mi)))
        - inv_len;
    Ok([first, second, third])
}

/// How the blocks of a stacked code are shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum StackLayout {
    /// Blocks `A_j` with `2m` rows and column weight `m − j`.
    Unique,
    /// Blocks with `m` rows and column weight `round(m·w_max) − j`.
    List { list_size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackedParams {
    pub m: u64,
    pub offsets: Vec<i64>,
    pub layout: StackLayout,
    /// Copies `z_j` of each block; by default every block is replicated up
    /// to the least common multiple of the block lengths.
    #[serde(default)]
    pub replication: Option<Vec<u64>>,
    pub seed: u64,
}

/// One block of a stacked code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StackedBlock {
    pub offset: i64,
    pub column_weight: u64,
    pub block_length: u64,
    pub replication: u64,
    pub rows: Vec<Word>,
}

#[derive(Debug, Clone)]
pub struct StackedCode {
    pub code: Code,
    pub length: usize,
    pub blocks: Vec<StackedBlock>,
}

impl StackedParams {
    fn block_shape(&self, j: i64) -> Result<(usize, usize)> {
        match self.layout {
            StackLayout::Unique => {
                check_offset(self.m, j)?;
                Ok((2 * self.m as usize, (self.m as i64 - j) as usize))
            }
            StackLayout::List { list_size } => {
                let base = list_base_weight(self.m, list_size)?;
                let k = base as i64 - j;
                if k < 1 || k >= self.m as i64 {
                    return Err(Error::invalid(format!(
                        "offset j = {j} gives column weight {k} outside 1..{}",
                        self.m
                    )));
                }
                Ok((self.m as usize, k as usize))
            }
        }
    }

    /// Block lengths `n_j` and the replication counts `z_j` in offset order.
    pub fn lengths(&self) -> Result<(Vec<u64>, Vec<u64>, u64)> {
        if self.offsets.is_empty() {
            return Err(Error::invalid("no block offsets given"));
        }
        let mut seen = self.offsets.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::invalid("block offsets must be distinct"));
        }
        let mut lens = Vec::with_capacity(self.offsets.len());
        for &j in &self.offsets {
            let (r, k) = self.block_shape(j)?;
            let n = binomial_u128(r as u64, k as u64)
                .filter(|&n| n <= MAX_COLUMNS)
                .ok_or_else(|| Error::GuardExceeded {
                    what: "block length",
                    actual: binomial(r as u64, k as u64).to_string(),
                    limit: MAX_COLUMNS.to_string(),
                })?;
            lens.push(n as u64);
        }
        let reps = match &self.replication {
            Some(z) => {
                if z.len() != lens.len() || z.contains(&0) {
                    return Err(Error::invalid(
                        "replication needs one positive count per offset",
                    ));
                }
                z.clone()
            }
            None => {
                let mut total: u128 = 1;
                for &n in &lens {
                    total = lcm(total, n as u128)
                        .filter(|&t| t <= MAX_COLUMNS)
                        .ok_or_else(|| Error::GuardExceeded {
                            what: "common block length",
                            actual: "lcm overflow".into(),
                            limit: MAX_COLUMNS.to_string(),
                        })?;
                }
                lens.iter().map(|&n| (total / n as u128) as u64).collect()
            }
        };
        let total = lens[0] as u128 * reps[0] as u128;
        for (n, z) in lens.iter().zip(&reps) {
            if *n as u128 * *z as u128 != total {
                return Err(Error::invalid(format!(
                    "blocks must share one length; got {} and {}",
                    total,
                    *n as u128 * *z as u128
                )));
            }
        }
        let rows: u128 = self
            .offsets
            .iter()
            .map(|&j| self.block_shape(j).map(|s| s.0 as u128))
            .sum::<Result<u128>>()?;
        guard_columns(total, rows)?;
        Ok((lens, reps, total as u64))
    }
}

/// `round(m · w_max)` for the list layout, `w_max = L^{-1/(L-1)}`.
pub fn list_base_weight(m: u64, list_size: usize) -> Result<u64> {
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall {
            min: 2,
            got: list_size,
        });
    }
    let w = crate::bounds::plotkin_point(list_size)?.w_max;
    Ok((m as f64 * w).round() as u64)
}

pub fn stacked_code(p: &StackedParams) -> Result<StackedCode> {
    let (lens, reps, total) = p.lengths()?;
    let total = total as usize;
    let blocks: Vec<StackedBlock> = p
        .offsets
        .par_iter()
        .enumerate()
        .map(|(b, &j)| -> Result<StackedBlock> {
            let (r, k) = p.block_shape(j)?;
            let base = column_code_rows(r, k)?;
            let n_j = lens[b] as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            rng.set_stream(b as u64);
            let mut perm: Vec<usize> = (0..total).collect();
            perm.shuffle(&mut rng);
            let rows = base
                .iter()
                .map(|row| {
                    let ones: Vec<usize> = row.support().collect();
                    let mut blocks = vec![0u64; total.div_ceil(64)];
                    for copy in 0..reps[b] as usize {
                        for &c in &ones {
                            set_bit(&mut blocks, perm[copy * n_j + c]);
                        }
                    }
                    Word::from_blocks(total, blocks)
                })
                .collect();
            Ok(StackedBlock {
                offset: j,
                column_weight: k as u64,
                block_length: lens[b],
                replication: reps[b],
                rows,
            })
        })
        .collect::<Result<_>>()?;
    let words: Vec<Word> = blocks.iter().flat_map(|b| b.rows.iter().cloned()).collect();
    let code = Code::new(total, words)?
        .with_meta("construction", serde_json::json!("stacked"))
        .with_meta("params", serde_json::to_value(p).expect("params serialize"));
    Ok(StackedCode {
        code,
        length: total,
        blocks,
    })
}

/// Cross-block comparison of a stacked code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossBlockStats {
    /// Smallest Z-distance between rows of different blocks.
    pub min_z_distance: usize,
    /// Mean of `Δ(x, y)` over ordered pairs with `x` in the heavier block.
    pub mean_delta: f64,
    pub pairs: usize,
    /// False when pairs were sampled because the code is long.
    pub exact: bool,
}

/// Compares rows of blocks `a` and `b`; exhaustive up to
/// [`EXACT_CROSS_CHECK_LENGTH`], otherwise `samples` random pairs.
pub fn cross_block_stats(
    code: &StackedCode,
    a: usize,
    b: usize,
    samples: usize,
    seed: u64,
) -> Result<CrossBlockStats> {
    let (ba, bb) = (&code.blocks[a], &code.blocks[b]);
    let (heavy, light) = if ba.rows[0].weight() >= bb.rows[0].weight() {
        (ba, bb)
    } else {
        (bb, ba)
    };
    let pairs: Vec<(usize, usize)> = if code.length <= EXACT_CROSS_CHECK_LENGTH {
        (0..heavy.rows.len())
            .flat_map(|x| (0..light.rows.len()).map(move |y| (x, y)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                (
                    rng.gen_range(0..heavy.rows.len()),
                    rng.gen_range(0..light.rows.len()),
                )
            })
            .collect()
    };
    let mut min_z = usize::MAX;
    let mut sum = 0usize;
    for &(x, y) in &pairs {
        let (x, y) = (&heavy.rows[x], &light.rows[y]);
        min_z = min_z.min(z_distance(x, y)?);
        sum += asym_delta(x, y)?;
    }
    Ok(CrossBlockStats {
        min_z_distance: min_z,
        mean_delta: sum as f64 / pairs.len().max(1) as f64,
        pairs: pairs.len(),
        exact: code.length <= EXACT_CROSS_CHECK_LENGTH,
    })
}

/// Hypergeometric mean of `Δ(x, y)` for `x` from `A_j` and `y` from `A_i`
/// after independent permutations: `(m−j)(m+i)N/(4m²)`.
pub fn unique_cross_delta_mean(m: u64, j: i64, i: i64, length: u64) -> f64 {
    let (m, j, i) = (m as f64, j as f64, i as f64);
    (m - j) * (m + i) * length as f64 / (4.0 * m * m)
}

/// `(L+1)·exp(−Nγ²·2^{−2L+1})`: bound on the probability that `L` independently
/// permuted words of relative weights `weights` share more than
/// `γ + Π weights` of the `N` positions.
pub fn permutation_tail_bound(weights: &[f64], gamma: f64, length: u64) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::EmptyList);
    }
    if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
        return Err(Error::invalid("weights must lie in [0, 1]"));
    }
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::invalid(format!("gamma = {gamma} must be positive")));
    }
    let l = weights.len() as f64;
    Ok((l + 1.0) * (-(length as f64) * gamma * gamma * 2f64.powf(-2.0 * l + 1.0)).exp())
}

/// Relative weight of the rows of each block of a stacked code.
pub fn block_relative_weights(code: &StackedCode) -> Vec<f64> {
    code.blocks
        .iter()
        .map(|b| b.rows[0].weight() as f64 / code.length as f64)
        .collect()
}

/// Exact rational value of a [`BigRational`] as a float.
pub fn big_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::list_decoding_radius;
    use crate::words::asym_delta;

    #[test]
    fn balanced_examples() {
        let p = BalancedParams::new(2, Rational::new(1, 2)).unwrap();
        let code = balanced_code(&p).unwrap();
        assert_eq!((code.size(), code.len()), (4, 6));
        assert!(code.words().iter().all(|w| w.weight() == 3));
        assert_eq!(balanced_radius_formula(&p, 2).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(balanced_radius_formula(&p, 3).unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(balanced_radius_formula(&p, 1).unwrap(), BigRational::zero());
        assert!(balanced_radius_formula(&p, 5).is_err());
        assert_eq!(list_decoding_radius(&code, 3).unwrap().radius, 3);

        let p1 = BalancedParams::new(1, Rational::new(1, 2)).unwrap();
        let c1 = balanced_code(&p1).unwrap();
        assert_eq!(c1.words(), &["01".parse().unwrap(), "10".parse().unwrap()]);
        assert_eq!(list_decoding_radius(&c1, 2).unwrap().radius, 1);

        assert!(BalancedParams::new(2, Rational::new(3, 5)).is_err());
        assert!(BalancedParams::new(2, Rational::from_integer(1)).is_err());
    }

    #[test]
    fn complement_generation_matches_direct() {
        // m > M/2 takes the zero-position path
        let p = BalancedParams::new(3, Rational::new(3, 4)).unwrap();
        let code = balanced_code(&p).unwrap();
        assert_eq!((code.size(), code.len()), (4, 4));
        assert!(code.words().iter().all(|w| w.weight() == 3));
        let direct = column_code_rows(5, 3).unwrap();
        for (a, row) in direct.iter().enumerate() {
            assert_eq!(row.weight(), 6);
            for other in &direct[a + 1..] {
                assert_eq!(row.and(other).unwrap().weight(), 3);
            }
        }
    }

    #[test]
    fn block_code_examples() {
        let a0 = unique_block_code(3, 0).unwrap();
        assert_eq!((a0.size(), a0.len()), (6, 20));
        for (i, x) in a0.words().iter().enumerate() {
            for y in &a0.words()[i + 1..] {
                assert_eq!(asym_delta(x, y).unwrap(), 6);
                assert_eq!(asym_delta(y, x).unwrap(), 6);
            }
        }
        let forms = unique_block_tau_forms(3, 0).unwrap();
        let quarter = BigRational::new(1.into(), 4.into());
        assert!(forms.iter().all(|f| *f == quarter));

        let a = unique_block_code(2, 1).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(unique_block_delta(2, 1).unwrap(), BigUint::from(1u32));
        assert!(unique_block_code(3, 3).is_err());
        assert!(unique_block_code(3, -3).is_err());
    }

    #[test]
    fn single_block_delta_scales_with_replication() {
        for z in [1u64, 2, 5] {
            let p = StackedParams {
                m: 3,
                offsets: vec![0],
                layout: StackLayout::Unique,
                replication: Some(vec![z]),
                seed: 11,
            };
            let s = stacked_code(&p).unwrap();
            assert_eq!(s.length, 20 * z as usize);
            let rows = &s.blocks[0].rows;
            for (i, x) in rows.iter().enumerate() {
                for y in &rows[i + 1..] {
                    assert_eq!(asym_delta(x, y).unwrap(), 6 * z as usize);
                }
            }
        }
    }

    #[test]
    fn block_radius_survives_permutation() {
        for seed in 0..5 {
            let p = StackedParams {
                m: 2,
                offsets: vec![-1, 0, 1],
                layout: StackLayout::Unique,
                replication: None,
                seed,
            };
            let s = stacked_code(&p).unwrap();
            assert_eq!(s.length, 12);
            for (b, block) in s.blocks.iter().enumerate() {
                let within = Code::new(s.length, block.rows.clone()).unwrap();
                let base = unique_block_code(2, p.offsets[b]).unwrap();
                let r0 = list_decoding_radius(&base, 2).unwrap().radius;
                let r1 = list_decoding_radius(&within, 2).unwrap().radius;
                assert_eq!(r1 as u64, r0 as u64 * block.replication);
            }
        }
    }

    #[test]
    fn stacked_is_deterministic_and_validated() {
        let p = StackedParams {
            m: 3,
            offsets: vec![0, 1],
            layout: StackLayout::Unique,
            replication: None,
            seed: 42,
        };
        let a = stacked_code(&p).unwrap();
        let b = stacked_code(&p).unwrap();
        assert_eq!(a.code, b.code);
        assert_eq!(a.length, 60);
        assert_eq!(a.code.size(), 12);

        let unequal = StackedParams {
            replication: Some(vec![1, 1]),
            ..p.clone()
        };
        assert!(stacked_code(&unequal).is_err());
        let empty = StackedParams {
            offsets: vec![],
            ..p.clone()
        };
        assert!(stacked_code(&empty).is_err());
        let repeated = StackedParams {
            offsets: vec![0, 0],
            ..p
        };
        assert!(stacked_code(&repeated).is_err());
    }

    #[test]
    fn list_layout_blocks_have_m_rows() {
        let p = StackedParams {
            m: 6,
            offsets: vec![0, 1],
            layout: StackLayout::List { list_size: 3 },
            replication: None,
            seed: 1,
        };
        assert_eq!(list_base_weight(6, 3).unwrap(), 3);
        let s = stacked_code(&p).unwrap();
        assert_eq!(s.blocks.iter().map(|b| b.rows.len()).collect::<Vec<_>>(), vec![6, 6]);
        // C(6,3) = 20 and C(6,2) = 15
        assert_eq!(s.length, 60);
    }

    #[test]
    fn tail_bound_examples() {
        let v = permutation_tail_bound(&[0.5, 0.5], 0.1, 1000).unwrap();
        assert!((v - 3.0 * (-1.25f64).exp()).abs() < 1e-12);
        assert!((v - 0.8595).abs() < 1e-4);
        assert!(permutation_tail_bound(&[0.5, 0.5], 0.0, 10).is_err());
        assert!(permutation_tail_bound(&[0.5], 2.0, 10).unwrap() >= 0.0);
    }
}
