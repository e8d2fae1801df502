//! Fixed-length binary words and the distances of the Z-channel.
//!
//! Positions are numbered from 0 and the text form lists position 0 first.
//! Words order lexicographically on their bits (after length), which is the
//! canonical order used when codes are written to disk.
//!
//! # Z-ball orientation
//!
//! A Z-ball is centered at a *received* word and contains the words that
//! could have been *transmitted*: every member `y` of `z_ball(c, t)` has
//! `supp(c) ⊆ supp(y)` and `wt(y) - wt(c) ≤ t`. The opposite orientation
//! (balls of words reachable from a transmitted word) also appears in the
//! literature; it is not what this module computes.

use std::fmt;
use std::str::FromStr;

use crate::combinatorics::Combinations;
use crate::error::{Error, Result};

const BITS: usize = 64;

/// A binary vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: usize,
    // position i lives in blocks[i / 64] at bit 63 - i % 64, so comparing the
    // block vectors compares the words lexicographically
    blocks: Vec<u64>,
}

#[inline]
fn block_count(n: usize) -> usize {
    n.div_ceil(BITS)
}

#[inline]
fn mask(i: usize) -> u64 {
    1u64 << (BITS - 1 - i % BITS)
}

impl Word {
    pub fn zeros(n: usize) -> Self {
        Word {
            n,
            blocks: vec![0; block_count(n)],
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut w = Word {
            n,
            blocks: vec![u64::MAX; block_count(n)],
        };
        w.clear_tail();
        w
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut w = Word::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    /// Word of length `n` whose support is `positions`.
    pub fn from_support(n: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut w = Word::zeros(n);
        for p in positions {
            if p >= n {
                return Err(Error::invalid(format!("position {p} out of range for length {n}")));
            }
            w.set(p, true);
        }
        Ok(w)
    }

    pub(crate) fn from_blocks(n: usize, blocks: Vec<u64>) -> Self {
        debug_assert_eq!(blocks.len(), block_count(n));
        let mut w = Word { n, blocks };
        w.clear_tail();
        w
    }

    fn clear_tail(&mut self) {
        let r = self.n % BITS;
        if r != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= !(u64::MAX >> r);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub(crate) fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n, "position {i} out of range for length {}", self.n);
        self.blocks[i / BITS] & mask(i) != 0
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "position {i} out of range for length {}", self.n);
        if value {
            self.blocks[i / BITS] |= mask(i);
        } else {
            self.blocks[i / BITS] &= !mask(i);
        }
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Positions holding a one, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &b)| {
            let mut rest = b;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let lead = rest.leading_zeros() as usize;
                rest &= !(1u64 << (BITS - 1 - lead));
                Some(bi * BITS + lead)
            })
        })
    }

    pub fn complement(&self) -> Word {
        let mut w = Word {
            n: self.n,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        w.clear_tail();
        w
    }

    fn check_len(&self, other: &Word) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Bitwise AND.
    pub fn and(&self, other: &Word) -> Result<Word> {
        self.check_len(other)?;
        Ok(Word {
            n: self.n,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        })
    }

    /// `supp(self) ⊆ supp(other)`.
    pub fn is_subset_of(&self, other: &Word) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0))
    }

    /// Bits as a `u64` with position 0 in the most significant used bit; only for `n ≤ 64`.
    pub(crate) fn to_u64(&self) -> u64 {
        debug_assert!(self.n <= 64);
        match self.blocks.first() {
            Some(&b) if self.n > 0 => b >> (BITS - self.n),
            _ => 0,
        }
    }

    #[cfg(test)]
    pub(crate) fn from_u64(n: usize, bits: u64) -> Word {
        debug_assert!(n <= 64);
        if n == 0 {
            return Word::zeros(0);
        }
        Word::from_blocks(n, vec![bits << (BITS - n)])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.n)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set(i, true),
                _ => return Err(Error::InvalidWordText(s.to_string())),
            }
        }
        if s.chars().count() != s.len() {
            return Err(Error::InvalidWordText(s.to_string()));
        }
        Ok(w)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Δ(x, y): positions where `x` has a one and `y` a zero.
pub fn asym_delta(x: &Word, y: &Word) -> Result<usize> {
    x.check_len(y)?;
    Ok(x.blocks
        .iter()
        .zip(&y.blocks)
        .map(|(a, b)| (a & !b).count_ones() as usize)
        .sum())
}

/// d_Z(x, y) = max(Δ(x, y), Δ(y, x)).
pub fn z_distance(x: &Word, y: &Word) -> Result<usize> {
    Ok(asym_delta(x, y)?.max(asym_delta(y, x)?))
}

pub fn hamming_distance(x: &Word, y: &Word) -> Result<usize> {
    x.check_len(y)?;
    Ok(x.blocks
        .iter()
        .zip(&y.blocks)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}

/// Membership test for `z_ball(center, t)`.
pub fn in_z_ball(center: &Word, t: usize, y: &Word) -> Result<bool> {
    Ok(asym_delta(center, y)? == 0 && asym_delta(y, center)? <= t)
}

/// Lazily enumerates a Z-ball: supersets of `center` with at most `t` extra ones.
///
/// Members come out grouped by weight, smallest first. Size is
/// `Σ_{i ≤ t} C(n - wt(center), i)`.
pub fn z_ball(center: &Word, t: usize) -> Result<ZBall> {
    if t > center.len() {
        return Err(Error::RadiusTooLarge { t, n: center.len() });
    }
    let zeros: Vec<usize> = (0..center.len()).filter(|&i| !center.get(i)).collect();
    let max_raise = t.min(zeros.len());
    Ok(ZBall::new(center.clone(), zeros, 0, max_raise))
}

/// Lazily enumerates the Z-sphere: supersets of `center` with exactly `t` extra ones.
pub fn z_sphere(center: &Word, t: usize) -> Result<ZBall> {
    if t > center.len() {
        return Err(Error::RadiusTooLarge { t, n: center.len() });
    }
    let zeros: Vec<usize> = (0..center.len()).filter(|&i| !center.get(i)).collect();
    Ok(ZBall::new(center.clone(), zeros, t, t))
}

/// Iterator returned by [`z_ball`] and [`z_sphere`].
pub struct ZBall {
    center: Word,
    zeros: Vec<usize>,
    raise: usize,
    max_raise: usize,
    inner: Option<Combinations>,
}

impl ZBall {
    fn new(center: Word, zeros: Vec<usize>, min_raise: usize, max_raise: usize) -> Self {
        let inner = (min_raise <= zeros.len() && min_raise <= max_raise)
            .then(|| Combinations::new(zeros.len(), min_raise));
        ZBall {
            center,
            zeros,
            raise: min_raise,
            max_raise,
            inner,
        }
    }
}

impl Iterator for ZBall {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            let inner = self.inner.as_mut()?;
            if let Some(picks) = inner.next() {
                let mut y = self.center.clone();
                for p in picks {
                    y.set(self.zeros[p], true);
                }
                return Some(y);
            }
            if self.raise >= self.max_raise {
                self.inner = None;
                return None;
            }
            self.raise += 1;
            self.inner = Some(Combinations::new(self.zeros.len(), self.raise));
        }
    }
}

/// All words of length `n` and weight `k` (the Hamming sphere of radius `k` around 0),
/// in lexicographic order of their supports.
pub fn weight_class(n: usize, k: usize) -> impl Iterator<Item = Word> {
    Combinations::new(n, k)
        .map(move |s| Word::from_support(n, s).expect("combination indices are in range"))
}

/// Empirical joint distribution of a tuple of equal-length words.
///
/// Tuples are indexed as integers whose most significant of `k` bits is the
/// first word's bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointType {
    n: usize,
    k: usize,
    counts: Vec<u64>,
}

pub const MAX_JOINT_ARITY: usize = 20;

impl JointType {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, tuple: &[bool]) -> u64 {
        assert_eq!(tuple.len(), self.k, "tuple arity");
        self.counts[tuple_index(tuple)]
    }

    /// Counts divided by `n`.
    pub fn normalized(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.n as f64)
            .collect()
    }

    /// Number of ones in word `i` according to the joint type.
    pub fn marginal_weight(&self, i: usize) -> u64 {
        assert!(i < self.k);
        let bit = 1usize << (self.k - 1 - i);
        self.counts
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx & bit != 0)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Non-zero entries as `(tuple, count)` pairs.
    pub fn entries(&self) -> Vec<(Vec<bool>, u64)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(idx, &c)| {
                let tuple = (0..self.k)
                    .map(|i| idx & (1 << (self.k - 1 - i)) != 0)
                    .collect();
                (tuple, c)
            })
            .collect()
    }
}

fn tuple_index(tuple: &[bool]) -> usize {
    tuple.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn joint_type(words: &[&Word]) -> Result<JointType> {
    let first = words.first().ok_or(Error::EmptyList)?;
    if words.len() > MAX_JOINT_ARITY {
        return Err(Error::invalid(format!(
            "joint type arity {} exceeds {MAX_JOINT_ARITY}",
            words.len()
        )));
    }
    for w in words {
        first.check_len(w)?;
    }
    let k = words.len();
    let mut counts = vec![0u64; 1 << k];
    for i in 0..first.len() {
        let idx = words.iter().fold(0usize, |acc, w| (acc << 1) | w.get(i) as usize);
        counts[idx] += 1;
    }
    Ok(JointType {
        n: first.len(),
        k,
        counts,
    })
}
