//! Codes, Chebyshev radii of lists and exact list-decoding radii.
//!
//! The list-decoding radius `τ_L(C)` is the smallest Chebyshev radius over
//! all `L`-subsets of the code. It is found by a depth-first branch-and-bound
//! over subsets: the partial AND of the chosen rows gives a lower bound on
//! the radius of every completion, and a branch is dropped once that bound
//! reaches the incumbent. Pruning only discards subsets that cannot beat the
//! incumbent, so the result is exact.
//!
//! Codes with many interchangeable rows (the balanced codes, block codes)
//! have far too many `L`-subsets to enumerate one by one. [`RadiusSearch`]
//! first groups rows into classes such that swapping two rows of a class
//! maps the code onto itself up to a column permutation. Swaps preserve every
//! Chebyshev radius, so within a class only the number of chosen rows
//! matters. [`list_decoding_radius_exhaustive`] skips the grouping and visits
//! subsets row by row.

use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ceil_times, in_unit_interval, Rational};
use crate::words::{z_distance, hamming_distance, Word};

/// An ordered set of distinct words of a common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    n: usize,
    words: Vec<Word>,
    weight_range: Option<(usize, usize)>,
    meta: serde_json::Map<String, serde_json::Value>,
}

impl Code {
    /// Builds a code of length `n`. Words are stored in lexicographic order;
    /// duplicates are an error.
    pub fn new(n: usize, mut words: Vec<Word>) -> Result<Code> {
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: w.len(),
                });
            }
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWord(pair[0].to_string()));
        }
        let weight_range = words
            .iter()
            .map(Word::weight)
            .fold(None, |acc: Option<(usize, usize)>, wt| match acc {
                None => Some((wt, wt)),
                Some((lo, hi)) => Some((lo.min(wt), hi.max(wt))),
            });
        Ok(Code {
            n,
            words,
            weight_range,
            meta: serde_json::Map::new(),
        })
    }

    /// Builds a code from a nonempty list, taking the length from the first word.
    pub fn from_words(words: Vec<Word>) -> Result<Code> {
        let n = words.first().ok_or(Error::EmptyList)?.len();
        Code::new(n, words)
    }

    pub fn parse(words: &[&str]) -> Result<Code> {
        let parsed = words
            .iter()
            .map(|s| s.parse::<Word>())
            .collect::<Result<Vec<_>>>()?;
        Code::from_words(parsed)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// `(min, max)` codeword weight, `None` for the empty code.
    pub fn weight_range(&self) -> Option<(usize, usize)> {
        self.weight_range
    }

    pub fn is_constant_weight(&self) -> bool {
        matches!(self.weight_range, Some((lo, hi)) if lo == hi)
    }

    pub fn meta(&self) -> &serde_json::Map<String, serde_json::Value> {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut serde_json::Map<String, serde_json::Value> {
        &mut self.meta
    }

    pub fn with_meta(mut self, key: &str, value: serde_json::Value) -> Code {
        self.meta.insert(key.to_string(), value);
        self
    }

    /// The code obtained by flipping every bit of every codeword.
    pub fn complement(&self) -> Code {
        Code::new(self.n, self.words.iter().map(Word::complement).collect())
            .expect("complement keeps words distinct")
    }

    pub fn to_json(&self) -> String {
        let file = CodeFile {
            n: self.n,
            words: self.words.clone(),
            meta: self.meta.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("code serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Code> {
        let file: CodeFile =
            serde_json::from_str(text).map_err(|e| Error::CodeFile(e.to_string()))?;
        let mut code = Code::new(file.n, file.words)?;
        code.meta = file.meta;
        Ok(code)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::CodeFile(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Code> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::CodeFile(format!("{}: {e}", path.display())))?;
        Code::from_json(&text)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeFile {
    n: usize,
    words: Vec<Word>,
    #[serde(default)]
    meta: serde_json::Map<String, serde_json::Value>,
}

/// Bitwise AND of the list.
pub fn chebyshev_center(list: &[Word]) -> Result<Word> {
    let (first, rest) = list.split_first().ok_or(Error::EmptyList)?;
    rest.iter().try_fold(first.clone(), |acc, w| acc.and(w))
}

/// Largest weight in the list minus the weight of its AND.
pub fn chebyshev_radius(list: &[Word]) -> Result<usize> {
    let center = chebyshev_center(list)?;
    let top = list.iter().map(Word::weight).max().unwrap_or(0);
    Ok(top - center.weight())
}

/// An exact list-decoding radius with a list attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusCertificate {
    pub list_size: usize,
    pub radius: usize,
    pub witness: Vec<Word>,
    pub center: Word,
    /// Whether interchangeable rows were grouped during the search.
    pub symmetry_reduced: bool,
}

impl RadiusCertificate {
    /// Recomputes the witness radius; true when it matches.
    pub fn verify(&self) -> bool {
        self.witness.len() == self.list_size
            && chebyshev_radius(&self.witness).ok() == Some(self.radius)
            && chebyshev_center(&self.witness).ok().as_ref() == Some(&self.center)
    }
}

fn check_list_size(code: &Code, list_size: usize) -> Result<()> {
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall {
            min: 2,
            got: list_size,
        });
    }
    if code.size() < list_size {
        return Err(Error::CodeTooSmall {
            size: code.size(),
            list_size,
        });
    }
    Ok(())
}

/// Exact `τ_L(C)`, grouping interchangeable rows first.
pub fn list_decoding_radius(code: &Code, list_size: usize) -> Result<RadiusCertificate> {
    check_list_size(code, list_size)?;
    RadiusSearch::new(code).radius(list_size)
}

/// Exact `τ_L(C)` by branch-and-bound over individual rows.
pub fn list_decoding_radius_exhaustive(code: &Code, list_size: usize) -> Result<RadiusCertificate> {
    check_list_size(code, list_size)?;
    RadiusSearch::without_symmetry(code).radius(list_size)
}

/// Reusable state for radius queries on one code.
pub struct RadiusSearch<'a> {
    code: &'a Code,
    // row indices grouped into interchangeable classes, heaviest first
    classes: Vec<Vec<usize>>,
    class_weight: Vec<usize>,
    symmetry_reduced: bool,
}

/// Swap tests attempted while grouping rows before giving up on the rest.
const MAX_SWAP_TESTS: usize = 20_000;
/// Largest `n · |C|` for which the column matrix is built.
const MAX_COLUMN_BITS: usize = 1 << 31;

impl<'a> RadiusSearch<'a> {
    pub fn new(code: &'a Code) -> Self {
        let classes = if code.len().saturating_mul(code.size()) <= MAX_COLUMN_BITS {
            interchangeable_classes(code)
        } else {
            (0..code.size()).map(|i| vec![i]).collect()
        };
        Self::from_classes(code, classes, true)
    }

    pub fn without_symmetry(code: &'a Code) -> Self {
        Self::from_classes(code, (0..code.size()).map(|i| vec![i]).collect(), false)
    }

    fn from_classes(code: &'a Code, mut classes: Vec<Vec<usize>>, symmetry_reduced: bool) -> Self {
        let words = code.words();
        classes.sort_by(|a, b| {
            words[b[0]]
                .weight()
                .cmp(&words[a[0]].weight())
                .then(a[0].cmp(&b[0]))
        });
        let class_weight = classes.iter().map(|c| words[c[0]].weight()).collect();
        RadiusSearch {
            code,
            classes,
            class_weight,
            symmetry_reduced,
        }
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn radius(&self, list_size: usize) -> Result<RadiusCertificate> {
        check_list_size(self.code, list_size)?;
        let blocks = self.code.words().first().map_or(0, |w| w.blocks().len());
        let global = AtomicUsize::new(usize::MAX);

        // suffix[c] = rows available in classes c..
        let mut suffix = vec![0usize; self.classes.len() + 1];
        for c in (0..self.classes.len()).rev() {
            suffix[c] = suffix[c + 1] + self.classes[c].len();
        }

        let best = (0..self.classes.len())
            .into_par_iter()
            .filter(|&c| suffix[c] >= list_size)
            .filter_map(|first| {
                let mut state = Dfs {
                    search: self,
                    suffix: &suffix,
                    global: &global,
                    ands: vec![vec![0u64; blocks]; list_size + 1],
                    picks: Vec::new(),
                    best: None,
                };
                state.ands[0].fill(u64::MAX);
                state.branch(first, list_size);
                state.best.map(|(r, picks)| (r, first, picks))
            })
            .min_by_key(|(r, first, _)| (*r, *first))
            .expect("some L-subset exists");

        let (radius, _, picks) = best;
        let words = self.code.words();
        let witness: Vec<Word> = picks
            .iter()
            .flat_map(|&(c, k)| self.classes[c][..k].iter().map(|&i| words[i].clone()))
            .collect();
        let center = chebyshev_center(&witness)?;
        Ok(RadiusCertificate {
            list_size,
            radius,
            witness,
            center,
            symmetry_reduced: self.symmetry_reduced,
        })
    }
}

struct Dfs<'s, 'a> {
    search: &'s RadiusSearch<'a>,
    suffix: &'s [usize],
    global: &'s AtomicUsize,
    // ands[d] is the AND of rows chosen at depth < d (in picked-row count)
    ands: Vec<Vec<u64>>,
    picks: Vec<(usize, usize)>,
    best: Option<(usize, Vec<(usize, usize)>)>,
}

impl Dfs<'_, '_> {
    fn local_best(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |b| b.0)
    }

    fn done(&self) -> bool {
        // distinct words always have radius at least 1
        self.local_best() <= 1
    }

    /// Chooses `k ≥ 1` rows from class `c`, then completes from later classes.
    fn branch(&mut self, c: usize, remaining: usize) {
        let chosen = self.picks.iter().map(|p| p.1).sum::<usize>();
        // the heaviest class picked sets the maximum weight
        let top = match self.picks.first() {
            Some(&(c0, _)) => self.search.class_weight[c0],
            None => self.search.class_weight[c],
        };
        let class = &self.search.classes[c];
        let words = self.search.code.words();
        for k in 1..=remaining.min(class.len()) {
            let depth = chosen + k;
            let (lo, hi) = self.ands.split_at_mut(depth);
            let prev = &lo[depth - 1];
            let row = words[class[k - 1]].blocks();
            let cur = &mut hi[0];
            let mut ones = 0usize;
            for ((d, p), r) in cur.iter_mut().zip(prev).zip(row) {
                *d = p & r;
                ones += d.count_ones() as usize;
            }
            let lb = top - ones;
            if lb >= self.local_best() || lb > self.global.load(Ordering::Relaxed) {
                break;
            }
            self.picks.push((c, k));
            if k == remaining {
                self.best = Some((lb, self.picks.clone()));
                self.global.fetch_min(lb, Ordering::Relaxed);
            } else {
                let need = remaining - k;
                let mut next = c + 1;
                while next < self.search.classes.len() && self.suffix[next] >= need {
                    self.branch(next, need);
                    if self.done() {
                        break;
                    }
                    next += 1;
                }
            }
            self.picks.pop();
            if self.done() {
                return;
            }
        }
    }
}

/// Transposes a 64×64 bit matrix stored as rows with bit 63 first.
fn transpose64(a: &mut [u64; 64]) {
    let mut j = 32;
    let mut m: u64 = 0x0000_0000_FFFF_FFFF;
    while j != 0 {
        let mut k = 0;
        while k < 64 {
            let t = (a[k] ^ (a[k + j] >> j)) & m;
            a[k] ^= t;
            a[k + j] ^= t << j;
            k = (k + j + 1) & !j;
        }
        j >>= 1;
        m ^= m << j;
    }
}

/// Column `p` as a bitset over rows: bit `r % 64` of word `r / 64`.
fn column_bitsets(words: &[Word], n: usize) -> Vec<Vec<u64>> {
    let row_blocks = words.len().div_ceil(64);
    let mut columns = vec![vec![0u64; row_blocks]; n];
    let mut tile = [0u64; 64];
    for rb in 0..row_blocks {
        for cb in 0..n.div_ceil(64) {
            for (k, slot) in tile.iter_mut().enumerate() {
                *slot = words.get(rb * 64 + k).map_or(0, |w| w.blocks()[cb]);
            }
            transpose64(&mut tile);
            for (j, &t) in tile.iter().enumerate() {
                if let Some(col) = columns.get_mut(cb * 64 + j) {
                    col[rb] = t.reverse_bits();
                }
            }
        }
    }
    columns
}

/// Groups rows that can be swapped without changing the code up to a
/// column permutation.
fn interchangeable_classes(code: &Code) -> Vec<Vec<usize>> {
    let words = code.words();
    let columns = column_bitsets(words, code.len());
    let swapped = |col: &[u64], a: usize, b: usize| -> Vec<u64> {
        let mut c = col.to_vec();
        c[a / 64] &= !(1u64 << (a % 64));
        c[b / 64] |= 1u64 << (b % 64);
        c
    };
    let interchangeable = |a: usize, b: usize| -> bool {
        let (wa, wb) = (words[a].blocks(), words[b].blocks());
        let mut only_a = Vec::new();
        let mut only_b = Vec::new();
        for (bi, (x, y)) in wa.iter().zip(wb).enumerate() {
            let mut d = x & !y;
            while d != 0 {
                let lead = d.leading_zeros() as usize;
                d &= !(1u64 << (63 - lead));
                only_a.push(swapped(&columns[bi * 64 + lead], a, b));
            }
            let mut d = y & !x;
            while d != 0 {
                let lead = d.leading_zeros() as usize;
                d &= !(1u64 << (63 - lead));
                only_b.push(columns[bi * 64 + lead].clone());
            }
        }
        if only_a.len() != only_b.len() {
            return false;
        }
        only_a.sort_unstable();
        only_b.sort_unstable();
        only_a == only_b
    };

    let mut by_weight: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        by_weight.entry(w.weight()).or_default().push(i);
    }
    let mut weights: Vec<usize> = by_weight.keys().copied().collect();
    weights.sort_unstable();

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut tests = 0usize;
    for wt in weights {
        let first_class = classes.len();
        for &row in &by_weight[&wt] {
            let mut placed = false;
            for class in classes[first_class..].iter_mut() {
                if tests >= MAX_SWAP_TESTS {
                    break;
                }
                tests += 1;
                if interchangeable(class[0], row) {
                    class.push(row);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![row]);
            }
        }
    }
    classes
}

/// True iff no Z-ball of radius `ceil(tau·n)` holds `L` or more codewords.
pub fn is_list_decodable(code: &Code, list_size: usize, tau: &Rational) -> Result<bool> {
    let t = radius_for(code, list_size, tau)?;
    if code.size() < list_size {
        return Ok(true);
    }
    Ok(list_decoding_radius(code, list_size)?.radius > t)
}

fn radius_for(code: &Code, list_size: usize, tau: &Rational) -> Result<usize> {
    if !in_unit_interval(tau) {
        return Err(Error::invalid(format!("tau {tau} outside [0, 1]")));
    }
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall {
            min: 2,
            got: list_size,
        });
    }
    Ok(ceil_times(tau, code.len()))
}

/// Largest word length accepted by [`is_list_decodable_exhaustive`].
pub const EXHAUSTIVE_MAX_N: usize = 14;

/// Same answer as [`is_list_decodable`], by counting codewords in the Z-ball
/// around every one of the `2^n` possible received words.
pub fn is_list_decodable_exhaustive(code: &Code, list_size: usize, tau: &Rational) -> Result<bool> {
    let t = radius_for(code, list_size, tau)?;
    let n = code.len();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::GuardExceeded {
            what: "word length for exhaustive centers",
            actual: n.to_string(),
            limit: EXHAUSTIVE_MAX_N.to_string(),
        });
    }
    let cw: Vec<(u64, u32)> = code
        .words()
        .iter()
        .map(|w| (w.to_u64(), w.weight() as u32))
        .collect();
    let bad = (0..1u64 << n).into_par_iter().any(|x| {
        let wx = x.count_ones();
        let inside = cw
            .iter()
            .filter(|&&(y, wy)| x & !y == 0 && (wy - wx) as usize <= t)
            .count();
        inside >= list_size
    });
    Ok(!bad)
}

/// True iff every pair of codewords is at Z-distance greater than `t`.
///
/// For constant-weight codes the answer is checked against the minimum
/// Hamming distance exceeding `2t`.
pub fn unique_decoding_check(code: &Code, t: usize) -> bool {
    let words = code.words();
    let ok = words.par_iter().enumerate().all(|(i, x)| {
        words[i + 1..]
            .iter()
            .all(|y| z_distance(x, y).expect("equal lengths") > t)
    });
    if code.is_constant_weight() {
        let ham_ok = words.par_iter().enumerate().all(|(i, x)| {
            words[i + 1..]
                .iter()
                .all(|y| hamming_distance(x, y).expect("equal lengths") > 2 * t)
        });
        assert_eq!(ok, ham_ok, "Z and Hamming criteria disagree on a constant-weight code");
    }
    ok
}

/// Smallest pairwise Z-distance, `None` when the code has fewer than two words.
pub fn min_z_distance(code: &Code) -> Option<usize> {
    let words = code.words();
    words
        .par_iter()
        .enumerate()
        .filter_map(|(i, x)| {
            words[i + 1..]
                .iter()
                .map(|y| z_distance(x, y).expect("equal lengths"))
                .min()
        })
        .min()
}
