//! Z-channel simulation and an enumeration list decoder.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelMode {
    /// Each one is zeroed independently with probability `τ`.
    Stochastic,
    /// An adversary zeroes at most `⌈τn⌉` ones.
    Adversarial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub mode: ChannelMode,
    #[serde(with = "rational::serde_text")]
    pub tau: Rational,
    pub seed: u64,
}

impl ChannelParams {
    pub fn new(mode: ChannelMode, tau: Rational, seed: u64) -> Result<Self> {
        if !rational::in_unit_interval(&tau) {
            return Err(Error::invalid(format!("tau = {tau} outside [0, 1]")));
        }
        Ok(ChannelParams { mode, tau, seed })
    }

    /// Error budget `⌈τn⌉`.
    pub fn budget(&self, n: usize) -> usize {
        rational::ceil_times(&self.tau, n)
    }
}

/// Chooses which ones of the transmitted word to zero.
pub trait Adversary: Sync {
    /// Positions to zero; at most `budget` of them, all inside `supp(x)`.
    fn attack(&self, x: &Word, code: &Code, budget: usize, rng: &mut ChaCha8Rng) -> Vec<usize>;

    /// Index of the codeword to transmit.
    fn choose_input(&self, code: &Code, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..code.size())
    }
}

/// Repeatedly intersects the received support with the codeword that keeps
/// the decoded list largest while staying inside the budget.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyConfusion;

impl Adversary for GreedyConfusion {
    fn attack(&self, x: &Word, code: &Code, budget: usize, _rng: &mut ChaCha8Rng) -> Vec<usize> {
        let wx = x.weight();
        let mut y = x.clone();
        let mut best = (list_decode(&y, code, budget).len(), y.clone());
        loop {
            let mut step: Option<(usize, usize, Word)> = None;
            for c in code.words() {
                if y.is_subset_of(c).expect("equal lengths") {
                    continue;
                }
                let next = y.and(c).expect("equal lengths");
                if wx - next.weight() > budget {
                    continue;
                }
                let size = list_decode(&next, code, budget).len();
                let cost = y.weight() - next.weight();
                let better = match &step {
                    None => true,
                    Some((s, k, _)) => size > *s || (size == *s && cost < *k),
                };
                if better {
                    step = Some((size, cost, next));
                }
            }
            match step {
                Some((size, _, next)) => {
                    if size > best.0 {
                        best = (size, next.clone());
                    }
                    y = next;
                }
                None => break,
            }
        }
        x.support().filter(|&i| !best.1.get(i)).collect()
    }
}

/// Zeroes `min(budget, wt(x))` uniformly random ones.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomZeros;

impl Adversary for RandomZeros {
    fn attack(&self, x: &Word, _code: &Code, budget: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let support: Vec<usize> = x.support().collect();
        let k = budget.min(support.len());
        index::sample(rng, support.len(), k)
            .into_iter()
            .map(|i| support[i])
            .collect()
    }
}

/// Sends one of `inputs` and pushes it down to `center`, as a radius
/// certificate's witness list prescribes.
#[derive(Debug, Clone)]
pub struct TargetCenter {
    pub center: Word,
    pub inputs: Vec<Word>,
}

impl Adversary for TargetCenter {
    fn attack(&self, x: &Word, _code: &Code, budget: usize, _rng: &mut ChaCha8Rng) -> Vec<usize> {
        let zeros: Vec<usize> = x.support().filter(|&i| !self.center.get(i)).collect();
        if zeros.len() <= budget && self.center.is_subset_of(x).unwrap_or(false) {
            zeros
        } else {
            Vec::new()
        }
    }

    fn choose_input(&self, code: &Code, rng: &mut ChaCha8Rng) -> usize {
        let pick = &self.inputs[rng.gen_range(0..self.inputs.len())];
        code.words()
            .iter()
            .position(|c| c == pick)
            .expect("target inputs are codewords")
    }
}

/// Passes `x` through the channel. `adversary` is consulted only in
/// adversarial mode; `None` there means [`GreedyConfusion`].
pub fn transmit(
    x: &Word,
    code: &Code,
    params: &ChannelParams,
    adversary: Option<&dyn Adversary>,
    rng: &mut ChaCha8Rng,
) -> Word {
    let mut y = x.clone();
    match params.mode {
        ChannelMode::Stochastic => {
            let p = rational::to_f64(&params.tau);
            let support: Vec<usize> = x.support().collect();
            for i in support {
                if rng.gen_bool(p) {
                    y.set(i, false);
                }
            }
        }
        ChannelMode::Adversarial => {
            let budget = params.budget(x.len());
            let adv = adversary.unwrap_or(&GreedyConfusion);
            let positions = adv.attack(x, code, budget, rng);
            assert!(positions.len() <= budget, "adversary exceeded its budget");
            for i in positions {
                assert!(x.get(i), "adversary may only zero ones");
                y.set(i, false);
            }
        }
    }
    y
}

/// All codewords `c` with `supp(y) ⊆ supp(c)` and `wt(c) − wt(y) ≤ t`.
pub fn list_decode(y: &Word, code: &Code, t: usize) -> Vec<Word> {
    let wy = y.weight();
    code.words()
        .iter()
        .filter(|c| c.weight() <= wy + t && y.is_subset_of(c).unwrap_or(false))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub trials: usize,
    pub max_list: usize,
    /// Trials whose decoded list held `L` or more codewords.
    pub violations: usize,
    /// Zeroed ones over transmitted ones.
    pub empirical_tau: f64,
    pub budget: usize,
    pub list_size: usize,
    /// Trials whose list contained the sent codeword.
    pub sent_recovered: usize,
    /// Trials whose list held codewords other than the sent one.
    pub with_extra: usize,
}

/// Runs `trials` independent transmissions, decoding each at radius
/// `⌈τn⌉`. Trial `i` draws from stream `i` of the seeded generator.
pub fn campaign(
    code: &Code,
    list_size: usize,
    params: &ChannelParams,
    adversary: Option<&dyn Adversary>,
    trials: usize,
) -> Result<CampaignReport> {
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    if code.is_empty() {
        return Err(Error::EmptyList);
    }
    if list_size < 2 {
        return Err(Error::ListSizeTooSmall {
            min: 2,
            got: list_size,
        });
    }
    let t = params.budget(code.len());
    let default = GreedyConfusion;
    let adv: &dyn Adversary = adversary.unwrap_or(&default);
    let outcomes: Vec<(usize, usize, usize, bool)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(trial as u64);
            let x = &code.words()[adv.choose_input(code, &mut rng)];
            let y = transmit(x, code, params, Some(adv), &mut rng);
            let list = list_decode(&y, code, t);
            let zeroed = x.weight() - y.weight();
            (list.len(), zeroed, x.weight(), list.contains(x))
        })
        .collect();
    let ones: usize = outcomes.iter().map(|o| o.2).sum();
    let zeroed: usize = outcomes.iter().map(|o| o.1).sum();
    Ok(CampaignReport {
        trials,
        max_list: outcomes.iter().map(|o| o.0).max().unwrap_or(0),
        violations: outcomes.iter().filter(|o| o.0 >= list_size).count(),
        empirical_tau: if ones == 0 { 0.0 } else { zeroed as f64 / ones as f64 },
        budget: t,
        list_size,
        sent_recovered: outcomes.iter().filter(|o| o.3).count(),
        with_extra: outcomes
            .iter()
            .filter(|o| o.0 > usize::from(o.3))
            .count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{balanced_code, BalancedParams};

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn zero_tau_is_noiseless() {
        let code = Code::parse(&["1101", "0110"]).unwrap();
        for mode in [ChannelMode::Stochastic, ChannelMode::Adversarial] {
            let p = ChannelParams::new(mode, Rational::from_integer(0), 1).unwrap();
            let x = &code.words()[0];
            assert_eq!(&transmit(x, &code, &p, None, &mut rng()), x);
        }
    }

    #[test]
    fn full_tau_zeroes_everything() {
        let code = Code::parse(&["1111"]).unwrap();
        let p = ChannelParams::new(ChannelMode::Stochastic, Rational::from_integer(1), 1).unwrap();
        let y = transmit(&code.words()[0], &code, &p, None, &mut rng());
        assert_eq!(y, Word::zeros(4));
    }

    #[test]
    fn greedy_forces_ambiguity() {
        let code = Code::parse(&["110", "010"]).unwrap();
        let p = ChannelParams::new(ChannelMode::Adversarial, Rational::new(1, 3), 1).unwrap();
        let x: Word = "110".parse().unwrap();
        let y = transmit(&x, &code, &p, None, &mut rng());
        assert_eq!(y.to_string(), "010");
        assert_eq!(list_decode(&y, &code, 1).len(), 2);
    }

    #[test]
    fn decoder_examples() {
        let code = balanced_code(&BalancedParams::new(2, Rational::new(1, 2)).unwrap()).unwrap();
        let rows = code.words();
        let y = rows[0].and(&rows[1]).unwrap();
        assert_eq!(y.weight(), 1);
        assert_eq!(list_decode(&y, &code, 2).len(), 2);
        assert_eq!(list_decode(&rows[2], &code, 0), vec![rows[2].clone()]);
        let z = Word::zeros(code.len());
        assert_eq!(list_decode(&z, &code, code.len()).len(), code.size());
    }

    #[test]
    fn campaign_is_deterministic_and_sound() {
        let code = balanced_code(&BalancedParams::new(2, Rational::new(1, 2)).unwrap()).unwrap();
        // radius for L = 2 is 2, so budget 1 is safe
        let p = ChannelParams::new(ChannelMode::Adversarial, Rational::new(1, 6), 9).unwrap();
        let a = campaign(&code, 2, &p, None, 200).unwrap();
        let b = campaign(&code, 2, &p, Some(&RandomZeros), 200).unwrap();
        assert_eq!(a.violations, 0);
        assert_eq!(b.violations, 0);
        assert_eq!(a, campaign(&code, 2, &p, None, 200).unwrap());
        assert_eq!(a.sent_recovered, 200);
    }
}
