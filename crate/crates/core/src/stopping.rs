//! Best-choice stopping on a randomly revealed tree.
//!
//! The nodes of a random host appear one at a time in uniformly random order and
//! the selector sees the order induced on what has appeared so far. Stopping on the
//! newest node wins when it is the host root. Given that the observed structure is
//! the tree `s` with the newest node on top, the win probability is `g_n(s)/a_n(s)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{complete_balanced, enumerate_family, FamilyId};
use crate::oracle::{self, count_in_family, induced_substructure, EmbedCount, Mode};
use crate::series::{GfEngine, Kind};
use crate::tree::{canonical_text, PlaneForest, PlaneTree};
use crate::Engine;

/// The selector's view at time `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessState {
    pub n: usize,
    pub t: usize,
    pub observed: PlaneForest,
}

impl ProcessState {
    pub fn new(n: usize, t: usize, observed: PlaneForest) -> Result<Self> {
        if t == 0 || t > n {
            return Err(Error::domain(format!("need 1 <= t <= n, got t = {t}, n = {n}")));
        }
        if observed.size() != t {
            return Err(Error::domain(format!(
                "observed structure has {} nodes but {t} elements were revealed",
                observed.size()
            )));
        }
        Ok(ProcessState { n, t, observed })
    }

    /// Stopping only makes sense when what was seen is connected.
    pub fn stopping_candidate(&self) -> Option<&PlaneTree> {
        self.observed.as_tree()
    }
}

/// Exact `(a_n(s), g_n(s))`, from the generating functions when they cover `s`
/// and from the oracle otherwise.
pub fn exact_counts(s: &PlaneTree, fam: FamilyId, n: usize) -> Result<(EmbedCount, Engine)> {
    if n == 0 {
        return Err(Error::domain("host size must be at least 1"));
    }
    if fam == FamilyId::NonplaneBinary && !s.is_motzkin() {
        return Ok((count_in_family(s, fam, n)?, Engine::Oracle));
    }
    let engine = GfEngine::new(n);
    let a = engine.series(s, fam, Kind::All)?;
    let g = engine.good_from_all(&a, fam);
    let to_nat = |x: &BigInt| x.to_biguint().ok_or_else(|| Error::Numeric("negative coefficient".into()));
    Ok((EmbedCount { all: to_nat(a.coeff(n))?, good: to_nat(g.coeff(n))? }, Engine::Series))
}

/// `g_n(s) / a_n(s)`.
pub fn best_choice_win_prob(s: &PlaneTree, fam: FamilyId, n: usize) -> Result<BigRational> {
    let (counts, _) = exact_counts(s, fam, n)?;
    ratio(&counts.good, &counts.all, || format!("{s} never embeds into {} trees of size {n}", fam.name()))
}

fn ratio(num: &BigUint, den: &BigUint, why: impl FnOnce() -> String) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::UndefinedProbability(why()));
    }
    Ok(BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone())))
}

/// Chance that the host is the complete tree of height `h`, given that `s` was
/// observed: `a_{T_b}(s) / a_{V_n}(s)` with `n = 2^{h+1} - 1`.
pub fn balanced_identification_prob(s: &PlaneForest, h: usize) -> Result<BigRational> {
    if h > 4 {
        return Err(Error::Resource(format!("height {h} is beyond the oracle's reach")));
    }
    let host = complete_balanced(h);
    let n = host.size();
    let fam = FamilyId::NonplaneBinary;
    let (num, den) = match s.as_tree() {
        Some(t) => (oracle::count_in_tree(t, &host, Mode::Nonplane), count_in_family(t, fam, n)?),
        None => (
            oracle::count_forest_in_tree(s, &host, Mode::Nonplane),
            oracle::count_forest_in_family(s, fam, n)?,
        ),
    };
    ratio(&num.all, &den.all, || format!("{s} never embeds into non-plane binary trees of size {n}"))
}

/// Outcome of [`simulate_best_choice`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationResult {
    pub trials: u64,
    /// Trials in which the first `|s|` revealed nodes induce `s` with the newest on top.
    pub hits: u64,
    /// Hits in which the newest node is the host root.
    pub successes: u64,
    pub estimate: Option<f64>,
    pub std_error: Option<f64>,
    /// No hits, so nothing was estimated.
    pub inconclusive: bool,
}

/// Monte Carlo estimate of the win probability.
///
/// Trial `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so results
/// depend only on `(seed, trials)`.
pub fn simulate_best_choice(
    fam: FamilyId,
    n: usize,
    s: &PlaneTree,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult> {
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let t = s.size();
    if t > n {
        return Err(Error::domain(format!("pattern of size {t} cannot be observed in a host of size {n}")));
    }
    let hosts = enumerate_family(fam, n)?;
    if hosts.is_empty() {
        return Err(Error::domain(format!("no {} trees of size {n}", fam.name())));
    }
    let mode = Mode::for_family(fam);
    let wanted = match mode {
        Mode::Plane => s.to_string(),
        Mode::Nonplane => canonical_text(s),
    };
    let mut hits = 0u64;
    let mut successes = 0u64;
    let mut nodes: Vec<usize> = (0..n).collect();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let host = &hosts[rng.gen_range(0..hosts.len())];
        nodes.sort_unstable();
        let (revealed, _) = nodes.partial_shuffle(&mut rng, t);
        let newest = revealed[t - 1];
        let Some(seen) = induced_substructure(host, revealed)?.as_tree().cloned() else {
            continue;
        };
        let code = match mode {
            Mode::Plane => seen.to_string(),
            Mode::Nonplane => canonical_text(&seen),
        };
        // Pre-order ids: the top of the observed tree is the smallest selected id.
        let newest_on_top = revealed.iter().all(|&v| v >= newest);
        if code != wanted || !newest_on_top {
            continue;
        }
        hits += 1;
        if newest == 0 {
            successes += 1;
        }
    }
    let (estimate, std_error) = if hits == 0 {
        (None, None)
    } else {
        let p = successes as f64 / hits as f64;
        (Some(p), Some((p * (1.0 - p) / hits as f64).sqrt()))
    };
    Ok(SimulationResult { trials, hits, successes, estimate, std_error, inconclusive: hits == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn win_probability_examples() {
        let cherry = PlaneTree::cherry();
        assert_eq!(best_choice_win_prob(&cherry, FamilyId::NonplaneBinary, 5).unwrap(), q(3, 4));
        assert_eq!(best_choice_win_prob(&cherry, FamilyId::PlaneBinary, 5).unwrap(), q(4, 5));
        assert_eq!(best_choice_win_prob(&PlaneTree::leaf(), FamilyId::PlaneBinary, 5).unwrap(), q(1, 5));
        assert!(matches!(
            best_choice_win_prob(&cherry, FamilyId::PlaneBinary, 2),
            Err(Error::UndefinedProbability(_))
        ));
    }

    #[test]
    fn balanced_examples() {
        let cherry: PlaneForest = "(()())".parse().unwrap();
        assert_eq!(balanced_identification_prob(&cherry, 1).unwrap(), q(1, 1));
        let p = balanced_identification_prob(&cherry, 2).unwrap();
        assert!(p > q(0, 1) && p <= q(1, 1));
        // a chain of four nodes needs height 3
        let chain: PlaneForest = "(((())))".parse().unwrap();
        assert_eq!(balanced_identification_prob(&chain, 2).unwrap(), q(0, 1));
    }

    #[test]
    fn simulation_is_reproducible() {
        let cherry = PlaneTree::cherry();
        let a = simulate_best_choice(FamilyId::PlaneBinary, 7, &cherry, 2000, 11).unwrap();
        let b = simulate_best_choice(FamilyId::PlaneBinary, 7, &cherry, 2000, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.hits > 0 && !a.inconclusive);
    }

    #[test]
    fn single_node_wins_with_uniform_root_position() {
        let r = simulate_best_choice(FamilyId::PlaneBinary, 7, &PlaneTree::leaf(), 20_000, 3).unwrap();
        assert_eq!(r.hits, r.trials);
        let p = r.estimate.unwrap();
        assert!((p - 1.0 / 7.0).abs() <= 3.0 * r.std_error.unwrap());
    }

    #[test]
    fn impossible_observation_is_inconclusive() {
        let r = simulate_best_choice(FamilyId::PlaneBinary, 5, &"(((())))".parse().unwrap(), 100, 1).unwrap();
        assert!(r.inconclusive && r.estimate.is_none());
    }

    #[test]
    fn process_state_checks() {
        let f: PlaneForest = "();()".parse().unwrap();
        let st = ProcessState::new(5, 2, f.clone()).unwrap();
        assert!(st.stopping_candidate().is_none());
        assert!(ProcessState::new(5, 3, f).is_err());
    }
}
