//! Direct-link discovery and pairing.
//!
//! Discovery selects the potential direct links whose interference-free rate
//! clears the per-user requirement (with a safety margin `ε` when rates are
//! estimated). Pairing then picks the subset of candidates that maximizes
//! the sum rate while keeping every scheduled user — cellular ones included —
//! above its requirement. Both pairing routines are generic over a rate
//! oracle `(receiver, members) -> rate`, so the same code serves true and
//! estimated rates.

use crate::channel::GainMatrix;
use crate::estimators::GainEstimate;
use crate::rates::{estimated_rate, rate, PowerProfile};
use crate::{Error, Result};

/// Which rates vouched for the feasibility of a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibleUnder {
    TrueRates,
    EstimatedRates,
    /// Returned for the guaranteed cellular-only fallback when even it fails
    /// the oracle's margin check.
    Unchecked,
}

/// A scheduling decision: the sorted member set, always containing the
/// cellular set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulingDecision {
    members: Vec<usize>,
    cellular: Vec<usize>,
    pub feasible_under: FeasibleUnder,
}

impl SchedulingDecision {
    /// Build a decision from member and cellular sets; both are sorted and
    /// deduplicated, and the cellular set must be contained in the members.
    pub fn new(
        members: impl IntoIterator<Item = usize>,
        cellular: impl IntoIterator<Item = usize>,
        feasible_under: FeasibleUnder,
    ) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let mut cellular: Vec<usize> = cellular.into_iter().collect();
        cellular.sort_unstable();
        cellular.dedup();
        if !cellular.iter().all(|c| members.binary_search(c).is_ok()) {
            return Err(Error::CellularNotIncluded);
        }
        Ok(Self {
            members,
            cellular,
            feasible_under,
        })
    }

    /// Scheduled users, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Cellular users, ascending.
    pub fn cellular(&self) -> &[usize] {
        &self.cellular
    }

    /// Scheduled direct links (members minus the cellular set), ascending.
    pub fn direct_links(&self) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|m| self.cellular.binary_search(m).is_err())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Which knowledge produced a discovery result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscoveryBasis {
    Perfect,
    Estimated,
}

/// Direct-link candidates found by discovery; disjoint from the cellular set.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscoveryResult {
    pub candidates: Vec<usize>,
    pub epsilon: f64,
    pub basis: DiscoveryBasis,
}

/// Discovery from perfect knowledge: users outside the cellular set whose
/// interference-free rate meets their requirement.
pub fn discover_perfect(
    x: &GainMatrix,
    cellular: &[usize],
    rbar: &[f64],
    pp: &PowerProfile,
) -> DiscoveryResult {
    let candidates = (0..x.n_nodes())
        .filter(|i| !cellular.contains(i))
        .filter(|&i| rate(x, i, &[i], pp).expect("singleton decision") >= rbar[i])
        .collect();
    DiscoveryResult {
        candidates,
        epsilon: 0.0,
        basis: DiscoveryBasis::Perfect,
    }
}

/// Discovery from estimated gains with safety margin `eps`: users outside
/// the cellular set whose estimated interference-free rate clears
/// `r̄_i + ε`. When `ε` upper-bounds the realized rate gaps, every candidate
/// found here is a true candidate.
pub fn discover_estimated(
    ests: &[GainEstimate],
    cellular: &[usize],
    rbar: &[f64],
    pp: &PowerProfile,
    eps: f64,
) -> DiscoveryResult {
    assert!(eps >= 0.0, "margin must be non-negative");
    let candidates = (0..ests.len())
        .filter(|i| !cellular.contains(i))
        .filter(|&i| {
            estimated_rate(&ests[i], i, &[i], pp).expect("singleton decision") >= rbar[i] + eps
        })
        .collect();
    DiscoveryResult {
        candidates,
        epsilon: eps,
        basis: DiscoveryBasis::Estimated,
    }
}

/// Default candidate cap of the exhaustive search (65536 subsets).
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 16;

/// Relative tolerance treating two sum rates as tied.
const TIE_EPS: f64 = 1e-12;

struct PairingBest {
    sum: f64,
    members: Vec<usize>,
    n_direct: usize,
}

fn better(candidate_sum: f64, candidate: &[usize], n_direct: usize, best: &PairingBest) -> bool {
    let tie = (candidate_sum - best.sum).abs() <= TIE_EPS * best.sum.abs().max(1.0);
    if !tie {
        return candidate_sum > best.sum;
    }
    // Tie: prefer fewer direct links, then the lexicographically smaller set.
    n_direct < best.n_direct || (n_direct == best.n_direct && candidate < best.members.as_slice())
}

/// Evaluate one member set under the oracle. Returns the sum rate when every
/// member clears `r̄_i + ε`, `None` otherwise.
fn feasible_sum(
    oracle: &impl Fn(usize, &[usize]) -> f64,
    members: &[usize],
    rbar: &[f64],
    eps: f64,
) -> Option<f64> {
    let mut sum = 0.0;
    for &i in members {
        let r = oracle(i, members);
        if r < rbar[i] + eps {
            return None;
        }
        sum += r;
    }
    Some(sum)
}

/// Exhaustive pairing: enumerate every subset of `candidates`, keep those
/// whose union with the cellular set is feasible at margin `eps` under the
/// oracle, and return the one with the largest sum rate. Ties prefer fewer
/// direct links, then the lexicographically smallest set. The cellular-only
/// decision is the guaranteed fallback.
pub fn pair_exhaustive(
    oracle: impl Fn(usize, &[usize]) -> f64,
    cellular: &[usize],
    candidates: &[usize],
    rbar: &[f64],
    eps: f64,
    basis: FeasibleUnder,
) -> Result<SchedulingDecision> {
    pair_exhaustive_with_cap(oracle, cellular, candidates, rbar, eps, basis, DEFAULT_EXHAUSTIVE_CAP)
}

/// [`pair_exhaustive`] with an explicit candidate cap.
pub fn pair_exhaustive_with_cap(
    oracle: impl Fn(usize, &[usize]) -> f64,
    cellular: &[usize],
    candidates: &[usize],
    rbar: &[f64],
    eps: f64,
    basis: FeasibleUnder,
    cap: usize,
) -> Result<SchedulingDecision> {
    if candidates.len() > cap {
        return Err(Error::CandidateCapExceeded {
            candidates: candidates.len(),
            cap,
        });
    }
    let mut sorted_candidates: Vec<usize> = candidates.to_vec();
    sorted_candidates.sort_unstable();
    let mut best: Option<PairingBest> = None;

    for mask in 0u64..(1u64 << sorted_candidates.len()) {
        let mut members: Vec<usize> = cellular.to_vec();
        for (bit, &c) in sorted_candidates.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                members.push(c);
            }
        }
        members.sort_unstable();
        members.dedup();
        let Some(sum) = feasible_sum(&oracle, &members, rbar, eps) else {
            continue;
        };
        let n_direct = mask.count_ones() as usize;
        let replace = match &best {
            None => true,
            Some(b) => better(sum, &members, n_direct, b),
        };
        if replace {
            best = Some(PairingBest {
                sum,
                members,
                n_direct,
            });
        }
    }

    match best {
        Some(b) => SchedulingDecision::new(b.members, cellular.iter().copied(), basis),
        // Even the cellular-only set failed the margin check; return it
        // anyway as the protocol's fallback, marked unchecked.
        None => SchedulingDecision::new(
            cellular.iter().copied(),
            cellular.iter().copied(),
            FeasibleUnder::Unchecked,
        ),
    }
}

/// Greedy pairing: walk the candidates by descending interference-free rate
/// and keep each one whose addition leaves every current member feasible at
/// margin `eps`. Always returns a decision; its sum rate never exceeds the
/// exhaustive optimum.
pub fn pair_greedy(
    oracle: impl Fn(usize, &[usize]) -> f64,
    cellular: &[usize],
    candidates: &[usize],
    rbar: &[f64],
    eps: f64,
    basis: FeasibleUnder,
) -> SchedulingDecision {
    let mut order: Vec<usize> = candidates.to_vec();
    order.sort_unstable();
    order.dedup();
    // Descending single-link rate; ascending index on ties.
    let mut keyed: Vec<(f64, usize)> = order.into_iter().map(|c| (oracle(c, &[c]), c)).collect();
    keyed.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));

    let mut members: Vec<usize> = cellular.to_vec();
    members.sort_unstable();
    members.dedup();
    for (_, c) in keyed {
        if members.binary_search(&c).is_ok() {
            continue;
        }
        let mut trial = members.clone();
        let pos = trial.binary_search(&c).unwrap_err();
        trial.insert(pos, c);
        if feasible_sum(&oracle, &trial, rbar, eps).is_some() {
            members = trial;
        }
    }

    let feasible = feasible_sum(&oracle, &members, rbar, eps).is_some();
    SchedulingDecision::new(
        members,
        cellular.iter().copied(),
        if feasible { basis } else { FeasibleUnder::Unchecked },
    )
    .expect("cellular set is always included")
}

/// True when every member's oracle rate clears its requirement plus
/// `margin`.
pub fn is_feasible(
    oracle: impl Fn(usize, &[usize]) -> f64,
    decision: &SchedulingDecision,
    rbar: &[f64],
    margin: f64,
) -> Result<bool> {
    if !decision
        .cellular()
        .iter()
        .all(|c| decision.members().binary_search(c).is_ok())
    {
        return Err(Error::CellularNotIncluded);
    }
    Ok(feasible_sum(&oracle, decision.members(), rbar, margin).is_some())
}

/// Rate oracle backed by the true gains.
pub fn true_rate_oracle<'a>(
    x: &'a GainMatrix,
    pp: &'a PowerProfile,
) -> impl Fn(usize, &[usize]) -> f64 + 'a {
    move |i, members| rate(x, i, members, pp).expect("member of its own decision")
}

/// Rate oracle backed by per-receiver gain estimates (indexed by receiver).
pub fn estimated_rate_oracle<'a>(
    ests: &'a [GainEstimate],
    pp: &'a PowerProfile,
) -> impl Fn(usize, &[usize]) -> f64 + 'a {
    move |i, members| estimated_rate(&ests[i], i, members, pp).expect("member of its own decision")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{gain_matrix, gen_group_channels, GainMatrix, GroupModelConfig};
    use crate::estimators::GainEstimate;
    use crate::rates::rate_gap;
    use crate::seed::{derive, rng_from};
    use nalgebra::DMatrix;
    use rand::Rng;

    fn true_estimates(x: &GainMatrix) -> Vec<GainEstimate> {
        (0..x.n_nodes())
            .map(|i| GainEstimate::from_true_gains(x, i))
            .collect()
    }

    #[test]
    fn zero_requirement_discovers_everyone_outside_cellular() {
        let h = gen_group_channels(&GroupModelConfig::iid(6, 3)).unwrap();
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(6, 1.0);
        let found = discover_perfect(&x, &[1, 4], &[0.0; 6], &pp);
        assert_eq!(found.candidates, vec![0, 2, 3, 5]);
    }

    #[test]
    fn infinite_requirement_discovers_nobody() {
        let h = gen_group_channels(&GroupModelConfig::iid(5, 4)).unwrap();
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(5, 1.0);
        let found = discover_perfect(&x, &[], &[f64::INFINITY; 5], &pp);
        assert!(found.candidates.is_empty());
        let found = discover_estimated(&true_estimates(&x), &[], &[0.0; 5], &pp, f64::INFINITY);
        assert!(found.candidates.is_empty());
    }

    #[test]
    fn discovery_matches_per_user_hand_evaluation() {
        let mut rng = rng_from(81);
        for t in 0..100u64 {
            let n = 8;
            let h = gen_group_channels(&GroupModelConfig::iid(n, derive(82, t))).unwrap();
            let x = gain_matrix(&h);
            let p = rng.random_range(0.5..20.0);
            let pp = PowerProfile::uniform(n, p);
            let rbar: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
            let found = discover_perfect(&x, &[0], &rbar, &pp);
            for i in 1..n {
                let expected = (1.0 + p * x.entry(i, i)).ln() >= rbar[i];
                assert_eq!(found.candidates.contains(&i), expected);
            }
        }
    }

    #[test]
    fn estimated_discovery_with_truth_and_zero_margin_matches_perfect() {
        let h = gen_group_channels(&GroupModelConfig::iid(7, 5)).unwrap();
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(7, 2.0);
        let rbar = vec![0.3; 7];
        let perfect = discover_perfect(&x, &[2], &rbar, &pp);
        let estimated = discover_estimated(&true_estimates(&x), &[2], &rbar, &pp, 0.0);
        assert_eq!(perfect.candidates, estimated.candidates);
    }

    #[test]
    fn margin_shrinks_discovery_monotonically() {
        let h = gen_group_channels(&GroupModelConfig::iid(10, 6)).unwrap();
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(10, 5.0);
        let ests = true_estimates(&x);
        let rbar = vec![0.2; 10];
        let mut prev = usize::MAX;
        for eps in [0.0, 0.1, 0.5, 1.0, 3.0] {
            let found = discover_estimated(&ests, &[], &rbar, &pp, eps);
            assert!(found.candidates.len() <= prev);
            prev = found.candidates.len();
        }
    }

    #[test]
    fn margin_covering_the_gap_makes_discovery_sound() {
        // With eps >= max interference-free gap, estimated discovery only
        // returns true candidates.
        let mut rng = rng_from(83);
        for t in 0..1000u64 {
            let n = 6;
            let h = gen_group_channels(&GroupModelConfig::iid(n, derive(84, t))).unwrap();
            let x = gain_matrix(&h);
            let pp = PowerProfile::uniform(n, 4.0);
            // Noisy estimates: truth times a random factor.
            let ests: Vec<GainEstimate> = (0..n)
                .map(|i| GainEstimate {
                    receiver: i,
                    gains: x.receiver_gains(i).map(|g| g * rng.random_range(0.5..1.5)),
                })
                .collect();
            let eps = (0..n)
                .map(|i| rate_gap(&x, &ests[i], i, &[i], &pp).unwrap().gap)
                .fold(0.0, f64::max);
            let rbar = vec![rng.random_range(0.0..1.0); n];
            let perfect = discover_perfect(&x, &[], &rbar, &pp);
            let estimated = discover_estimated(&ests, &[], &rbar, &pp, eps);
            for c in &estimated.candidates {
                assert!(perfect.candidates.contains(c), "trial {t}: {c} unsound");
            }
        }
    }

    #[test]
    fn empty_candidates_fall_back_to_cellular_set() {
        let h = gen_group_channels(&GroupModelConfig::iid(4, 7)).unwrap();
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(4, 1.0);
        let oracle = true_rate_oracle(&x, &pp);
        let rbar = vec![0.0; 4];
        let s = pair_exhaustive(&oracle, &[0, 2], &[], &rbar, 0.0, FeasibleUnder::TrueRates)
            .unwrap();
        assert_eq!(s.members(), &[0, 2]);
        let s = pair_greedy(&oracle, &[0, 2], &[], &rbar, 0.0, FeasibleUnder::TrueRates);
        assert_eq!(s.members(), &[0, 2]);
    }

    #[test]
    fn beneficial_single_candidate_is_included() {
        // Two nodes that do not interfere: adding the candidate raises the sum.
        let x = GainMatrix::from_gains(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]))
            .unwrap();
        let pp = PowerProfile::uniform(2, 1.0);
        let oracle = true_rate_oracle(&x, &pp);
        let s = pair_exhaustive(&oracle, &[0], &[1], &[0.0, 0.0], 0.0, FeasibleUnder::TrueRates)
            .unwrap();
        assert_eq!(s.members(), &[0, 1]);
        assert_eq!(s.direct_links(), vec![1]);
    }

    #[test]
    fn cap_overflow_is_reported() {
        let x = GainMatrix::from_gains(DMatrix::identity(20, 20)).unwrap();
        let pp = PowerProfile::uniform(20, 1.0);
        let oracle = true_rate_oracle(&x, &pp);
        let candidates: Vec<usize> = (0..18).collect();
        assert!(matches!(
            pair_exhaustive(&oracle, &[], &candidates, &[0.0; 20], 0.0, FeasibleUnder::TrueRates),
            Err(Error::CandidateCapExceeded { candidates: 18, cap: 16 })
        ));
    }

    /// Second, independently-coded enumerator: recursive inclusion/exclusion
    /// instead of bitmasks, tracking only the best feasible sum.
    fn best_feasible_sum_recursive(
        oracle: &impl Fn(usize, &[usize]) -> f64,
        cellular: &[usize],
        candidates: &[usize],
        rbar: &[f64],
        eps: f64,
    ) -> Option<f64> {
        fn recurse(
            oracle: &impl Fn(usize, &[usize]) -> f64,
            cellular: &[usize],
            remaining: &[usize],
            chosen: &mut Vec<usize>,
            rbar: &[f64],
            eps: f64,
            best: &mut Option<f64>,
        ) {
            match remaining.split_first() {
                None => {
                    let mut members: Vec<usize> = cellular.iter().copied().collect();
                    members.extend(chosen.iter().copied());
                    members.sort_unstable();
                    members.dedup();
                    let mut sum = 0.0;
                    for &i in &members {
                        let r = oracle(i, &members);
                        if r < rbar[i] + eps {
                            return;
                        }
                        sum += r;
                    }
                    if best.map_or(true, |b| sum > b) {
                        *best = Some(sum);
                    }
                }
                Some((&first, rest)) => {
                    recurse(oracle, cellular, rest, chosen, rbar, eps, best);
                    chosen.push(first);
                    recurse(oracle, cellular, rest, chosen, rbar, eps, best);
                    chosen.pop();
                }
            }
        }
        let mut best = None;
        recurse(oracle, cellular, candidates, &mut Vec::new(), rbar, eps, &mut best);
        best
    }

    #[test]
    fn exhaustive_matches_independent_enumerator() {
        let mut rng = rng_from(85);
        for t in 0..50u64 {
            let n = 4 + (t % 7) as usize; // up to 10
            let h = gen_group_channels(&GroupModelConfig::iid(n, derive(86, t))).unwrap();
            let x = gain_matrix(&h);
            let pp = PowerProfile::uniform(n, rng.random_range(0.5..8.0));
            let rbar: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..0.6)).collect();
            let cellular: Vec<usize> = if t % 3 == 0 { vec![0] } else { vec![] };
            let candidates: Vec<usize> = (0..n)
                .filter(|i| !cellular.contains(i))
                .filter(|_| rng.random_range(0..3) > 0)
                .collect();
            let oracle = true_rate_oracle(&x, &pp);
            let decision =
                pair_exhaustive(&oracle, &cellular, &candidates, &rbar, 0.0, FeasibleUnder::TrueRates)
                    .unwrap();
            let sum: f64 = decision
                .members()
                .iter()
                .map(|&i| oracle(i, decision.members()))
                .sum();
            let expect =
                best_feasible_sum_recursive(&oracle, &cellular, &candidates, &rbar, 0.0);
            match expect {
                Some(expected) => assert!(
                    (sum - expected).abs() <= 1e-9 * expected.abs().max(1.0),
                    "trial {t}: {sum} vs {expected}"
                ),
                None => assert_eq!(decision.feasible_under, FeasibleUnder::Unchecked),
            }
        }
    }

    #[test]
    fn exhaustive_is_invariant_to_candidate_order() {
        let h = gen_group_channels(&GroupModelConfig::iid(9, 90)).unwrap();
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(9, 3.0);
        let rbar = vec![0.25; 9];
        let oracle = true_rate_oracle(&x, &pp);
        let a = pair_exhaustive(&oracle, &[1], &[2, 4, 5, 7, 8], &rbar, 0.0, FeasibleUnder::TrueRates)
            .unwrap();
        let b = pair_exhaustive(&oracle, &[1], &[8, 5, 2, 7, 4], &rbar, 0.0, FeasibleUnder::TrueRates)
            .unwrap();
        assert_eq!(a.members(), b.members());
    }

    #[test]
    fn greedy_equals_exhaustive_without_interference() {
        let n = 6;
        let x = GainMatrix::from_gains(DMatrix::identity(n, n)).unwrap();
        let pp = PowerProfile::uniform(n, 2.0);
        let rbar = vec![0.1; n];
        let oracle = true_rate_oracle(&x, &pp);
        let candidates: Vec<usize> = (1..n).collect();
        let greedy = pair_greedy(&oracle, &[0], &candidates, &rbar, 0.0, FeasibleUnder::TrueRates);
        let exhaustive =
            pair_exhaustive(&oracle, &[0], &candidates, &rbar, 0.0, FeasibleUnder::TrueRates)
                .unwrap();
        assert_eq!(greedy.members(), exhaustive.members());
    }

    #[test]
    fn greedy_never_beats_exhaustive_and_stays_feasible() {
        let mut rng = rng_from(87);
        for t in 0..200u64 {
            let n = 5 + (t % 8) as usize; // up to 12
            let h = gen_group_channels(&GroupModelConfig::iid(n, derive(88, t))).unwrap();
            let x = gain_matrix(&h);
            let pp = PowerProfile::uniform(n, rng.random_range(1.0..6.0));
            let rbar: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..0.5)).collect();
            let candidates: Vec<usize> = (1..n).collect();
            let oracle = true_rate_oracle(&x, &pp);
            let greedy =
                pair_greedy(&oracle, &[0], &candidates, &rbar, 0.0, FeasibleUnder::TrueRates);
            let exhaustive =
                pair_exhaustive(&oracle, &[0], &candidates, &rbar, 0.0, FeasibleUnder::TrueRates)
                    .unwrap();
            let sum = |d: &SchedulingDecision| -> f64 {
                d.members().iter().map(|&i| oracle(i, d.members())).sum()
            };
            if greedy.feasible_under != FeasibleUnder::Unchecked {
                assert!(is_feasible(&oracle, &greedy, &rbar, 0.0).unwrap());
                assert!(sum(&greedy) <= sum(&exhaustive) + 1e-9, "trial {t}");
            }
            assert!(greedy.members().starts_with(&[0]) || greedy.members().contains(&0));
        }
    }

    #[test]
    fn feasibility_margin_is_monotone() {
        let h = gen_group_channels(&GroupModelConfig::iid(5, 91)).unwrap();
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(5, 2.0);
        let rbar = vec![0.05; 5];
        let oracle = true_rate_oracle(&x, &pp);
        let decision =
            pair_exhaustive(&oracle, &[0], &[1, 2, 3, 4], &rbar, 0.0, FeasibleUnder::TrueRates)
                .unwrap();
        let mut last = true;
        for margin in [0.0, 0.05, 0.2, 0.8, 2.0] {
            let now = is_feasible(&oracle, &decision, &rbar, margin).unwrap();
            // once infeasible, stays infeasible as the margin grows
            assert!(now <= last);
            last = now;
        }
    }

    #[test]
    fn below_threshold_member_fails_feasibility() {
        let x = GainMatrix::from_gains(DMatrix::identity(3, 3)).unwrap();
        let pp = PowerProfile::uniform(3, 1.0);
        let oracle = true_rate_oracle(&x, &pp);
        let decision =
            SchedulingDecision::new([0, 1], [0], FeasibleUnder::Unchecked).unwrap();
        // rate of each member alone is ln(2); requirement 1.0 fails.
        assert!(!is_feasible(&oracle, &decision, &[1.0, 1.0, 1.0], 0.0).unwrap());
        assert!(is_feasible(&oracle, &decision, &[0.5, 0.5, 0.5], 0.0).unwrap());
    }

    #[test]
    fn decision_requires_cellular_membership() {
        assert!(matches!(
            SchedulingDecision::new([1, 2], [0], FeasibleUnder::Unchecked),
            Err(Error::CellularNotIncluded)
        ));
    }
}
