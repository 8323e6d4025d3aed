//! Single-relay selection rules.
//!
//! Both rules consume the instantaneous exact SNR pair of every relay. Ties
//! always resolve to the lowest relay index.

use serde::{Deserialize, Serialize};

use crate::analysis::{q_unchecked, ModulationConstant};
use crate::{Error, Result};

/// Which selection rule a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionRule {
    /// Minimize the sum of the two conditional SERs.
    Optimal,
    /// Maximize the smaller of the two SNRs.
    MinMax,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionOutcome {
    pub relay_index: usize,
    pub gammas: Vec<(f64, f64)>,
    /// Sum-SER of the chosen relay for [`SelectionRule::Optimal`], its
    /// smaller SNR for [`SelectionRule::MinMax`].
    pub criterion_value: f64,
}

/// Sum of conditional SERs `Q(√(c γ1)) + Q(√(c γ2))`.
#[inline]
pub fn sum_ser(gammas: (f64, f64), c: ModulationConstant) -> f64 {
    let c = c.value();
    q_unchecked((c * gammas.0).sqrt()) + q_unchecked((c * gammas.1).sqrt())
}

fn non_empty(gammas: &[(f64, f64)]) -> Result<()> {
    if gammas.is_empty() {
        Err(Error::domain("relay selection needs at least one relay"))
    } else {
        Ok(())
    }
}

/// Relay minimizing the sum of both sources' conditional SERs.
pub fn select_optimal(gammas: &[(f64, f64)], c: ModulationConstant) -> Result<SelectionOutcome> {
    non_empty(gammas)?;
    let (relay_index, criterion_value) = optimal_index(gammas, c);
    Ok(SelectionOutcome {
        relay_index,
        gammas: gammas.to_vec(),
        criterion_value,
    })
}

/// Relay maximizing `min(γ1, γ2)`.
pub fn select_minmax(gammas: &[(f64, f64)]) -> Result<SelectionOutcome> {
    non_empty(gammas)?;
    let (relay_index, criterion_value) = minmax_index(gammas);
    Ok(SelectionOutcome {
        relay_index,
        gammas: gammas.to_vec(),
        criterion_value,
    })
}

pub fn select(rule: SelectionRule, gammas: &[(f64, f64)], c: ModulationConstant) -> Result<SelectionOutcome> {
    match rule {
        SelectionRule::Optimal => select_optimal(gammas, c),
        SelectionRule::MinMax => select_minmax(gammas),
    }
}

#[inline]
pub(crate) fn optimal_index(gammas: &[(f64, f64)], c: ModulationConstant) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (k, &g) in gammas.iter().enumerate() {
        let v = sum_ser(g, c);
        if v < best.1 {
            best = (k, v);
        }
    }
    best
}

#[inline]
pub(crate) fn minmax_index(gammas: &[(f64, f64)]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (k, &(g1, g2)) in gammas.iter().enumerate() {
        let v = g1.min(g2);
        if v > best.1 {
            best = (k, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::q_function;
    use crate::channel::{ChannelPair, RandomStream};
    use crate::twoway::effective_snr_exact;
    use crate::PowerProfile;
    use proptest::prelude::*;

    const BPSK: ModulationConstant = ModulationConstant::BPSK;

    #[test]
    fn empty_rejected() {
        assert!(select_optimal(&[], BPSK).is_err());
        assert!(select_minmax(&[]).is_err());
    }

    #[test]
    fn single_relay() {
        assert_eq!(select_optimal(&[(0.3, 9.0)], BPSK).unwrap().relay_index, 0);
        assert_eq!(select_minmax(&[(0.3, 9.0)]).unwrap().relay_index, 0);
    }

    #[test]
    fn optimal_example() {
        let table = [(1.0, 4.0), (2.0, 2.0)];
        let out = select_optimal(&table, BPSK).unwrap();
        assert_eq!(out.relay_index, 1);
        let q = |x: f64| q_function(x).unwrap();
        assert!((q(2f64.sqrt()) + q(8f64.sqrt()) - 0.0809).abs() < 1e-4);
        assert!((out.criterion_value - 2.0 * q(2.0)).abs() < 1e-15);
        assert!((out.criterion_value - 0.0455).abs() < 1e-4);
    }

    #[test]
    fn minmax_examples() {
        let out = select_minmax(&[(3.0, 1.0), (2.0, 2.0)]).unwrap();
        assert_eq!((out.relay_index, out.criterion_value), (1, 2.0));
        assert_eq!(select_minmax(&[(2.0, 2.0), (2.0, 2.0)]).unwrap().relay_index, 0);
        assert_eq!(select_optimal(&[(2.0, 2.0), (2.0, 2.0)], BPSK).unwrap().relay_index, 0);
    }

    /// Brute-force min over relays of the max of a strictly decreasing SER map.
    fn min_max_ser(gammas: &[(f64, f64)], ser: impl Fn(f64) -> f64) -> usize {
        let mut best = 0;
        for k in 1..gammas.len() {
            let worst = |i: usize| ser(gammas[i].0).max(ser(gammas[i].1));
            if worst(k) < worst(best) {
                best = k;
            }
        }
        best
    }

    #[test]
    fn min_max_ser_equals_max_min_snr() {
        let pp = PowerProfile::new(1.0, 1.0, 0.05).unwrap();
        let mut s = RandomStream::derive(3, 3);
        for _ in 0..10_000 {
            let table: Vec<_> = (0..6).map(|_| effective_snr_exact(&ChannelPair::draw(&mut s), &pp)).collect();
            let by_snr = select_minmax(&table).unwrap().relay_index;
            let mins: Vec<f64> = table.iter().map(|g| g.0.min(g.1)).collect();
            for ser in [|g: f64| (-g).exp(), |g: f64| 1.0 / (1.0 + g)] {
                let by_ser = min_max_ser(&table, ser);
                assert!(by_ser == by_snr || mins[by_ser] == mins[by_snr]);
            }
        }
    }

    proptest! {
        #[test]
        fn dominating_relay_wins(a in 0.0f64..50.0, b in 0.0f64..50.0, da in 0.0f64..10.0, db in 0.0f64..10.0) {
            let table = [(a, b), (a + da, b + db)];
            let out = select_optimal(&table, BPSK).unwrap();
            let other = 1 - out.relay_index;
            prop_assert!(out.criterion_value <= sum_ser(table[other], BPSK));
        }

        #[test]
        fn minmax_scale_invariant(table in prop::collection::vec((0.0f64..100.0, 0.0f64..100.0), 1..8),
                                  k in 1e-3f64..1e3) {
            let scaled: Vec<_> = table.iter().map(|&(a, b)| (a * k, b * k)).collect();
            let i = select_minmax(&table).unwrap().relay_index;
            let j = select_minmax(&scaled).unwrap().relay_index;
            let m = |t: &[(f64, f64)], i: usize| t[i].0.min(t[i].1);
            prop_assert!(i == j || m(&table, i) == m(&table, j));
        }

        #[test]
        fn criterion_matches_recomputation(table in prop::collection::vec((0.0f64..30.0, 0.0f64..30.0), 1..8)) {
            let o = select_optimal(&table, BPSK).unwrap();
            prop_assert_eq!(o.criterion_value, sum_ser(table[o.relay_index], BPSK));
            let m = select_minmax(&table).unwrap();
            let (g1, g2) = table[m.relay_index];
            prop_assert_eq!(m.criterion_value, g1.min(g2));
        }
    }
}
