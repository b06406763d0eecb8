//! Comparing hashes: the SWAP test, a repeated-SWAP equality protocol and
//! the qubit-count accounting behind irreversibility.
//!
//! The SWAP test is simulated on its outcome distribution: it accepts with
//! probability `(1 + |⟨h1|h2⟩|²)/2`, and each shot is one Bernoulli draw.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bias::{BiasedSet, Certification};
use crate::error::{Error, Result};
use crate::group::{ceil_log2, GroupElement};
use crate::qhash::{inner_product, QuantumHash, QuantumHasher};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapTestResult {
    pub analytic_accept_probability: f64,
    pub shots: u64,
    pub accepts: u64,
    pub seed: u64,
}

/// `(1 + |⟨h1|h2⟩|²)/2`; exactly 1 for identical states.
pub fn swap_test_probability(h1: &QuantumHash, h2: &QuantumHash) -> Result<f64> {
    let ip = inner_product(h1, h2)?;
    if h1.amplitudes() == h2.amplitudes() {
        return Ok(1.0);
    }
    Ok((0.5 * (1.0 + ip.norm_sqr())).clamp(0.5, 1.0))
}

/// `shots` independent SWAP tests drawn from the stream seeded by `seed`.
pub fn swap_test_sample(h1: &QuantumHash, h2: &QuantumHash, shots: u64, seed: u64) -> Result<SwapTestResult> {
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be at least 1".into()));
    }
    let p = swap_test_probability(h1, h2)?;
    let mut rng = rng::seeded(seed);
    let accepts = (0..shots).filter(|_| rng.gen_bool(p)).count() as u64;
    Ok(SwapTestResult {
        analytic_accept_probability: p,
        shots,
        accepts,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Equal,
    Unequal,
}

/// Replayable record of one run of [`equality_protocol`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolTranscript {
    pub set_id: String,
    pub a: GroupElement,
    pub b: GroupElement,
    pub rounds: u32,
    pub seed: u64,
    /// One entry per round, 1 for accept.
    pub accepts: Vec<u8>,
    pub decision: Decision,
    /// Upper bound on the chance that unequal messages pass every round.
    pub soundness_bound: f64,
}

/// `((1 + ε²)/2)^rounds`.
pub fn soundness_bound(epsilon: f64, rounds: u32) -> f64 {
    (0.5 * (1.0 + epsilon * epsilon)).powi(rounds as i32)
}

/// Bias usable in soundness bounds: exact and analytic certificates only.
/// Sampled certificates underestimate the bias, so they count as 1.
fn sound_epsilon(set: &BiasedSet) -> f64 {
    match (set.certification(), set.certified_epsilon()) {
        (Some(Certification::Exact | Certification::AnalyticBound), Some(eps)) => eps.min(1.0),
        _ => 1.0,
    }
}

/// Hashes `a` and `b`, runs `rounds` independent SWAP tests and answers
/// `Unequal` on any rejection. Round `r` draws from stream `r` of the family
/// keyed by `seed`, so the transcript is the same under any schedule.
pub fn equality_protocol(
    set: &BiasedSet,
    a: &GroupElement,
    b: &GroupElement,
    rounds: u32,
    seed: u64,
) -> Result<ProtocolTranscript> {
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be at least 1".into()));
    }
    let hasher = QuantumHasher::new(set);
    let ha = hasher.hash(a)?;
    let hb = hasher.hash(b)?;
    let p = swap_test_probability(&ha, &hb)?;
    let accepts: Vec<u8> = (0..rounds)
        .into_par_iter()
        .map(|r| rng::stream(seed, r as u64).gen_bool(p) as u8)
        .collect();
    let decision = if accepts.iter().all(|&x| x == 1) {
        Decision::Equal
    } else {
        Decision::Unequal
    };
    Ok(ProtocolTranscript {
        set_id: ha.set_id().to_string(),
        a: a.clone(),
        b: b.clone(),
        rounds,
        seed,
        accepts,
        decision,
        soundness_bound: soundness_bound(sound_epsilon(set), rounds),
    })
}

/// Qubit-count accounting: a hash on `k` qubits carries at most `k`
/// classical bits of accessible information.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrreversibilityReport {
    /// `⌈log₂|G|⌉`.
    pub input_bits: u32,
    /// `⌈log₂|S|⌉`.
    pub hash_qubits: u32,
    /// Equal to `hash_qubits`.
    pub holevo_cap_bits: u32,
    /// `input_bits / hash_qubits`; infinite for single-element sets.
    pub compression_ratio: f64,
    /// True when the cap is strictly below the input size.
    pub compressive: bool,
}

impl IrreversibilityReport {
    pub fn from_sizes(input_bits: u32, set_size: u64) -> Self {
        let hash_qubits = ceil_log2(set_size);
        IrreversibilityReport {
            input_bits,
            hash_qubits,
            holevo_cap_bits: hash_qubits,
            compression_ratio: input_bits as f64 / hash_qubits as f64,
            compressive: hash_qubits < input_bits,
        }
    }
}

pub fn irreversibility_report(set: &BiasedSet) -> IrreversibilityReport {
    IrreversibilityReport::from_sizes(set.group().bit_length(), set.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::{random_biased_set, sampling_size};
    use crate::group::AbelianGroup;
    use crate::qhash::{hash, SizeReport};

    fn el(v: &[u64]) -> GroupElement {
        GroupElement::from_residues(v.to_vec())
    }

    fn cube_set(n: usize) -> BiasedSet {
        BiasedSet::whole_group(AbelianGroup::boolean_cube(n).unwrap())
            .unwrap()
            .certify_exact()
            .unwrap()
    }

    #[test]
    fn probability_examples() {
        let set = cube_set(2);
        let h0 = hash(&set, &el(&[0, 1])).unwrap();
        let h1 = hash(&set, &el(&[1, 1])).unwrap();
        assert_eq!(swap_test_probability(&h0, &h0).unwrap(), 1.0);
        assert!((swap_test_probability(&h0, &h1).unwrap() - 0.5).abs() < 1e-15);
        assert!((0.5 * (1.0 + 0.3f64 * 0.3) - 0.545).abs() < 1e-15);
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let h0 = hash(&cube_set(2), &el(&[0, 1])).unwrap();
        let h1 = hash(&cube_set(3), &el(&[0, 1, 0])).unwrap();
        assert!(matches!(swap_test_probability(&h0, &h1), Err(Error::Usage(_))));
    }

    #[test]
    fn sampling_examples() {
        let set = cube_set(3);
        let h = hash(&set, &el(&[1, 0, 1])).unwrap();
        for seed in 0..5 {
            assert_eq!(swap_test_sample(&h, &h, 1000, seed).unwrap().accepts, 1000);
        }
        let g = hash(&set, &el(&[0, 1, 1])).unwrap();
        let r = swap_test_sample(&h, &g, 1_000_000, 17).unwrap();
        assert!((r.accepts as f64 / 1e6 - 0.5).abs() <= 0.002);
        assert_eq!(r, swap_test_sample(&h, &g, 1_000_000, 17).unwrap());
        assert!(swap_test_sample(&h, &g, 0, 1).is_err());
    }

    #[test]
    fn completeness_exhaustive() {
        let set = random_biased_set(&AbelianGroup::new(vec![3, 4]).unwrap(), 0.9, 4.0, 2, 20).unwrap();
        for a in set.group().enumerate().unwrap() {
            for seed in 0..3 {
                let t = equality_protocol(&set, &a, &a, 16, seed).unwrap();
                assert_eq!(t.decision, Decision::Equal);
                assert!(t.accepts.iter().all(|&x| x == 1));
            }
        }
    }

    #[test]
    fn orthogonal_single_round_rejects_half_the_time() {
        let set = cube_set(3);
        let trials = 4000;
        let rejects = (0..trials)
            .filter(|&s| {
                equality_protocol(&set, &el(&[0, 0, 1]), &el(&[1, 1, 0]), 1, s)
                    .unwrap()
                    .decision
                    == Decision::Unequal
            })
            .count();
        // 4 sigma at p = 1/2
        assert!((rejects as f64 / trials as f64 - 0.5).abs() <= 4.0 * (0.25 / trials as f64).sqrt());
    }

    #[test]
    fn soundness_values() {
        assert!((soundness_bound(0.3, 20) - 5.3e-6).abs() < 0.05e-6);
        assert_eq!(soundness_bound(0.0, 1), 0.5);
        let mut last = 1.0;
        for r in 1..30 {
            let b = soundness_bound(0.4, r);
            assert!(b <= last);
            assert!(soundness_bound(0.5, r) >= b);
            last = b;
        }
    }

    #[test]
    fn transcript_is_schedule_independent() {
        let set = cube_set(4);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| equality_protocol(&set, &el(&[1, 0, 0, 1]), &el(&[0, 0, 1, 1]), 64, 99).unwrap())
        };
        let t1 = run(1);
        assert_eq!(t1, run(6));
        let json = serde_json::to_value(&t1).unwrap();
        for key in [
            "set_id",
            "a",
            "b",
            "rounds",
            "seed",
            "accepts",
            "decision",
            "soundness_bound",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(
            json["decision"],
            if t1.decision == Decision::Equal {
                "equal"
            } else {
                "unequal"
            }
        );
    }

    #[test]
    fn irreversibility_examples() {
        let r = IrreversibilityReport::from_sizes(256, 512);
        assert_eq!((r.input_bits, r.holevo_cap_bits), (256, 9));
        assert!((r.compression_ratio - 28.444).abs() < 1e-3);
        assert!(r.compressive);

        let r = irreversibility_report(&cube_set(8));
        assert_eq!(r.compression_ratio, 1.0);
        assert!(!r.compressive);

        // Z_2^64 is beyond representable group orders; use the scale-only formula
        let t = SizeReport::from_scale(64.0, 1, 0.1, Some(4.0)).sampling_size.unwrap();
        let r = IrreversibilityReport::from_sizes(64, t);
        assert_eq!(t, 17_745);
        assert_eq!(r.hash_qubits, 15);
        assert!((r.compression_ratio - 4.267).abs() < 1e-3);
    }

    #[test]
    fn compressive_whenever_set_below_half_group() {
        let g = AbelianGroup::boolean_cube(10).unwrap();
        let set = random_biased_set(&g, 0.5, 4.0, 1, 10).unwrap();
        assert!((set.len() as u64) < g.order() / 2);
        assert!(irreversibility_report(&set).compressive);
        assert_eq!(sampling_size(g.order(), 0.5, 4.0).unwrap(), set.len() as u64);
    }
}
