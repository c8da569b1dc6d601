use std::collections::HashMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::engine::{AutOrbits, RepInfo};
use super::DeltaReport;
use crate::autgrp::AutGroup;
use crate::error::{Error, Result};
use crate::permgrp::ClosureProbe;

#[derive(Clone, Debug, Serialize)]
pub struct SampleInfo {
    pub n_samples: u64,
    pub seed: u64,
    pub n_generating: u64,
    pub n_symmetric: u64,
    pub estimate: f64,
    /// 95% Wilson score interval for δ.
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// 95% Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = n as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Estimates δ from `n_samples` uniform pairs drawn with a fixed seed.
///
/// Each sampled pair is moved by the orbit transversal so that its first
/// entry is an orbit representative; inverters are computed once per
/// representative.
pub fn delta_sample(name: &str, a: &AutGroup, n_samples: u64, seed: u64) -> Result<DeltaReport> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("sample size must be positive".into()));
    }
    let s = a.parent();
    let n = s.order() as u32;
    let orbits = AutOrbits::new(a);
    let mut infos: HashMap<u32, RepInfo> = HashMap::new();
    let mut probe = ClosureProbe::new(s.order());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut generating, mut symmetric) = (0u64, 0u64);
    for _ in 0..n_samples {
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        if !probe.generates(s, &[x, y]) {
            continue;
        }
        generating += 1;
        let r = orbits.rep_of[x as usize];
        let y0 = a.apply_inv(orbits.trans[x as usize], y);
        let info = infos.entry(r).or_insert_with(|| RepInfo::new(a, &orbits, r));
        if info.witness(a, y0).is_some() {
            symmetric += 1;
        }
    }
    let (lo, hi) = wilson_interval(symmetric, generating);
    let delta = if generating == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(symmetric, generating)
    };
    Ok(DeltaReport {
        group: name.to_string(),
        order: s.order(),
        aut_order: a.order(),
        n_generating_pairs: generating,
        n_symmetric_pairs: symmetric,
        delta,
        exact: false,
        sample: Some(SampleInfo {
            n_samples,
            seed,
            n_generating: generating,
            n_symmetric: symmetric,
            estimate: if generating == 0 {
                0.0
            } else {
                symmetric as f64 / generating as f64
            },
            wilson_low: lo,
            wilson_high: hi,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_the_estimate() {
        let (lo, hi) = wilson_interval(30, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!((lo - 0.2189).abs() < 1e-3 && (hi - 0.3958).abs() < 1e-3);
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
    }
}
