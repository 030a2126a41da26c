use alloc::vec;
use alloc::vec::Vec;

use super::Scheme;
use crate::error::PartitionError;

/// Percentages are held as integer millionths so share arithmetic is exact.
const PERCENT_SCALE: f64 = 1e6;

/// Integer weight of every part. Shares are `weight / sum(weights)`.
pub(crate) fn weights(scheme: &Scheme) -> Result<Vec<u64>, PartitionError> {
    let scaled = |p: f64| libm::round(p * PERCENT_SCALE) as u64;
    match scheme {
        Scheme::Ratios(ratios) => {
            let sum: f64 = ratios.iter().sum();
            let valid = !ratios.is_empty()
                && ratios.iter().all(|r| r.is_finite() && *r > 0.0)
                && libm::fabs(sum - 100.0) <= 1e-9;
            if !valid {
                return Err(PartitionError::BadRatios { sum });
            }
            Ok(ratios.iter().map(|&r| scaled(r)).collect())
        }
        Scheme::Holdout(p) => {
            if !(p.is_finite() && *p > 0.0 && *p < 100.0) {
                return Err(PartitionError::BadHoldout(*p));
            }
            Ok(vec![scaled(*p), scaled(100.0 - p)])
        }
        Scheme::KFolds(k) => {
            if *k < 2 {
                return Err(PartitionError::BadFolds(*k));
            }
            Ok(vec![1; *k])
        }
    }
}

/// Largest-remainder apportionment of `n` instances: every part gets the floor
/// of its exact share, and the leftover instances go to the largest
/// fractional remainders (ties to the lower part index).
pub fn target_sizes(n: usize, weights: &[u64]) -> Vec<usize> {
    let total: u128 = weights.iter().map(|&w| w as u128).sum();
    let mut sizes = Vec::with_capacity(weights.len());
    let mut remainders = Vec::with_capacity(weights.len());
    for (part, &w) in weights.iter().enumerate() {
        let exact = n as u128 * w as u128;
        sizes.push((exact / total) as usize);
        remainders.push((exact % total, part));
    }
    let leftover = n - sizes.iter().sum::<usize>();
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, part) in remainders.iter().take(leftover) {
        sizes[part] += 1;
    }
    sizes
}
