//! Size guards for the exhaustive oracles.

use crate::error::{Error, Result};

/// Caps applied before any exponential enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest variable count for subset enumeration (vertex covers).
    pub max_vars: usize,
    /// Largest multidegree box `prod(lcm_k + 1)` scanned by the Betti oracle.
    pub max_betti_box: u64,
    /// Largest witness box `prod(lcm_k + 1)` scanned by the associated-prime oracle.
    pub max_witness_box: u64,
    /// Largest number of rewriting steps for a single normal form.
    pub max_rewrite_steps: usize,
    /// Largest number of generator multisets enumerated per degree for fiber checks.
    pub max_multisets: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vars: 20,
            max_betti_box: 4096,
            max_witness_box: 200_000,
            max_rewrite_steps: 10_000,
            max_multisets: 2_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_vars(&self, n: usize) -> Result<()> {
        if n > self.max_vars || n > 63 {
            return Err(Error::SizeGuard(format!(
                "{n} variables exceeds cap {}",
                self.max_vars.min(63)
            )));
        }
        Ok(())
    }
}

/// `prod(e_k + 1)` with saturation.
pub(crate) fn box_size(bound: &[u32]) -> u64 {
    bound
        .iter()
        .fold(1u64, |acc, &e| acc.saturating_mul(e as u64 + 1))
}

/// Iterates all vectors `0 <= a <= bound` in lexicographic order.
pub(crate) fn box_points(bound: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let total = box_size(bound);
    (0..total).map(move |mut idx| {
        let mut a = vec![0; bound.len()];
        for k in (0..bound.len()).rev() {
            let radix = bound[k] as u64 + 1;
            a[k] = (idx % radix) as u32;
            idx /= radix;
        }
        a
    })
}
