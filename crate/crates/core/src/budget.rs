use std::time::{Duration, Instant};

/// Work and wall-clock limits for the exhaustive searches.
///
/// A search that would exceed its limits fails with an explicit error rather
/// than returning a partial answer.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Maximum units of work (matching tests, enumerated sets, search nodes).
    pub max_work: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_work: 10_000_000, deadline: None }
    }
}

impl Budget {
    pub fn with_work(max_work: u64) -> Self {
        Budget { max_work, deadline: None }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul(u128::from(n - i)) {
            Some(x) if x / u128::from(i + 1) <= u128::from(u64::MAX) => acc = x / u128::from(i + 1),
            _ => return u64::MAX,
        }
    }
    acc as u64
}

/// Advances `comb` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order. Returns `false` after the last one.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
