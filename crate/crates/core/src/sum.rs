//! Compensated (Kahan) summation for long series of small terms.

/// Kahan summation accumulator.
///
/// Keeps a running compensation term so that adding millions of decaying
/// positive terms loses far less precision than a naive `+=` loop.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }

    /// Sum an iterator with compensation.
    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_drowned_by_naive_sum() {
        // 1 + 1e-16 added 10^5 times: naive f64 loses every increment.
        let mut naive = 1.0f64;
        let mut kahan = KahanSum::new();
        kahan.add(1.0);
        for _ in 0..100_000 {
            naive += 1e-16;
            kahan.add(1e-16);
        }
        assert_eq!(naive, 1.0);
        assert!((kahan.value() - (1.0 + 1e-11)).abs() < 1e-24);
    }

    #[test]
    fn sum_iter_matches_manual_loop() {
        let terms: Vec<f64> = (1..=1000).map(|k| 1.0 / (k as f64 * k as f64)).collect();
        let a = KahanSum::sum_iter(terms.iter().copied());
        let mut acc = KahanSum::new();
        for &t in &terms {
            acc.add(t);
        }
        assert_eq!(a, acc.value());
    }
}
