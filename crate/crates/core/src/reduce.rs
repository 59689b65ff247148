//! Deterministic summation helpers.

/// Pairwise sum with a fixed split shape, so the result depends only on the
/// order of `xs`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Parallel pairwise sum; same result as [`pairwise_sum`] for any thread
/// count.
pub fn par_pairwise_sum(xs: &[f64]) -> f64 {
    const SERIAL: usize = 1 << 14;
    if xs.len() <= SERIAL {
        return pairwise_sum(xs);
    }
    let mid = xs.len() / 2;
    let (a, b) = rayon::join(|| par_pairwise_sum(&xs[..mid]), || par_pairwise_sum(&xs[mid..]));
    a + b
}

/// Running sums of `xs`.
pub fn prefix_sums(xs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    xs.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        let xs: Vec<f64> = (0..100_000).map(|i| ((i as f64) * 0.731).sin() / (1.0 + i as f64)).collect();
        assert_eq!(pairwise_sum(&xs).to_bits(), par_pairwise_sum(&xs).to_bits());
    }

    #[test]
    fn prefix() {
        assert_eq!(prefix_sums(&[1.0, 2.0, 3.0]), vec![1.0, 3.0, 6.0]);
    }
}
