/// Sample mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub count: usize,
    pub mean: f64,
    /// `None` with fewer than two samples.
    pub std_error: Option<f64>,
}

impl MeanEstimate {
    /// Two-pass mean and variance over the samples in the given order.
    pub fn from_samples(samples: &[f64]) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        let n = samples.len() as f64;
        let mean = pairwise_sum(samples) / n;
        let std_error = (samples.len() > 1).then(|| {
            let sq: Vec<f64> = samples.iter().map(|x| (x - mean) * (x - mean)).collect();
            (pairwise_sum(&sq) / (n - 1.0)).sqrt() / n.sqrt()
        });
        Some(MeanEstimate {
            count: samples.len(),
            mean,
            std_error,
        })
    }

    /// `|mean - target| <= k * SE`. A missing SE only passes on an exact hit.
    pub fn within(&self, target: f64, k: f64) -> bool {
        let diff = (self.mean - target).abs();
        match self.std_error {
            Some(se) => diff <= k * se,
            None => diff == 0.0,
        }
    }
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}
