use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::Error;

/// Mann-Whitney rank-sum comparison of two samples, normal approximation
/// with tie correction and continuity correction.
#[derive(Debug, Clone, Copy)]
pub struct RankSumTest {
    /// U statistic of the first sample.
    pub u: f64,
    pub z: f64,
    /// One-sided p-value for the alternative "first sample is
    /// stochastically smaller".
    pub p_less: f64,
}

pub fn mann_whitney_less(xs: &[f64], ys: &[f64]) -> Result<RankSumTest, Error> {
    let (n1, n2) = (xs.len(), ys.len());
    if n1 == 0 || n2 == 0 {
        return Err(Error::DegenerateInput("empty sample in rank-sum test".into()));
    }
    let n = n1 + n2;
    let mut pooled: Vec<(f64, bool)> = xs
        .iter()
        .map(|&v| (v, true))
        .chain(ys.iter().map(|&v| (v, false)))
        .collect();
    if pooled.iter().any(|(v, _)| !v.is_finite()) {
        return Err(Error::DegenerateInput("non-finite value in rank-sum test".into()));
    }
    pooled.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // Average ranks over tie groups; accumulate the tie correction term.
    let mut r1 = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let t = (j - i) as f64;
        let rank = (i + j + 1) as f64 / 2.0; // 1-based average rank
        for p in &pooled[i..j] {
            if p.1 {
                r1 += rank;
            }
        }
        tie_term += t * t * t - t;
        i = j;
    }

    let (n1f, n2f, nf) = (n1 as f64, n2 as f64, n as f64);
    let u = r1 - n1f * (n1f + 1.0) / 2.0;
    let mean = n1f * n2f / 2.0;
    let var = n1f * n2f / 12.0 * ((nf + 1.0) - tie_term / (nf * (nf - 1.0)));
    if !(var > 0.0) {
        return Err(Error::DegenerateInput(
            "all pooled values identical in rank-sum test".into(),
        ));
    }
    let z = (u - mean + 0.5) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(RankSumTest { u, z, p_less: normal.cdf(z) })
}
