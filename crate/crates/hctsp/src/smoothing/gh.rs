use crate::error::Error;
use crate::float::Float;
use crate::model::TspInstance;

use super::CostModel;

/// Which power-law deformation to apply to the normalized cost matrix.
///
/// `Gh` and `SsaConvex` raise deviations from the mean to the power `alpha`
/// (convex flattening); `SsaConcave` uses the reciprocal exponent `1/alpha`
/// (concave sharpening), which is the alternating half of the SSA family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothKind {
    Gh,
    SsaConvex,
    SsaConcave,
}

/// A smoothed copy of an instance's cost matrix.
///
/// Costs are first min-max normalized to `[0,1]`, then pushed towards (or
/// away from) the mean normalized cost `m`:
///
/// ```text
/// s(c) = m + (c - m)^e   if c >= m
///      = m - (m - c)^e   if c <  m
/// ```
///
/// with `e = alpha` for the convex kinds and `e = 1/alpha` for the concave
/// one. The transform is monotone, so local-search trajectories on the
/// smoothed matrix remain meaningful for the original instance.
#[derive(Debug, Clone)]
pub struct SmoothedCostModel<F> {
    n: usize,
    costs: Vec<F>,
}

impl<F: Float> SmoothedCostModel<F> {
    pub fn new(inst: &TspInstance<F>, kind: SmoothKind, alpha: F) -> Result<Self, Error> {
        if !(alpha >= F::one()) {
            return Err(Error::InvalidParameter(format!(
                "smoothing exponent alpha {alpha} must be >= 1"
            )));
        }
        let n = inst.len();
        let (lo, hi) = inst.cost_range();
        let span = hi - lo;
        if !(span > F::zero()) || !span.is_finite() {
            return Err(Error::DegenerateInput(format!(
                "cannot normalize costs: min {lo}, max {hi}"
            )));
        }

        let exponent = match kind {
            SmoothKind::Gh | SmoothKind::SsaConvex => alpha,
            SmoothKind::SsaConcave => F::one() / alpha,
        };

        let edges = F::from_count(n * (n - 1) / 2);
        let mut sum = F::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                sum = sum + (inst.edge_cost(i, j) - lo) / span;
            }
        }
        let mean = sum / edges;

        let mut costs = vec![F::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = (inst.edge_cost(i, j) - lo) / span;
                let s = if c >= mean {
                    mean + (c - mean).powf(exponent)
                } else {
                    mean - (mean - c).powf(exponent)
                };
                costs[i * n + j] = s;
                costs[j * n + i] = s;
            }
        }
        Ok(Self { n, costs })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

impl<F: Float> CostModel<F> for SmoothedCostModel<F> {
    #[inline]
    fn edge(&self, i: usize, j: usize) -> F {
        self.costs[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::gen_random_euclidean;

    /// K4 with three edges of cost 1 and three of cost 2, so the normalized
    /// costs are {0,1} with mean exactly 1/2.
    fn bimodal() -> TspInstance<f64> {
        let m = vec![
            0.0, 1.0, 1.0, 2.0, //
            1.0, 0.0, 2.0, 2.0, //
            1.0, 2.0, 0.0, 1.0, //
            2.0, 2.0, 1.0, 0.0,
        ];
        TspInstance::from_matrix("bimodal", 4, m).unwrap()
    }

    #[test]
    fn alpha_one_is_normalization_only() {
        let inst = gen_random_euclidean::<f64>(15, 7, 100.0).unwrap();
        let model = SmoothedCostModel::new(&inst, SmoothKind::Gh, 1.0).unwrap();
        let (lo, hi) = inst.cost_range();
        for i in 0..15 {
            for j in 0..15 {
                if i == j {
                    continue;
                }
                let norm = (inst.edge_cost(i, j) - lo) / (hi - lo);
                assert!((model.edge(i, j) - norm).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn large_alpha_collapses_to_mean() {
        let inst = gen_random_euclidean::<f64>(15, 7, 100.0).unwrap();
        let model = SmoothedCostModel::new(&inst, SmoothKind::Gh, 50.0).unwrap();
        let flat = SmoothedCostModel::new(&inst, SmoothKind::Gh, 1.0).unwrap();
        let n = 15 * 14 / 2;
        let mut mean = 0.0;
        for i in 0..15 {
            for j in (i + 1)..15 {
                mean += flat.edge(i, j);
            }
        }
        mean /= n as f64;
        for i in 0..15 {
            for j in (i + 1)..15 {
                assert!((model.edge(i, j) - mean).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn alpha_two_on_bimodal_costs() {
        let inst = bimodal();
        let model = SmoothedCostModel::new(&inst, SmoothKind::Gh, 2.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let expected = if inst.edge_cost(i, j) == 1.0 { 0.25 } else { 0.75 };
                assert!((model.edge(i, j) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn concave_kind_sharpens_instead() {
        let inst = bimodal();
        let model = SmoothedCostModel::new(&inst, SmoothKind::SsaConcave, 2.0).unwrap();
        // exponent 1/2: 0.5 - 0.5^0.5 and 0.5 + 0.5^0.5 -- pushed away from the mean.
        let d = 0.5f64.sqrt();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let expected = if inst.edge_cost(i, j) == 1.0 { 0.5 - d } else { 0.5 + d };
                assert!((model.edge(i, j) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn smoothing_preserves_cost_ordering() {
        let inst = gen_random_euclidean::<f64>(20, 3, 100.0).unwrap();
        for kind in [SmoothKind::Gh, SmoothKind::SsaConvex, SmoothKind::SsaConcave] {
            let model = SmoothedCostModel::new(&inst, kind, 3.0).unwrap();
            let mut pairs = Vec::new();
            for i in 0..20 {
                for j in (i + 1)..20 {
                    pairs.push((inst.edge_cost(i, j), model.edge(i, j)));
                }
            }
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for w in pairs.windows(2) {
                assert!(w[1].1 >= w[0].1 - 1e-12);
            }
        }
    }

    #[test]
    fn rejects_alpha_below_one_and_flat_costs() {
        let inst = bimodal();
        assert!(SmoothedCostModel::new(&inst, SmoothKind::Gh, 0.5).is_err());

        let flat = vec![
            0.0, 1.0, 1.0, //
            1.0, 0.0, 1.0, //
            1.0, 1.0, 0.0,
        ];
        let flat = TspInstance::from_matrix("flat", 3, flat).unwrap();
        assert!(SmoothedCostModel::new(&flat, SmoothKind::Gh, 2.0).is_err());
    }
}
