use crate::error::Error;
use crate::float::Float;

/// Piecewise-constant blend-coefficient schedule over the budget fraction.
///
/// A schedule is a list of `(fraction, lambda)` breakpoints; `value_at(t)`
/// returns the lambda of the last breakpoint at or before `t`. The named
/// presets `setting1..setting5` cover the constant coefficients 0.02, 0.04
/// and 0.06 plus two staircases that raise lambda every tenth of the budget.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSchedule<F> {
    points: Vec<(f64, F)>,
}

impl<F: Float> LambdaSchedule<F> {
    pub fn new(points: Vec<(f64, F)>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("empty lambda schedule".into()));
        }
        if points[0].0 != 0.0 {
            return Err(Error::InvalidParameter(
                "lambda schedule must start at budget fraction 0".into(),
            ));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidParameter(
                    "schedule breakpoints must be strictly increasing".into(),
                ));
            }
        }
        for &(frac, lam) in &points {
            if !(0.0..1.0).contains(&frac) {
                return Err(Error::InvalidParameter(format!(
                    "breakpoint fraction {frac} outside [0,1)"
                )));
            }
            if !(lam >= F::zero() && lam <= F::one()) {
                return Err(Error::InvalidParameter(format!(
                    "lambda {lam} outside [0,1]"
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn constant(lambda: F) -> Result<Self, Error> {
        Self::new(vec![(0.0, lambda)])
    }

    /// Staircase that holds `lambdas[i]` over the i-th equal slice of the
    /// budget.
    pub fn staircase(lambdas: &[f64]) -> Result<Self, Error> {
        let k = lambdas.len();
        if k == 0 {
            return Err(Error::InvalidParameter("empty lambda schedule".into()));
        }
        let points = lambdas
            .iter()
            .enumerate()
            .map(|(i, &l)| (i as f64 / k as f64, F::from_f64_lossy(l)))
            .collect();
        Self::new(points)
    }

    pub fn from_name(name: &str) -> Result<Self, Error> {
        match name {
            "setting1" => Self::constant(F::from_f64_lossy(0.02)),
            "setting2" => Self::constant(F::from_f64_lossy(0.04)),
            "setting3" => Self::constant(F::from_f64_lossy(0.06)),
            "setting4" => {
                Self::staircase(&[0.0, 0.0, 0.01, 0.01, 0.02, 0.02, 0.03, 0.03, 0.04, 0.04])
            }
            "setting5" => {
                Self::staircase(&[0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09])
            }
            other => Err(Error::Unsupported {
                what: "lambda schedule",
                value: other.to_string(),
            }),
        }
    }

    pub fn value_at(&self, frac: f64) -> F {
        let frac = frac.clamp(0.0, 1.0);
        let mut lam = self.points[0].1;
        for &(f, l) in &self.points {
            if f <= frac {
                lam = l;
            } else {
                break;
            }
        }
        lam
    }

    pub fn points(&self) -> &[(f64, F)] {
        &self.points
    }
}
