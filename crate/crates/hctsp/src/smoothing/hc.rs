use crate::error::Error;
use crate::float::Float;
use crate::model::{Tour, TspInstance};

use super::{ConvexHullTsp, CostModel};

/// The homotopic-convex blend `g = (1-lambda) f_o + lambda f_c` of a base
/// instance and its circle companion. Immutable; retargeting the blend on a
/// new anchor or coefficient builds a new value.
#[derive(Debug, Clone)]
pub struct HcTransform<'a, F> {
    base: &'a TspInstance<F>,
    hull: ConvexHullTsp<F>,
    lambda: F,
}

impl<'a, F: Float> HcTransform<'a, F> {
    pub fn new(
        base: &'a TspInstance<F>,
        hull: ConvexHullTsp<F>,
        lambda: F,
    ) -> Result<Self, Error> {
        if !(lambda >= F::zero() && lambda <= F::one()) {
            return Err(Error::InvalidParameter(format!(
                "lambda {lambda} not in [0,1]"
            )));
        }
        if hull.len() != base.len() {
            return Err(Error::LengthMismatch {
                got: hull.len(),
                expected: base.len(),
            });
        }
        Ok(Self { base, hull, lambda })
    }

    /// Convenience: construct the companion from `anchor` and blend with
    /// `lambda` in one step.
    pub fn from_anchor(
        base: &'a TspInstance<F>,
        anchor: &Tour<F>,
        lambda: F,
    ) -> Result<Self, Error> {
        let hull = ConvexHullTsp::construct(base, anchor)?;
        Self::new(base, hull, lambda)
    }

    pub fn base(&self) -> &TspInstance<F> {
        self.base
    }

    pub fn hull(&self) -> &ConvexHullTsp<F> {
        &self.hull
    }

    pub fn lambda(&self) -> F {
        self.lambda
    }

    /// Blended edge cost `(1-lambda) c_ij + lambda chord_ij`.
    #[inline]
    pub fn edge_cost(&self, i: usize, j: usize) -> F {
        (F::one() - self.lambda) * self.base.edge_cost(i, j)
            + self.lambda * self.hull.edge_cost(i, j)
    }

    /// Blended objective of a whole tour; by linearity this equals both the
    /// edge-wise sum and `(1-lambda) f_o + lambda f_c`.
    pub fn objective(&self, tour: &Tour<F>) -> F {
        self.cycle_cost(tour.order())
    }
}

impl<F: Float> CostModel<F> for HcTransform<'_, F> {
    #[inline]
    fn edge(&self, i: usize, j: usize) -> F {
        self.edge_cost(i, j)
    }
}
