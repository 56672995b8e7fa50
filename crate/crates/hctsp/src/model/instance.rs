use std::sync::OnceLock;

use crate::error::Error;
use crate::float::Float;

/// TSPLIB GEO constants: degrees.minutes to radians uses this PI, distances
/// use the earth radius RRR. Both are fixed by the TSPLIB specification.
#[allow(clippy::approx_constant)]
const GEO_PI: f64 = 3.141592;
const GEO_RADIUS: f64 = 6378.388;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostKind {
    Euclid2d,
    Geographic,
    Explicit,
}

impl CostKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CostKind::Euclid2d => "EUC_2D",
            CostKind::Geographic => "GEO",
            CostKind::Explicit => "EXPLICIT",
        }
    }
}

/// Immutable city/cost model. Costs are always carried as floats even for
/// integer TSPLIB instances, so that the HC blend can produce fractional
/// costs along the same code path; TSPLIB integer rounding happens inside
/// [`TspInstance::edge_cost`] per the canonical definitions.
#[derive(Debug)]
pub struct TspInstance<F> {
    name: String,
    n: usize,
    kind: CostKind,
    coords: Option<Vec<(F, F)>>,
    /// Latitude/longitude in radians, precomputed from DDD.MM coordinates.
    geo: Option<Vec<(f64, f64)>>,
    matrix: Option<Vec<F>>,
    cache: OnceLock<Vec<F>>,
}

impl<F: Float> TspInstance<F> {
    pub fn from_coords(
        name: impl Into<String>,
        kind: CostKind,
        coords: Vec<(F, F)>,
    ) -> Result<Self, Error> {
        let n = coords.len();
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "instance needs at least 3 cities, got {n}"
            )));
        }
        if !coords.iter().all(|c| c.0.is_finite() && c.1.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        let geo = match kind {
            CostKind::Euclid2d => None,
            CostKind::Geographic => Some(
                coords
                    .iter()
                    .map(|&(x, y)| (geo_radians(x.to_f64().unwrap()), geo_radians(y.to_f64().unwrap())))
                    .collect(),
            ),
            CostKind::Explicit => {
                return Err(Error::InvalidParameter(
                    "explicit instances take a matrix, not coordinates".into(),
                ))
            }
        };
        Ok(Self {
            name: name.into(),
            n,
            kind,
            coords: Some(coords),
            geo,
            matrix: None,
            cache: OnceLock::new(),
        })
    }

    /// Builds an explicit instance from a full row-major `n x n` table.
    pub fn from_matrix(name: impl Into<String>, n: usize, matrix: Vec<F>) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "instance needs at least 3 cities, got {n}"
            )));
        }
        if matrix.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                n * n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let c = matrix[i * n + j];
                if !c.is_finite() || c < F::zero() {
                    return Err(Error::InvalidParameter(format!(
                        "cost({i},{j}) is not finite and non-negative"
                    )));
                }
                if matrix[i * n + j] != matrix[j * n + i] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix asymmetric at ({i},{j})"
                    )));
                }
            }
            if matrix[i * n + i] != F::zero() {
                return Err(Error::InvalidParameter(format!("cost({i},{i}) != 0")));
            }
        }
        Ok(Self {
            name: name.into(),
            n,
            kind: CostKind::Explicit,
            coords: None,
            geo: None,
            matrix: Some(matrix),
            cache: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn cost_kind(&self) -> CostKind {
        self.kind
    }

    pub fn coords(&self) -> Option<&[(F, F)]> {
        self.coords.as_deref()
    }

    /// Canonical symmetric edge cost. EUC_2D rounds to the nearest integer,
    /// GEO follows the TSPLIB great-circle formula with truncation, EXPLICIT
    /// reads the matrix.
    #[inline]
    pub fn edge_cost(&self, i: usize, j: usize) -> F {
        if let Some(m) = self.cache.get() {
            return m[i * self.n + j];
        }
        self.compute_edge_cost(i, j)
    }

    fn compute_edge_cost(&self, i: usize, j: usize) -> F {
        if i == j {
            return F::zero();
        }
        match self.kind {
            CostKind::Euclid2d => {
                let c = self.coords.as_ref().unwrap();
                let dx = c[i].0 - c[j].0;
                let dy = c[i].1 - c[j].1;
                (dx * dx + dy * dy).sqrt().nint()
            }
            CostKind::Geographic => {
                let g = self.geo.as_ref().unwrap();
                let (lat_i, lon_i) = g[i];
                let (lat_j, lon_j) = g[j];
                let q1 = (lon_i - lon_j).cos();
                let q2 = (lat_i - lat_j).cos();
                let q3 = (lat_i + lat_j).cos();
                let d = GEO_RADIUS * (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).acos() + 1.0;
                F::from_f64_lossy(d.trunc())
            }
            CostKind::Explicit => self.matrix.as_ref().unwrap()[i * self.n + j],
        }
    }

    pub fn try_edge_cost(&self, i: usize, j: usize) -> Result<F, Error> {
        for idx in [i, j] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        Ok(self.edge_cost(i, j))
    }

    /// Materializes the full cost table so hot loops pay an array lookup per
    /// edge instead of recomputing distances. No-op beyond the first call.
    pub fn materialize_costs(&self) {
        self.cache.get_or_init(|| {
            let mut m = vec![F::zero(); self.n * self.n];
            for i in 0..self.n {
                for j in (i + 1)..self.n {
                    let c = self.compute_edge_cost(i, j);
                    m[i * self.n + j] = c;
                    m[j * self.n + i] = c;
                }
            }
            m
        });
    }

    /// Sum of the n closing-cycle edge costs of a city sequence.
    pub fn cycle_cost(&self, order: &[u32]) -> F {
        let mut total = F::zero();
        for (k, &c) in order.iter().enumerate() {
            let next = order[(k + 1) % order.len()];
            total = total + self.edge_cost(c as usize, next as usize);
        }
        total
    }

    /// Minimum and maximum off-diagonal cost, used by the GH/SSA models.
    pub fn cost_range(&self) -> (F, F) {
        let mut lo = F::infinity();
        let mut hi = F::neg_infinity();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let c = self.edge_cost(i, j);
                if c < lo {
                    lo = c;
                }
                if c > hi {
                    hi = c;
                }
            }
        }
        (lo, hi)
    }
}

fn geo_radians(ddd_mm: f64) -> f64 {
    let deg = ddd_mm.trunc();
    let min = ddd_mm - deg;
    GEO_PI * (deg + 5.0 * min / 3.0) / 180.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> TspInstance<f64> {
        TspInstance::from_coords(
            "square",
            CostKind::Euclid2d,
            vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        )
        .unwrap()
    }

    #[test]
    fn unit_square_adjacent_corners() {
        let inst = square();
        assert_eq!(inst.edge_cost(0, 1), 1.0);
        assert_eq!(inst.edge_cost(0, 0), 0.0);
        // diagonal sqrt(2) rounds to 1
        assert_eq!(inst.edge_cost(0, 2), 1.0);
    }

    #[test]
    fn triangle_3_4_5() {
        let inst = TspInstance::from_coords(
            "tri",
            CostKind::Euclid2d,
            vec![(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)],
        )
        .unwrap();
        assert_eq!(inst.edge_cost(0, 1), 3.0);
        assert_eq!(inst.edge_cost(0, 2), 4.0);
        assert_eq!(inst.edge_cost(1, 2), 5.0);
    }

    #[test]
    fn matrix_must_be_symmetric() {
        let m = vec![0.0, 1.0, 2.0, 0.0, 2.0, 1.0, 2.0, 1.0, 0.0];
        assert!(TspInstance::from_matrix("bad", 3, m).is_err());
    }

    #[test]
    fn out_of_range_reported() {
        let inst = square();
        assert!(matches!(
            inst.try_edge_cost(0, 9),
            Err(Error::IndexOutOfRange { index: 9, .. })
        ));
    }

    #[test]
    fn materialized_costs_match() {
        let inst = square();
        let before: Vec<f64> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| inst.edge_cost(i, j))
            .collect();
        inst.materialize_costs();
        let after: Vec<f64> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| inst.edge_cost(i, j))
            .collect();
        assert_eq!(before, after);
    }
}
