use crate::error::Error;
use crate::float::Float;
use crate::model::{Tour, TspInstance};

/// The circle-shaped companion TSP built from an anchor tour.
///
/// Cities sit uniformly on a circle in anchor order. The adjacent-city
/// spacing ("city interval") is the mean nearest-neighbor cost of the base
/// instance, which levels the companion's scale against the original; the
/// interval is realized as the chord between rank-adjacent cities, so the
/// radius is `interval / (2 sin(pi/n))`. Edge costs are chord lengths
/// computed analytically from rank separation, no coordinates are stored.
#[derive(Debug, Clone)]
pub struct ConvexHullTsp<F> {
    n: usize,
    interval: F,
    radius: F,
    /// rank[city] = position of the city around the circle.
    rank: Vec<u32>,
    /// chords[delta] = chord length at circular rank separation delta;
    /// precomputed because edge costs sit in the search's innermost loop.
    chords: Vec<F>,
}

impl<F: Float> ConvexHullTsp<F> {
    /// Builds the companion TSP for `inst` with cities ordered as in
    /// `anchor`.
    pub fn construct(inst: &TspInstance<F>, anchor: &Tour<F>) -> Result<Self, Error> {
        let n = inst.len();
        if anchor.len() != n {
            return Err(Error::LengthMismatch {
                got: anchor.len(),
                expected: n,
            });
        }
        let mut nn_sum = F::zero();
        for i in 0..n {
            let mut best = F::infinity();
            for j in 0..n {
                if j != i {
                    let c = inst.edge_cost(i, j);
                    if c < best {
                        best = c;
                    }
                }
            }
            nn_sum = nn_sum + best;
        }
        let interval = nn_sum / F::from_count(n);
        Ok(Self::from_interval(n, interval, anchor))
    }

    pub(crate) fn from_interval(n: usize, interval: F, anchor: &Tour<F>) -> Self {
        let two = F::from_count(2);
        let radius = interval / (two * (F::PI() / F::from_count(n)).sin());
        let mut rank = vec![0u32; n];
        for (position, &city) in anchor.order().iter().enumerate() {
            rank[city as usize] = position as u32;
        }
        let chords = (0..=n / 2)
            .map(|d| two * radius * (F::PI() * F::from_count(d) / F::from_count(n)).sin())
            .collect();
        Self {
            n,
            interval,
            radius,
            rank,
            chords,
        }
    }

    /// Same circle, new anchor order; skips the nearest-neighbor scan that
    /// fixes the interval (it depends only on the base instance).
    pub fn reanchored(&self, anchor: &Tour<F>) -> Result<Self, Error> {
        if anchor.len() != self.n {
            return Err(Error::LengthMismatch {
                got: anchor.len(),
                expected: self.n,
            });
        }
        let mut rank = vec![0u32; self.n];
        for (position, &city) in anchor.order().iter().enumerate() {
            rank[city as usize] = position as u32;
        }
        Ok(Self {
            n: self.n,
            interval: self.interval,
            radius: self.radius,
            rank,
            chords: self.chords.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn interval(&self) -> F {
        self.interval
    }

    pub fn radius(&self) -> F {
        self.radius
    }

    pub fn rank(&self) -> &[u32] {
        &self.rank
    }

    /// Chord length `2 r sin(pi * delta / n)` where `delta` is the circular
    /// rank separation of the two cities.
    #[inline]
    pub fn edge_cost(&self, i: usize, j: usize) -> F {
        if i == j {
            return F::zero();
        }
        let ri = self.rank[i];
        let rj = self.rank[j];
        let diff = ri.abs_diff(rj) as usize;
        self.chords[diff.min(self.n - diff)]
    }

    pub fn cycle_cost(&self, order: &[u32]) -> F {
        let mut total = F::zero();
        for (k, &c) in order.iter().enumerate() {
            let next = order[(k + 1) % order.len()];
            total = total + self.edge_cost(c as usize, next as usize);
        }
        total
    }
}
