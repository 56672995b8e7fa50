use crate::error::Error;
use crate::float::Float;

use super::TspInstance;

/// A closed tour: a permutation of the city indices plus its cached cost
/// under the instance's original cost function.
///
/// A position index (city -> position) is kept alongside the sequence so
/// segment queries during local search are O(1).
#[derive(Debug, Clone, PartialEq)]
pub struct Tour<F> {
    order: Vec<u32>,
    pos: Vec<u32>,
    cost: F,
}

impl<F: Float> Tour<F> {
    pub fn new(inst: &TspInstance<F>, order: Vec<u32>) -> Result<Self, Error> {
        let n = inst.len();
        if order.len() != n {
            return Err(Error::LengthMismatch {
                got: order.len(),
                expected: n,
            });
        }
        let pos = position_index(&order).ok_or(Error::InvalidPermutation { n })?;
        let cost = inst.cycle_cost(&order);
        Ok(Self { order, pos, cost })
    }

    /// Identity tour 0,1,...,n-1.
    pub fn identity(inst: &TspInstance<F>) -> Self {
        Self::new(inst, (0..inst.len() as u32).collect()).unwrap()
    }

    pub fn random<R: rand::Rng>(inst: &TspInstance<F>, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut order: Vec<u32> = (0..inst.len() as u32).collect();
        order.shuffle(rng);
        Self::new(inst, order).unwrap()
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn cost(&self) -> F {
        self.cost
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position_of(&self, city: u32) -> usize {
        self.pos[city as usize] as usize
    }

    /// Successor of a city along the tour.
    pub fn succ(&self, city: u32) -> u32 {
        let p = self.pos[city as usize] as usize;
        self.order[(p + 1) % self.order.len()]
    }

    pub fn pred(&self, city: u32) -> u32 {
        let p = self.pos[city as usize] as usize;
        let n = self.order.len();
        self.order[(p + n - 1) % n]
    }

    /// True if `other` is the same undirected edge set.
    pub fn same_cycle(&self, other: &Tour<F>) -> bool {
        matches!(tour_distance_orders(&self.order, &other.order), Ok(0))
    }
}

fn position_index(order: &[u32]) -> Option<Vec<u32>> {
    let n = order.len();
    let mut pos = vec![u32::MAX; n];
    for (i, &c) in order.iter().enumerate() {
        let c = c as usize;
        if c >= n || pos[c] != u32::MAX {
            return None;
        }
        pos[c] = i as u32;
    }
    Some(pos)
}

/// Number of undirected edges of `a` absent from `b` (the classical tour
/// distance). Symmetric since both tours have exactly n edges.
pub fn tour_distance<F: Float>(a: &Tour<F>, b: &Tour<F>) -> Result<usize, Error> {
    tour_distance_orders(a.order(), b.order())
}

pub(crate) fn tour_distance_orders(a: &[u32], b: &[u32]) -> Result<usize, Error> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            got: b.len(),
            expected: a.len(),
        });
    }
    let n = a.len();
    let mut succ_b = vec![0u32; n];
    let mut pred_b = vec![0u32; n];
    for (i, &c) in b.iter().enumerate() {
        let next = b[(i + 1) % n];
        succ_b[c as usize] = next;
        pred_b[next as usize] = c;
    }
    let mut missing = 0;
    for (i, &c) in a.iter().enumerate() {
        let next = a[(i + 1) % n];
        if succ_b[c as usize] != next && pred_b[c as usize] != next {
            missing += 1;
        }
    }
    Ok(missing)
}
