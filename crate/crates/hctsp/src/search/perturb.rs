use rand::Rng;

use crate::error::Error;
use crate::float::Float;
use crate::model::{Tour, TspInstance};

/// Smallest tour length for which every double bridge is guaranteed to be a
/// proper perturbation (four non-trivial segments are always available).
pub const MIN_DOUBLE_BRIDGE_N: usize = 8;

/// Draws cut positions `1 <= p1 < p2 < p3 < n` uniformly over the triples
/// that yield a genuine 4-edge double bridge. When two cyclically adjacent
/// segments are both singletons one of the "new" edges coincides with a
/// removed edge and the kick degenerates; those triples are rejected.
pub(crate) fn sample_cuts<R: Rng>(rng: &mut R, n: usize) -> (usize, usize, usize) {
    loop {
        let mut c = [
            rng.gen_range(1..n),
            rng.gen_range(1..n),
            rng.gen_range(1..n),
        ];
        c.sort_unstable();
        let (p1, p2, p3) = (c[0], c[1], c[2]);
        if p1 == p2 || p2 == p3 {
            continue;
        }
        // Segment lengths: A = p1, B = p2-p1, C = p3-p2, D = n-p3.
        let degenerate = (p1 == 1 && p2 == 2)            // A,B singletons
            || (p2 == p1 + 1 && p3 == p2 + 1)            // B,C singletons
            || (p3 == p2 + 1 && p3 == n - 1)             // C,D singletons
            || (p3 == n - 1 && p1 == 1);                 // D,A singletons
        if degenerate {
            continue;
        }
        return (p1, p2, p3);
    }
}

/// The double bridge: splits the cycle into segments `A B C D` at the cuts
/// and reconnects them as `A D C B` (each segment keeping its orientation),
/// replacing all four inter-segment edges at once. No sequence of fewer
/// exchanges produces this move, which is what makes it a good ILS kick.
#[allow(clippy::type_complexity)]
pub(crate) fn double_bridge_order(
    order: &[u32],
    (p1, p2, p3): (usize, usize, usize),
) -> (Vec<u32>, [(u32, u32); 4], [(u32, u32); 4]) {
    let n = order.len();
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&order[..p1]);
    out.extend_from_slice(&order[p3..]);
    out.extend_from_slice(&order[p2..p3]);
    out.extend_from_slice(&order[p1..p2]);
    let removed = [
        (order[p1 - 1], order[p1]),
        (order[p2 - 1], order[p2]),
        (order[p3 - 1], order[p3]),
        (order[n - 1], order[0]),
    ];
    let added = [
        (order[p1 - 1], order[p3]),
        (order[n - 1], order[p2]),
        (order[p3 - 1], order[p1]),
        (order[p2 - 1], order[0]),
    ];
    (out, removed, added)
}

/// Applies one random double bridge to `tour` and returns the kicked tour.
pub fn double_bridge<F: Float, R: Rng>(
    inst: &TspInstance<F>,
    tour: &Tour<F>,
    rng: &mut R,
) -> Result<Tour<F>, Error> {
    let n = tour.len();
    if n < MIN_DOUBLE_BRIDGE_N {
        return Err(Error::InvalidParameter(format!(
            "double bridge needs at least {MIN_DOUBLE_BRIDGE_N} cities, got {n}"
        )));
    }
    let cuts = sample_cuts(rng, n);
    let (order, _, _) = double_bridge_order(tour.order(), cuts);
    Tour::new(inst, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{gen_random_euclidean, tour_distance};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kick_changes_exactly_four_edges() {
        let inst = gen_random_euclidean::<f64>(12, 1, 100.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let a = Tour::random(&inst, &mut rng);
            let b = double_bridge(&inst, &a, &mut rng).unwrap();
            assert_eq!(tour_distance(&a, &b).unwrap(), 4);
        }
    }

    #[test]
    fn reported_edge_delta_matches_cost_change() {
        let inst = gen_random_euclidean::<f64>(15, 2, 100.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let a = Tour::random(&inst, &mut rng);
            let cuts = sample_cuts(&mut rng, 15);
            let (order, removed, added) = double_bridge_order(a.order(), cuts);
            let b = Tour::new(&inst, order).unwrap();
            let mut delta = 0.0;
            for t in 0..4 {
                delta += inst.edge_cost(added[t].0 as usize, added[t].1 as usize);
                delta -= inst.edge_cost(removed[t].0 as usize, removed[t].1 as usize);
            }
            assert!((b.cost() - a.cost() - delta).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_tiny_tours() {
        let inst = gen_random_euclidean::<f64>(7, 1, 10.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = Tour::identity(&inst);
        assert!(double_bridge(&inst, &t, &mut rng).is_err());
    }

    #[test]
    fn cut_sampling_is_deterministic_per_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            assert_eq!(sample_cuts(&mut a, 20), sample_cuts(&mut b, 20));
        }
    }
}
