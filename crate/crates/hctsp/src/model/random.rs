use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::float::Float;

use super::{CostKind, TspInstance};

/// Draws `n` cities i.i.d. uniformly from the square `[0, side]^2` with a
/// seeded generator, so equal `(n, seed, side)` always yields the same
/// instance.
pub fn gen_random_euclidean<F: Float>(
    n: usize,
    seed: u64,
    side: F,
) -> Result<TspInstance<F>, Error> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "instance needs at least 3 cities, got {n}"
        )));
    }
    if !(side > F::zero()) {
        return Err(Error::InvalidParameter("side must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new_inclusive(F::zero(), side);
    let coords = (0..n)
        .map(|_| (dist.sample(&mut rng), dist.sample(&mut rng)))
        .collect();
    TspInstance::from_coords(format!("rand{n}-s{seed}"), CostKind::Euclid2d, coords)
}
