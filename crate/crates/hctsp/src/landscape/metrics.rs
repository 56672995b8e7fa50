use std::collections::HashSet;

use crate::error::Error;
use crate::float::Float;
use crate::model::tour_distance_orders;

use super::trace::{SearchTrace, TraceEvent};

/// Local optima encountered per 100 moves, where a move is any
/// solution-changing transition (descent step or perturbation). Counts every
/// encounter; see [`local_optimum_density_distinct`] for the deduplicated
/// variant.
pub fn local_optimum_density<F: Float>(trace: &SearchTrace<F>) -> Result<f64, Error> {
    let moves = trace.move_count();
    if moves == 0 {
        return Err(Error::DegenerateInput("trace contains no moves".into()));
    }
    Ok(100.0 * trace.local_optimum_count() as f64 / moves as f64)
}

/// Density variant that counts each distinct local optimum (as an undirected
/// cyclic tour) once.
pub fn local_optimum_density_distinct<F: Float>(trace: &SearchTrace<F>) -> Result<f64, Error> {
    let moves = trace.move_count();
    if moves == 0 {
        return Err(Error::DegenerateInput("trace contains no moves".into()));
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for (_, order) in trace.local_optima() {
        seen.insert(canonical_cycle(order));
    }
    Ok(100.0 * seen.len() as f64 / moves as f64)
}

/// Canonical representative of a cyclic tour up to rotation and reflection:
/// start at city 0 and walk towards the smaller neighbor.
fn canonical_cycle(order: &[u32]) -> Vec<u32> {
    let n = order.len();
    let z = order.iter().position(|&c| c == 0).expect("city 0 present");
    let fwd = order[(z + 1) % n];
    let bwd = order[(z + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if fwd <= bwd {
        for t in 0..n {
            out.push(order[(z + t) % n]);
        }
    } else {
        for t in 0..n {
            out.push(order[(z + n - t) % n]);
        }
    }
    out
}

/// Fraction of perturbation episodes whose following local optimum differs
/// (tour distance > 0) from the one preceding the perturbation. Episodes not
/// bracketed by local optima (budget ran out mid-descent) are skipped.
pub fn escaping_rate<F: Float>(trace: &SearchTrace<F>) -> Result<f64, Error> {
    let (escaped, episodes) = escape_counts(trace)?;
    if episodes == 0 {
        return Err(Error::DegenerateInput(
            "trace contains no complete perturbation episode".into(),
        ));
    }
    Ok(escaped as f64 / episodes as f64)
}

/// Raw (escaped, completed-episode) counts, for pooling across traces.
pub fn escape_counts<F: Float>(trace: &SearchTrace<F>) -> Result<(usize, usize), Error> {
    let mut last_lo: Option<&[u32]> = None;
    let mut pending: Option<&[u32]> = None;
    let mut episodes = 0usize;
    let mut escaped = 0usize;
    for event in &trace.events {
        match event {
            TraceEvent::Perturbation => pending = last_lo,
            TraceEvent::LocalOptimum { order, .. } => {
                if let Some(prev) = pending.take() {
                    episodes += 1;
                    if tour_distance_orders(prev, order)? > 0 {
                        escaped += 1;
                    }
                }
                last_lo = Some(order);
            }
            _ => {}
        }
    }
    Ok((escaped, episodes))
}

/// Fitness-distance correlation: Pearson correlation of `(f_o cost,
/// distance-to-nearest-reference)` samples.
pub fn fdc(samples: &[(f64, f64)]) -> Result<f64, Error> {
    pearson(samples)
}

fn pearson(samples: &[(f64, f64)]) -> Result<f64, Error> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!(
            "correlation needs at least 2 samples, got {n}"
        )));
    }
    let m = n as f64;
    let (mut mx, mut my) = (0.0, 0.0);
    for &(x, y) in samples {
        mx += x;
        my += y;
    }
    mx /= m;
    my /= m;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in samples {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateInput(
            "zero variance in correlation input".into(),
        ));
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// Distance from `order` to the nearest tour of a reference set.
pub fn distance_to_reference(order: &[u32], reference: &[Vec<u32>]) -> Result<usize, Error> {
    if reference.is_empty() {
        return Err(Error::DegenerateInput("empty reference set".into()));
    }
    let mut best = usize::MAX;
    for r in reference {
        best = best.min(tour_distance_orders(order, r)?);
    }
    Ok(best)
}

/// Percent excess over the optimum: `(cost - opt) / opt * 100`.
pub fn excess(cost: f64, opt_cost: f64) -> Result<f64, Error> {
    if !(opt_cost > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "optimum cost must be positive, got {opt_cost}"
        )));
    }
    Ok((cost - opt_cost) / opt_cost * 100.0)
}

/// Trapezoidal integral of a curve over its abscissa span.
pub fn auc(curve: &[(f64, f64)]) -> Result<f64, Error> {
    if curve.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "AUC needs at least 2 points, got {}",
            curve.len()
        )));
    }
    let mut total = 0.0;
    for w in curve.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::InvalidParameter(
                "curve abscissas must be strictly increasing".into(),
            ));
        }
        total += 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
    }
    Ok(total)
}
