use crate::error::Error;
use crate::float::Float;

use super::TspInstance;

/// Per-city candidate lists: the k nearest distinct cities, sorted by
/// ascending cost with ties broken by lower city index.
#[derive(Debug, Clone)]
pub struct NeighborTable<F> {
    k: usize,
    lists: Vec<Vec<u32>>,
    _cost: std::marker::PhantomData<F>,
}

impl<F: Float> NeighborTable<F> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn neighbors(&self, city: u32) -> &[u32] {
        &self.lists[city as usize]
    }

    /// Number of cities the table covers.
    pub fn lists_len(&self) -> usize {
        self.lists.len()
    }
}

pub fn nearest_neighbor_lists<F: Float>(
    inst: &TspInstance<F>,
    k: usize,
) -> Result<NeighborTable<F>, Error> {
    let n = inst.len();
    if k == 0 || k > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "neighbor list size k={k} not in 1..={}",
            n - 1
        )));
    }
    let mut lists = Vec::with_capacity(n);
    let mut row: Vec<(F, u32)> = Vec::with_capacity(n - 1);
    for i in 0..n {
        row.clear();
        for j in 0..n {
            if j != i {
                row.push((inst.edge_cost(i, j), j as u32));
            }
        }
        // (cost, index) ordering gives the documented tie-break for free;
        // partial selection keeps this O(n) per row for large instances
        if row.len() > k {
            row.select_nth_unstable_by(k - 1, |a, b| a.partial_cmp(b).unwrap());
            row.truncate(k);
        }
        row.sort_by(|a, b| a.partial_cmp(b).unwrap());
        lists.push(row.iter().map(|&(_, j)| j).collect());
    }
    Ok(NeighborTable {
        k,
        lists,
        _cost: std::marker::PhantomData,
    })
}
