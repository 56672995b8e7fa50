use hctsp::model::{gen_random_euclidean, nearest_neighbor_lists};
use hctsp::search::{run_ils, Budget, SearchParams};
use std::time::Instant;

fn main() {
    let inst = gen_random_euclidean::<f64>(400, 42, 10_000.0).unwrap();
    let table = nearest_neighbor_lists(&inst, 20).unwrap();
    let t0 = Instant::now();
    for i in 0..90u64 {
        let params = SearchParams::new(i, Budget::evals(1_000_000));
        let t = Instant::now();
        run_ils(&inst, &table, &params).unwrap();
        if i % 10 == 9 {
            println!("runs {}-{}: last={:.2}s total={:.0}s", i - 9, i, t.elapsed().as_secs_f64(), t0.elapsed().as_secs_f64());
        }
    }
}
