//! Instance representation, TSPLIB parsing, tour arithmetic, neighbor
//! lists and random instance generation.

mod instance;
mod neighbors;
mod random;
mod tour;
mod tsplib;

pub use instance::{CostKind, TspInstance};
pub use neighbors::{nearest_neighbor_lists, NeighborTable};
pub use random::gen_random_euclidean;
pub use tour::{tour_distance, Tour};
pub(crate) use tour::tour_distance_orders;
pub use tsplib::{parse_tsplib, read_tour_file, write_tour_file, write_tsplib};
