//! Shared instance builders for the benchmarks.

use mdtree::gen::{gen_gnp, gen_random_cograph};
use mdtree::Graph;

/// Erdos-Renyi sample with a fixed expected average degree, the regime the
/// decomposition's scaling is judged in.
pub fn gnp_avg_degree(n: usize, degree: f64, seed: u64) -> Graph {
    let p = (degree / (n - 1) as f64).clamp(0.0, 1.0);
    gen_gnp(n, p, seed)
}

/// Random cograph; exercises the prime-free path where the tree is deep and
/// the edge count is large.
pub fn cograph(n: usize, seed: u64) -> Graph {
    gen_random_cograph(n, seed).0
}
