//! The 18-vertex worked example used across tests and docs.
//!
//! A pivot x sees four neighbours; one of them (a) is joined to everything
//! at distance two, the distance-two band splits into five pieces of
//! varying shape, and a lone vertex r hangs off the far end. The graph
//! exercises every pipeline phase: a series split in the first layer,
//! refinement of a star, a promoted prime core, parallel absorption and a
//! forced jump to the whole universe.

use crate::graph::Graph;

/// Vertex names in id order.
pub const LABELS: [&str; 18] = [
    "x", "c", "d", "e", "a", "f", "g", "h", "i", "b", "k", "l", "j", "m", "n", "p", "q", "r",
];

/// Builds the fixture graph and its vertex labels.
pub fn build_appendix_fixture() -> (Graph, Vec<String>) {
    let x = 0;
    let (c, d, e, a) = (1, 2, 3, 4);
    let (f, g, h, i, b) = (5, 6, 7, 8, 9);
    let (k, l, j) = (10, 11, 12);
    let (m, n, p, q, r) = (13, 14, 15, 16, 17);

    let mut edges: Vec<(u32, u32)> = vec![(x, c), (x, d), (x, e), (x, a)];
    edges.extend([(a, c), (a, d), (a, e)]);
    for w in [f, g, h, i, b, k, l, j, m, n, p, q] {
        edges.push((a, w));
    }
    edges.extend([(i, c), (i, d), (i, e)]);
    edges.extend([(i, f), (i, g), (i, h)]);
    edges.push((k, l));
    edges.extend([(q, m), (q, n), (q, p)]);
    edges.push((q, r));

    let graph = Graph::new(18, &edges).expect("fixture edges are simple");
    (graph, LABELS.iter().map(|s| s.to_string()).collect())
}

/// Id of a named fixture vertex.
pub fn id_of(name: &str) -> u32 {
    LABELS
        .iter()
        .position(|&l| l == name)
        .unwrap_or_else(|| panic!("unknown fixture vertex {name}")) as u32
}
