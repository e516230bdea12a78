//! The 18-vertex fixture traced end to end: layering, active edges,
//! sequence, attachment values, brackets and the final tree.

use std::collections::BTreeSet;

use mdtree::decompose::decompose_traced;
use mdtree::fixture::{build_appendix_fixture, id_of};
use mdtree::oracle;
use mdtree::tree::validate;
use mdtree::NodeKind;

fn ids(names: &[&str]) -> BTreeSet<u32> {
    names.iter().map(|n| id_of(n)).collect()
}

fn set(vs: &[u32]) -> BTreeSet<u32> {
    vs.iter().copied().collect()
}

#[test]
fn top_stage_matches_the_worked_example() {
    let (g, _) = build_appendix_fixture();
    let (tree, trace) = decompose_traced(&g);

    let top = trace
        .stages
        .iter()
        .find(|s| s.depth == 0)
        .expect("top stage");
    assert_eq!(top.pivot, id_of("x"));

    // BFS layers.
    assert_eq!(top.layers.len(), 2 + 1);
    assert_eq!(set(&top.layers[0]), ids(&["c", "d", "e", "a"]));
    assert_eq!(
        set(&top.layers[1]),
        ids(&["f", "g", "h", "i", "b", "j", "k", "l", "m", "n", "p", "q"])
    );
    assert_eq!(set(&top.layers[2]), ids(&["r"]));

    // Active-edge lists.
    let alpha = |name: &str| -> BTreeSet<u32> {
        let v = id_of(name);
        let (_, a) = top.alpha.iter().find(|&&(w, _)| w == v).unwrap();
        a.iter().copied().collect()
    };
    assert_eq!(alpha("x"), ids(&["c", "d", "e", "a"]));
    assert_eq!(
        alpha("a"),
        ids(&["x", "b", "j", "f", "g", "h", "i", "k", "l", "m", "n", "p", "q"])
    );
    for v in ["c", "d", "e"] {
        assert_eq!(alpha(v), ids(&["x", "i"]));
    }
    for v in ["b", "j", "f", "g", "h", "k", "l", "m", "n", "p"] {
        assert_eq!(alpha(v), ids(&["a"]), "alpha({v})");
    }
    assert_eq!(alpha("i"), ids(&["a", "c", "d", "e"]));
    assert_eq!(alpha("q"), ids(&["a", "r"]));
    assert_eq!(alpha("r"), ids(&["q"]));

    // Active lists pair up symmetrically.
    for (v, a) in &top.alpha {
        for w in a {
            let (_, back) = top.alpha.iter().find(|&&(u, _)| u == *w).unwrap();
            assert!(back.contains(v), "alpha symmetry broken at {v}-{w}");
        }
    }

    // The run sequence around the pivot.
    let expected: [(&i32, &[&str]); 9] = [
        (&-2, &["a"]),
        (&-1, &["c", "d", "e"]),
        (&0, &["x"]),
        (&1, &["f", "g", "h", "i"]),
        (&2, &["b"]),
        (&3, &["k", "l"]),
        (&4, &["j"]),
        (&5, &["m", "n", "p", "q"]),
        (&6, &["r"]),
    ];
    assert_eq!(top.sequence.len(), expected.len());
    for (entry, (pos, members)) in top.sequence.iter().zip(expected) {
        assert_eq!(entry.position, *pos);
        assert_eq!(set(&entry.members), ids(members), "at position {pos}");
    }

    // Attachment values.
    let mu_at = |pos: i32| top.sequence.iter().find(|e| e.position == pos).unwrap().mu;
    assert_eq!(mu_at(-2), Some(5));
    assert_eq!(mu_at(-1), Some(1));
    for pos in 1..=5 {
        assert_eq!(mu_at(pos), Some(-1), "mu at +{pos}");
    }
    assert_eq!(mu_at(6), Some(-2));

    // Only the piece with the distance-three tail reaches further right.
    for e in &top.sequence {
        assert_eq!(e.right_edge, e.position == 5, "right edge at {}", e.position);
    }
    let layer_at = |pos: i32| top.sequence.iter().find(|e| e.position == pos).unwrap().layer;
    for pos in 1..=5 {
        assert_eq!(layer_at(pos), Some(1));
    }
    assert_eq!(layer_at(6), Some(2));

    // Delineation: prime, then parallel absorption, then the forced jump
    // to the whole universe.
    let shape: Vec<(i32, i32, NodeKind)> =
        top.brackets.iter().map(|b| (b.lo, b.hi, b.kind)).collect();
    assert_eq!(
        shape,
        vec![
            (-1, 1, NodeKind::Prime),
            (-1, 4, NodeKind::Parallel),
            (-2, 6, NodeKind::Prime),
        ]
    );

    // The finished tree, validated and checked against the recursive
    // oracle; its canonical form is frozen here.
    assert!(validate(&tree, &g).is_valid());
    assert_eq!(
        tree.canonical_string(),
        oracle::md_tree_recursive(&g).canonical_string()
    );
    assert_eq!(
        tree.canonical_string(),
        "(prime (parallel (prime 0 (parallel 1 2 3) (parallel 5 6 7) 8) 9 (series 10 11) 12) \
         4 (parallel 13 14 15) 16 17)"
    );
}

#[test]
fn shipped_fixture_file_matches_the_builder() {
    let (g, labels) = build_appendix_fixture();
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/appendix.grf"
    ))
    .expect("data/appendix.grf in the repository");
    let parsed = mdtree::io::parse_graph(&text, mdtree::io::ParseMode::Strict).unwrap();
    assert_eq!(parsed.graph.edges(), g.edges());
    assert_eq!(parsed.labels.as_deref().map(<[String]>::to_vec), Some(labels.clone()));
    assert_eq!(mdtree::io::render_graph(&g, Some(&labels)), text);
}
