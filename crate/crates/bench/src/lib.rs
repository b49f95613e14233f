//! Graphs shared by the benchmarks.

use divzeta::{DualGraph, GraphSpec};

/// Two genus-0 components joined by three nodes.
pub fn theta() -> DualGraph {
    GraphSpec::new()
        .vertex("a", 0)
        .vertex("b", 0)
        .edge("a", "b")
        .edge("a", "b")
        .edge("a", "b")
        .build()
        .expect("theta graph is stable")
}

/// Two genus-2 components joined by one node.
pub fn two_components() -> DualGraph {
    GraphSpec::new()
        .vertex("u", 2)
        .vertex("w", 2)
        .edge("u", "w")
        .build()
        .expect("stable")
}

/// A chain of `n` genus-1 components with a leg at each end.
pub fn chain(n: usize) -> DualGraph {
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut s = GraphSpec::new();
    for id in &ids {
        s = s.vertex(id, 1);
    }
    for w in ids.windows(2) {
        s = s.edge(&w[0], &w[1]);
    }
    s.leg(&ids[0]).leg(&ids[n - 1]).build().expect("stable")
}
