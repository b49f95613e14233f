#![allow(dead_code)]

use std::collections::BTreeMap;

use divzeta::{DualGraph, GraphSpec, MotivicMeasure, WeilData};
use num_bigint::BigInt;

/// The main-theorem battery, by name.
pub fn battery() -> Vec<(&'static str, DualGraph)> {
    let graphs = [
        (
            "genus-1 loop",
            GraphSpec::new().vertex("m", 1).edge("m", "m"),
        ),
        ("one leg", GraphSpec::new().vertex("v1", 1).leg("v1")),
        (
            "two components",
            GraphSpec::new()
                .vertex("u", 2)
                .vertex("w", 2)
                .edge("u", "w"),
        ),
        (
            "parallel edges",
            GraphSpec::new()
                .vertex("a", 1)
                .vertex("b", 1)
                .edge("a", "b")
                .edge("a", "b"),
        ),
        (
            "theta",
            GraphSpec::new()
                .vertex("a", 0)
                .vertex("b", 0)
                .edge("a", "b")
                .edge("a", "b")
                .edge("a", "b"),
        ),
        (
            "genus-2 two legs",
            GraphSpec::new().vertex("m", 2).leg("m").leg("m"),
        ),
    ];
    graphs
        .into_iter()
        .map(|(n, s)| (n, s.build().unwrap()))
        .collect()
}

/// A Weil numerator of genus `g` over `F_q` satisfying the functional equation.
pub fn numerator(g: u32, q: i64) -> Vec<i64> {
    match g {
        0 => vec![1],
        1 => vec![1, -1, q],
        2 => vec![1, 1, 2, q, q * q],
        _ => panic!("no sample numerator for genus {g}"),
    }
}

pub fn point_count(g: &DualGraph, q: i64) -> MotivicMeasure {
    let models = g
        .vertices()
        .iter()
        .map(|v| {
            let data = WeilData {
                genus: v.genus,
                numerator: numerator(v.genus, q)
                    .into_iter()
                    .map(BigInt::from)
                    .collect(),
            };
            (v.model_id.clone(), data)
        })
        .collect();
    MotivicMeasure::point_count(q, models).unwrap()
}

pub fn euler(g: &DualGraph) -> MotivicMeasure {
    let genera: BTreeMap<String, u32> = g
        .vertices()
        .iter()
        .map(|v| (v.model_id.clone(), v.genus))
        .collect();
    MotivicMeasure::euler(genera)
}

/// Coefficients of `(1-t)^k`, `k` possibly negative, up to `order`.
pub fn one_minus_t_pow(k: i64, order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); order + 1];
    c[0] = BigInt::from(1);
    for d in 1..=order {
        // c_d = c_{d-1} * (d - 1 - k) / d
        c[d] = &c[d - 1] * BigInt::from(d as i64 - 1 - k) / BigInt::from(d as i64);
    }
    c
}
