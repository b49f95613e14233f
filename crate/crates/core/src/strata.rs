//! Brute-force stratification of the spaces of degree-`d` divisors.
//!
//! A stratum is a stable pair over the dual graph: a degree on every original
//! component, plus a chain of exceptional rational components on each edge
//! and each leg, each carrying degree at least one. Its class is
//!
//! ```text
//! prod_v [Sym^{d_v}(X_v minus its special points)] * prod_{chain entries a} [Sym^{a-1} G_m]
//! ```
//!
//! Summing over all pairs of degree `d` gives the `t^d` coefficient of the
//! divisorial zeta function without going through any closed form. Nothing
//! here depends on [`crate::zeta`].

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::binomial;
use rayon::prelude::*;

use crate::graph::{CurveModel, DualGraph};
use crate::ring::RingElem;

/// One stratum of the degree-`d` divisor space.
///
/// Ordered lexicographically by `(vertex_degrees, edge_chains, leg_chains)`,
/// the order in which [`enumerate_stable_pairs`] returns them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StablePair {
    /// Degree on each original component, by vertex index.
    pub vertex_degrees: Vec<u32>,
    /// Exceptional degrees along each edge, read from `ends.0` to `ends.1`.
    pub edge_chains: Vec<Vec<u32>>,
    /// Exceptional degrees along each leg, read from the component outward.
    pub leg_chains: Vec<Vec<u32>>,
}

impl StablePair {
    pub fn degree(&self) -> u32 {
        self.vertex_degrees.iter().sum::<u32>()
            + self.edge_chains.iter().flatten().sum::<u32>()
            + self.leg_chains.iter().flatten().sum::<u32>()
    }

    /// Number of exceptional components.
    pub fn num_exceptional(&self) -> usize {
        self.edge_chains
            .iter()
            .chain(&self.leg_chains)
            .map(Vec::len)
            .sum()
    }

    pub fn is_stable(&self) -> bool {
        self.edge_chains
            .iter()
            .chain(&self.leg_chains)
            .flatten()
            .all(|&a| a >= 1)
    }

    /// One-line dump, e.g. `v:{v1:0} e:{} l:{leg0:[1,1]}`.
    pub fn dump(&self, g: &DualGraph) -> String {
        fn chain(c: &[u32]) -> String {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            format!("[{}]", parts.join(","))
        }
        let mut s = String::from("v:{");
        for (i, (v, d)) in g.vertices().iter().zip(&self.vertex_degrees).enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}:{d}", v.id);
        }
        s.push_str("} e:{");
        let edges: Vec<String> = self
            .edge_chains
            .iter()
            .enumerate()
            .map(|(k, c)| format!("e{k}:{}", chain(c)))
            .collect();
        s.push_str(&edges.join(","));
        s.push_str("} l:{");
        let legs: Vec<String> = self
            .leg_chains
            .iter()
            .enumerate()
            .map(|(k, c)| format!("leg{k}:{}", chain(c)))
            .collect();
        s.push_str(&legs.join(","));
        s.push('}');
        s
    }
}

/// All ordered compositions of `n` into positive parts; `[[]]` for `n = 0`.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All ways to write `n` as an ordered sum of `slots` nonnegative integers.
pub fn weak_compositions(n: u32, slots: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=n {
            prefix.push(k);
            go(n - k, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    if slots == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(n, slots, &mut Vec::with_capacity(slots), &mut out);
    out
}

/// Every stable pair of total degree `d` over `g`, sorted.
pub fn enumerate_stable_pairs(g: &DualGraph, d: u32) -> Vec<StablePair> {
    let nv = g.vertices().len();
    let ne = g.edges().len();
    let nl = g.legs().len();
    let comp_cache: Vec<Vec<Vec<u32>>> = (0..=d).map(compositions).collect();

    let mut out = Vec::new();
    for shares in weak_compositions(d, nv + ne + nl) {
        let (vdeg, chains) = shares.split_at(nv);
        // cartesian product over the chain slots
        let mut partial: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        for &s in chains {
            let mut next = Vec::with_capacity(partial.len() * comp_cache[s as usize].len());
            for p in &partial {
                for c in &comp_cache[s as usize] {
                    let mut q = p.clone();
                    q.push(c.clone());
                    next.push(q);
                }
            }
            partial = next;
        }
        for mut p in partial {
            let leg_chains = p.split_off(ne);
            out.push(StablePair {
                vertex_degrees: vdeg.to_vec(),
                edge_chains: p,
                leg_chains,
            });
        }
    }
    out.sort();
    out
}

/// `[Sym^m G_m]`: `1` for `m = 0`, else `L^m - L^(m-1)`.
pub fn torus_class(m: u32) -> RingElem {
    if m == 0 {
        RingElem::one()
    } else {
        RingElem::lefschetz_pow(m) - RingElem::lefschetz_pow(m - 1)
    }
}

/// `[Sym^k X]` for the complete curve.
fn sym_class(model: &CurveModel, model_id: &str, k: u32) -> RingElem {
    match model {
        CurveModel::ProjectiveLine => (0..=k).map(RingElem::lefschetz_pow).sum(),
        _ => RingElem::sym_pow(model_id, k),
    }
}

/// `[Sym^d (X minus holes points)]`, by inclusion-exclusion over how many of
/// the removed points the divisor would have met:
/// `sum_i (-1)^i C(holes, i) [Sym^{d-i} X]`.
pub fn punctured_sym_class(model: &CurveModel, model_id: &str, holes: u32, d: u32) -> RingElem {
    (0..=d.min(holes))
        .map(|i| {
            let c = binomial(BigInt::from(holes), BigInt::from(i));
            let c = if i % 2 == 0 { c } else { -c };
            sym_class(model, model_id, d - i).scale(&c)
        })
        .sum()
}

/// Sum over compositions `a` of `d` of `prod_i [Sym^{a_i - 1} G_m]`: the class
/// of all exceptional chains of total degree `d` on one edge or leg.
pub fn composition_torus_sum(d: u32) -> RingElem {
    compositions(d)
        .iter()
        .map(|a| a.iter().map(|&x| torus_class(x - 1)).product::<RingElem>())
        .sum()
}

/// Evaluates stratum classes. The standard oracle uses [`torus_class`];
/// verification tests swap in perturbed rules to check that mismatches are
/// detected.
pub struct Oracle {
    torus: Box<dyn Fn(u32) -> RingElem + Send + Sync>,
    skip: Option<(u32, usize)>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::standard()
    }
}

impl Oracle {
    pub fn standard() -> Self {
        Oracle {
            torus: Box::new(torus_class),
            skip: None,
        }
    }

    /// An oracle using `torus` in place of [`torus_class`].
    pub fn with_torus(torus: impl Fn(u32) -> RingElem + Send + Sync + 'static) -> Self {
        Oracle {
            torus: Box::new(torus),
            skip: None,
        }
    }

    /// An oracle that leaves out the pair at `index` in degree `d`.
    pub fn dropping(d: u32, index: usize) -> Self {
        Oracle {
            skip: Some((d, index)),
            ..Oracle::standard()
        }
    }

    pub fn stratum_class(&self, g: &DualGraph, p: &StablePair) -> RingElem {
        let counts = g.counts();
        let mut acc = RingElem::one();
        for ((v, c), &d) in g
            .vertices()
            .iter()
            .zip(&counts.per_vertex)
            .zip(&p.vertex_degrees)
        {
            acc = &acc * &punctured_sym_class(&v.model, &v.model_id, c.holes(), d);
        }
        for &a in p.edge_chains.iter().chain(&p.leg_chains).flatten() {
            acc = &acc * &(self.torus)(a - 1);
        }
        acc
    }

    /// `[Div_d]` as the sum of its stratum classes.
    pub fn coeff(&self, g: &DualGraph, d: u32) -> RingElem {
        let counts = g.counts();
        // class tables indexed by degree
        let vertex_tab: Vec<Vec<RingElem>> = g
            .vertices()
            .iter()
            .zip(&counts.per_vertex)
            .map(|(v, c)| {
                (0..=d)
                    .map(|k| punctured_sym_class(&v.model, &v.model_id, c.holes(), k))
                    .collect()
            })
            .collect();
        let torus_tab: Vec<RingElem> = (0..d.max(1)).map(|m| (self.torus)(m)).collect();
        let pairs = enumerate_stable_pairs(g, d);
        // pairs are sorted by vertex degrees, so each run shares its vertex factor
        let mut runs: Vec<std::ops::Range<usize>> = Vec::new();
        for (i, p) in pairs.iter().enumerate() {
            match runs.last_mut() {
                Some(r) if pairs[r.start].vertex_degrees == p.vertex_degrees => r.end = i + 1,
                _ => runs.push(i..i + 1),
            }
        }
        runs.into_par_iter()
            .map(|run| {
                let mut chains = RingElem::zero();
                for i in run.clone().filter(|&i| self.skip != Some((d, i))) {
                    let p = &pairs[i];
                    let mut acc = RingElem::one();
                    for &a in p.edge_chains.iter().chain(&p.leg_chains).flatten() {
                        acc = &acc * &torus_tab[a as usize - 1];
                    }
                    chains += &acc;
                }
                let degrees = &pairs[run.start].vertex_degrees;
                vertex_tab
                    .iter()
                    .zip(degrees)
                    .fold(chains, |acc, (tab, &k)| &acc * &tab[k as usize])
            })
            .reduce(RingElem::zero, |a, b| a + b)
    }
}

pub fn stratum_class(g: &DualGraph, p: &StablePair) -> RingElem {
    Oracle::standard().stratum_class(g, p)
}

/// The oracle value of the `t^d` coefficient of the divisorial zeta function.
pub fn zdiv_strata_coeff(g: &DualGraph, d: u32) -> RingElem {
    Oracle::standard().coeff(g, d)
}

/// `|Delta(g, d)|` for `d = 0..=max_degree`.
pub fn count_strata(g: &DualGraph, max_degree: u32) -> Vec<usize> {
    (0..=max_degree)
        .map(|d| enumerate_stable_pairs(g, d).len())
        .collect()
}
