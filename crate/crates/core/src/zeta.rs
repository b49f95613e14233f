//! Closed forms of the zeta functions of a nodal marked curve.
//!
//! With `N(t) = (1 - L t) / (1 - L t - t + t^2)` the node factor, `|E|` nodes,
//! `n` legs and `Z_v` the Kapranov zeta function of the (punctured)
//! normalization of each component:
//!
//! | kind             | closed form                                       |
//! |------------------|---------------------------------------------------|
//! | divisorial       | `N^(|E|+n) * (1-t)^(2|E|+n) * prod Z_v`            |
//! | Hilbert          | `(1 - t + L t^2)^|E| * prod Z_v`                   |
//! | Kapranov, nodal  | `(1-t)^|E| * prod Z_v`                             |
//! | Kapranov, smooth | `Z_v` of a single edge-free vertex                 |
//!
//! `Z_v` for `P^1` is `1/((1-t)(1-Lt))`. Every other model keeps its symmetric
//! powers as generators `c[m,d]`; each puncture multiplies `Z_v` by `(1-t)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{CurveModel, DualGraph, Vertex};
use crate::ring::{Poly, RationalFn, RingElem, TruncSeries};

/// Truncation order used when none is requested.
pub const DEFAULT_ORDER: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZetaKind {
    Divisorial,
    Hilbert,
    KapranovNodal,
    KapranovSmooth,
}

impl ZetaKind {
    pub const ALL: [ZetaKind; 4] = [
        ZetaKind::Divisorial,
        ZetaKind::Hilbert,
        ZetaKind::KapranovNodal,
        ZetaKind::KapranovSmooth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ZetaKind::Divisorial => "divisorial",
            ZetaKind::Hilbert => "hilbert",
            ZetaKind::KapranovNodal => "kapranov-nodal",
            ZetaKind::KapranovSmooth => "kapranov-smooth",
        }
    }
}

impl fmt::Display for ZetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZetaKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ZetaKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown zeta kind {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("the smooth Kapranov zeta function needs a single vertex without edges")]
    NotSmooth,
}

/// `1 - t`.
fn one_minus_t() -> Poly {
    Poly::from_ints(&[1, -1])
}

/// `(1-t)^k` for any integer `k`.
fn one_minus_t_pow(k: i64) -> RationalFn {
    RationalFn::polynomial(one_minus_t())
        .powi(k)
        .expect("1 - t has unit constant term")
}

/// `1/((1-t)(1-Lt))`, the zeta function of `P^1`.
pub fn p1_rational() -> RationalFn {
    RationalFn::recip_poly(&one_minus_t() * &Poly::one_minus(RingElem::lefschetz()))
        .expect("unit constant term")
}

/// The node factor `(1 - L t) / (1 - L t - t + t^2)` as a rational function.
pub fn node_factor_rational() -> RationalFn {
    let l = RingElem::lefschetz();
    let den = Poly::new([RingElem::one(), -(&l + &RingElem::one()), RingElem::one()]);
    RationalFn::new(Poly::one_minus(l), den).expect("unit constant term")
}

pub fn node_factor(order: usize) -> TruncSeries {
    node_factor_rational().expand(order)
}

/// `1 - t + L t^2`, the per-node factor of the Hilbert zeta function.
pub fn hilbert_node_poly() -> Poly {
    Poly::new([
        RingElem::one(),
        RingElem::constant(-1),
        RingElem::lefschetz(),
    ])
}

/// `sum_d c[model_id,d] t^d`, or the `P^1` expansion.
fn sym_series(model: &CurveModel, model_id: &str, order: usize) -> TruncSeries {
    match model {
        CurveModel::ProjectiveLine => p1_rational().expand(order),
        _ => TruncSeries::from_coeffs(
            order,
            (0..=order as u32).map(|d| RingElem::sym_pow(model_id, d)),
        ),
    }
}

/// Kapranov zeta function of a smooth curve with `punctures` points removed.
pub fn zmot_vertex(
    model: &CurveModel,
    model_id: &str,
    punctures: u32,
    order: usize,
) -> TruncSeries {
    let z = sym_series(model, model_id, order);
    if punctures == 0 {
        return z;
    }
    &z * &TruncSeries::one_minus(order, RingElem::one()).pow(punctures)
}

fn vertex_series(v: &Vertex, order: usize) -> TruncSeries {
    zmot_vertex(&v.model, &v.model_id, v.punctures, order)
}

fn vertex_product(g: &DualGraph, order: usize) -> TruncSeries {
    g.vertices().iter().fold(TruncSeries::one(order), |acc, v| {
        &acc * &vertex_series(v, order)
    })
}

/// `N^(|E|+n) * (1-t)^(2|E|+n)`, the correction relating the divisorial zeta
/// function to the product of the component zeta functions.
fn divisorial_prefactor(g: &DualGraph) -> RationalFn {
    let c = g.counts();
    let marks = (c.num_edges + c.num_legs) as u32;
    let holes = (2 * c.num_edges + c.num_legs) as i64;
    &node_factor_rational().pow(marks) * &one_minus_t_pow(holes)
}

fn prefactor(kind: ZetaKind, g: &DualGraph) -> Result<RationalFn, ZetaError> {
    let e = g.edges().len() as u32;
    Ok(match kind {
        ZetaKind::Divisorial => divisorial_prefactor(g),
        ZetaKind::Hilbert => RationalFn::polynomial(hilbert_node_poly().pow(e)),
        ZetaKind::KapranovNodal => RationalFn::polynomial(one_minus_t().pow(e)),
        ZetaKind::KapranovSmooth => {
            if g.vertices().len() != 1 || e != 0 {
                return Err(ZetaError::NotSmooth);
            }
            RationalFn::one()
        }
    })
}

pub fn closed_series(
    kind: ZetaKind,
    g: &DualGraph,
    order: usize,
) -> Result<TruncSeries, ZetaError> {
    Ok(&prefactor(kind, g)?.expand(order) * &vertex_product(g, order))
}

pub fn zdiv_closed(g: &DualGraph, order: usize) -> TruncSeries {
    closed_series(ZetaKind::Divisorial, g, order).expect("always defined")
}

pub fn zhilb_closed(g: &DualGraph, order: usize) -> TruncSeries {
    closed_series(ZetaKind::Hilbert, g, order).expect("always defined")
}

pub fn zmot_nodal_closed(g: &DualGraph, order: usize) -> TruncSeries {
    closed_series(ZetaKind::KapranovNodal, g, order).expect("always defined")
}

/// An unreduced closed form: a rational function in `t` times the zeta
/// functions of the components whose symmetric powers are symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub rational: RationalFn,
    /// One `(model, model_id)` per symbolic component, in vertex order.
    pub symbolic: Vec<(CurveModel, String)>,
}

impl ClosedForm {
    pub fn expand(&self, order: usize) -> TruncSeries {
        self.symbolic
            .iter()
            .fold(self.rational.expand(order), |acc, (m, id)| {
                &acc * &sym_series(m, id, order)
            })
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (_, id) in &self.symbolic {
            write!(f, " * Z[{id}](t)")?;
        }
        Ok(())
    }
}

pub fn closed_form(kind: ZetaKind, g: &DualGraph) -> Result<ClosedForm, ZetaError> {
    let mut rational = prefactor(kind, g)?;
    let mut symbolic = Vec::new();
    for v in g.vertices() {
        if v.punctures > 0 {
            rational = &rational * &one_minus_t_pow(i64::from(v.punctures));
        }
        match v.model {
            CurveModel::ProjectiveLine => rational = &rational * &p1_rational(),
            _ => symbolic.push((v.model.clone(), v.model_id.clone())),
        }
    }
    Ok(ClosedForm { rational, symbolic })
}

/// The divisorial closed form, unreduced.
pub fn zdiv_rational(g: &DualGraph) -> ClosedForm {
    closed_form(ZetaKind::Divisorial, g).expect("always defined")
}
