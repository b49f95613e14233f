//! Exact motivic zeta functions of stable marked curves.
//!
//! Given the dual graph of a nodal curve with marked points, this crate
//! computes its divisorial, Hilbert and Kapranov zeta functions as truncated
//! power series (and unreduced rational functions) over the ring
//! `Z[L, c[m,d]]`, where `L` is the Lefschetz class and `c[m,d]` the class of
//! the `d`-th symmetric power of a component. The divisorial closed form is
//! checked against an independent sum over all strata of the divisor spaces,
//! symbolically or under point-counting and Euler-characteristic measures.
//!
//! ```
//! use divzeta::{GraphSpec, verify, MotivicMeasure};
//!
//! let g = GraphSpec::new().vertex("u", 2).vertex("w", 2).edge("u", "w").build().unwrap();
//! let report = verify(&g, 4, &MotivicMeasure::SymbolicIdentity).unwrap();
//! assert!(report.is_verified());
//! ```

pub mod graph;
pub mod measures;
pub mod ring;
pub mod strata;
pub mod verify;
pub mod zeta;

pub use graph::{CurveModel, DualGraph, GraphError, GraphSpec, ModelSpec};
pub use measures::{weil_series, MeasureError, MeasureKind, MeasureSpec, MotivicMeasure, WeilData};
pub use ring::{Generator, Poly, RationalFn, RingElem, TruncSeries};
pub use strata::{
    composition_torus_sum, count_strata, enumerate_stable_pairs, punctured_sym_class,
    stratum_class, torus_class, zdiv_strata_coeff, Oracle, StablePair,
};
pub use verify::{verify, verify_with, VerifyReport, VerifyRow};
pub use zeta::{
    closed_form, closed_series, node_factor, node_factor_rational, zdiv_closed, zdiv_rational,
    zhilb_closed, zmot_nodal_closed, zmot_vertex, ClosedForm, ZetaKind, DEFAULT_ORDER,
};
