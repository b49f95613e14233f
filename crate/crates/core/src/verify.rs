//! Degree-by-degree comparison of the stratum sum against the closed form.

use rayon::prelude::*;

use crate::graph::DualGraph;
use crate::measures::{MeasureError, MotivicMeasure};
use crate::ring::RingElem;
use crate::strata::Oracle;
use crate::zeta::zdiv_closed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub degree: u32,
    /// Sum of stratum classes.
    pub oracle: RingElem,
    /// Coefficient of the closed form.
    pub closed: RingElem,
    /// `oracle - closed`.
    pub difference: RingElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn is_verified(&self) -> bool {
        self.rows.iter().all(|r| r.difference.is_zero())
    }

    pub fn first_mismatch(&self) -> Option<&VerifyRow> {
        self.rows.iter().find(|r| !r.difference.is_zero())
    }
}

pub fn verify(
    g: &DualGraph,
    max_degree: u32,
    measure: &MotivicMeasure,
) -> Result<VerifyReport, MeasureError> {
    verify_with(g, max_degree, measure, &Oracle::standard())
}

/// Compares `oracle` with the divisorial closed form for `d = 0..=max_degree`,
/// both pushed through `measure`. Degrees are evaluated in parallel; rows come
/// back in degree order.
pub fn verify_with(
    g: &DualGraph,
    max_degree: u32,
    measure: &MotivicMeasure,
    oracle: &Oracle,
) -> Result<VerifyReport, MeasureError> {
    let closed = zdiv_closed(g, max_degree as usize);
    let rows = (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let o = measure.apply(&oracle.coeff(g, d))?;
            let c = measure.apply(closed.coeff(d as usize))?;
            Ok(VerifyRow {
                degree: d,
                difference: &o - &c,
                oracle: o,
                closed: c,
            })
        })
        .collect::<Result<Vec<_>, MeasureError>>()?;
    Ok(VerifyReport { rows })
}
