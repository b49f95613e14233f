//! Motivic measures: ring homomorphisms out of the symbolic coefficient ring.
//!
//! * point counting over `F_q`: `L -> q`, `c[m,d] -> #Sym^d X_m (F_q)`, the
//!   `t^d` coefficient of `P_m(t) / ((1-t)(1-qt))`;
//! * Euler characteristic: `L -> 1`, `c[m,d] -> ` the `t^d` coefficient of
//!   `(1-t)^(2g_m - 2)`;
//! * the symbolic identity.
//!
//! A measure is fixed at construction: it knows exactly which model ids it
//! can realize, and applying it to anything else is an error.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CurveModel, DualGraph};
use crate::ring::{Generator, Poly, RationalFn, RingElem, TruncSeries};
use crate::zeta::ClosedForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("generator {0} has no realization under this measure")]
    Unrealized(String),
    #[error("model {model}: invalid Weil numerator: {reason}")]
    BadNumerator { model: String, reason: String },
    #[error("q must be at least 2 for point counting, got {0}")]
    BadQ(i64),
    #[error("the symbolic measure has no rational realization for Z[{0}]")]
    SymbolicFactor(String),
}

/// Weil data for one curve model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilData {
    pub genus: u32,
    pub numerator: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MotivicMeasure {
    SymbolicIdentity,
    PointCount {
        q: i64,
        models: BTreeMap<String, WeilData>,
    },
    EulerCharacteristic {
        genera: BTreeMap<String, u32>,
    },
}

/// Truncated expansion of `P(t) / ((1-t)(1-qt))`.
///
/// `q = 1` is accepted so the expansion itself can be tested in isolation.
pub fn weil_series(numerator: &[BigInt], q: i64, order: usize) -> Vec<BigInt> {
    let q = BigInt::from(q);
    // 1/((1-t)(1-qt)) = sum_d (1 + q + ... + q^d) t^d
    let mut base = Vec::with_capacity(order + 1);
    let mut qpow = BigInt::one();
    let mut acc = BigInt::zero();
    for _ in 0..=order {
        acc += &qpow;
        base.push(acc.clone());
        qpow *= &q;
    }
    (0..=order)
        .map(|d| {
            numerator
                .iter()
                .take(d + 1)
                .enumerate()
                .map(|(i, p)| p * &base[d - i])
                .sum()
        })
        .collect()
}

/// `t^d` coefficient of `(1-t)^k` for any integer `k`: `(-1)^d C(k, d)`.
fn one_minus_t_pow_coeff(k: i64, d: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..i64::from(d) {
        num *= -(k - i);
        den *= i + 1;
    }
    num / den
}

/// Checks `P(0) = 1`, `deg P <= 2g` and, when `deg P = 2g`, the functional
/// equation `q^g t^{2g} P(1/(qt)) = P(t)`, i.e. `a_{2g-i} = q^{g-i} a_i`.
fn validate_numerator(model: &str, data: &WeilData, q: i64) -> Result<(), MeasureError> {
    let bad = |reason: String| MeasureError::BadNumerator {
        model: model.to_string(),
        reason,
    };
    let p = &data.numerator;
    if p.first().map(BigInt::is_one) != Some(true) {
        return Err(bad("constant term must be 1".into()));
    }
    let two_g = 2 * data.genus as usize;
    let mut deg = p.len() - 1;
    while deg > 0 && p[deg].is_zero() {
        deg -= 1;
    }
    if deg > two_g {
        return Err(bad(format!("degree {deg} exceeds 2g = {two_g}")));
    }
    if deg == two_g {
        let q = BigInt::from(q);
        for i in 0..=data.genus as usize {
            let scale = num_traits::pow(q.clone(), data.genus as usize - i);
            if p[two_g - i] != &p[i] * scale {
                return Err(bad(format!(
                    "functional equation fails at t^{}: expected {} * q^{}",
                    two_g - i,
                    p[i],
                    data.genus as usize - i
                )));
            }
        }
    }
    Ok(())
}

impl MotivicMeasure {
    pub fn point_count(q: i64, models: BTreeMap<String, WeilData>) -> Result<Self, MeasureError> {
        if q < 2 {
            return Err(MeasureError::BadQ(q));
        }
        for (m, data) in &models {
            validate_numerator(m, data, q)?;
        }
        Ok(MotivicMeasure::PointCount { q, models })
    }

    pub fn euler(genera: BTreeMap<String, u32>) -> Self {
        MotivicMeasure::EulerCharacteristic { genera }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, MotivicMeasure::SymbolicIdentity)
    }

    fn realize_generator(&self, g: &Generator) -> Result<BigInt, MeasureError> {
        let unrealized = || MeasureError::Unrealized(g.to_string());
        match (self, g) {
            (MotivicMeasure::SymbolicIdentity, _) => Err(unrealized()),
            (MotivicMeasure::PointCount { q, .. }, Generator::Lefschetz) => Ok(BigInt::from(*q)),
            (MotivicMeasure::EulerCharacteristic { .. }, Generator::Lefschetz) => Ok(BigInt::one()),
            (MotivicMeasure::PointCount { q, models }, Generator::SymPow { model, degree }) => {
                let data = models.get(model).ok_or_else(unrealized)?;
                let d = *degree as usize;
                Ok(weil_series(&data.numerator, *q, d).swap_remove(d))
            }
            (
                MotivicMeasure::EulerCharacteristic { genera },
                Generator::SymPow { model, degree },
            ) => {
                let g = genera.get(model).ok_or_else(unrealized)?;
                Ok(one_minus_t_pow_coeff(2 * i64::from(*g) - 2, *degree))
            }
        }
    }

    /// Image of `x`. Numeric measures return a constant element.
    pub fn apply(&self, x: &RingElem) -> Result<RingElem, MeasureError> {
        if self.is_symbolic() {
            return Ok(x.clone());
        }
        x.evaluate(|g| self.realize_generator(g))
            .map(RingElem::from)
    }

    /// Image of `x` as an integer. The symbolic measure only accepts constants.
    pub fn evaluate(&self, x: &RingElem) -> Result<BigInt, MeasureError> {
        if self.is_symbolic() {
            return x
                .as_integer()
                .ok_or_else(|| MeasureError::Unrealized(x.generators()[0].to_string()));
        }
        x.evaluate(|g| self.realize_generator(g))
    }

    pub fn apply_series(&self, s: &TruncSeries) -> Result<TruncSeries, MeasureError> {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncSeries::from_coeffs(s.order(), coeffs))
    }

    pub fn evaluate_series(&self, s: &TruncSeries) -> Result<Vec<BigInt>, MeasureError> {
        s.coeffs().iter().map(|c| self.evaluate(c)).collect()
    }

    /// Realizes a closed form as a rational function with integer
    /// coefficients, replacing each symbolic component zeta function by its
    /// image: `P_m(t)/((1-t)(1-qt))` or `(1-t)^(2g-2)`.
    pub fn realize(&self, cf: &ClosedForm) -> Result<RationalFn, MeasureError> {
        let mut r = cf.rational.try_map(|c| self.apply(c))?;
        for (_, id) in &cf.symbolic {
            let factor = match self {
                MotivicMeasure::SymbolicIdentity => {
                    return Err(MeasureError::SymbolicFactor(id.clone()))
                }
                MotivicMeasure::PointCount { q, models } => {
                    let data = models
                        .get(id)
                        .ok_or_else(|| MeasureError::Unrealized(format!("Z[{id}]")))?;
                    let num = Poly::new(data.numerator.iter().cloned().map(RingElem::from));
                    let den = &Poly::from_ints(&[1, -1]) * &Poly::from_ints(&[1, -q]);
                    RationalFn::new(num, den).expect("unit constant term")
                }
                MotivicMeasure::EulerCharacteristic { genera } => {
                    let g = genera
                        .get(id)
                        .ok_or_else(|| MeasureError::Unrealized(format!("Z[{id}]")))?;
                    RationalFn::polynomial(Poly::from_ints(&[1, -1]))
                        .powi(2 * i64::from(*g) - 2)
                        .expect("unit constant term")
                }
            };
            r = &r * &factor;
        }
        Ok(r)
    }
}

/// Measure selection as written in a CLI config file:
/// `{"measure":"point-count","q":3,"numerators":{"m":[1,-2,5]}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub measure: MeasureKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub numerators: BTreeMap<String, Vec<i64>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureKind {
    #[default]
    Symbolic,
    Euler,
    PointCount,
}

impl MeasureSpec {
    /// Builds the measure for the models of `g`.
    ///
    /// Elliptic and Weil models bring their own numerators; symbolic models
    /// take theirs from `numerators`. A symbolic model with no numerator is
    /// left out, so applying the measure to its generators fails by name.
    pub fn build(&self, g: &DualGraph) -> Result<MotivicMeasure, MeasureError> {
        match self.measure {
            MeasureKind::Symbolic => Ok(MotivicMeasure::SymbolicIdentity),
            MeasureKind::Euler => Ok(MotivicMeasure::euler(
                g.vertices()
                    .iter()
                    .filter(|v| v.model.is_symbolic())
                    .map(|v| (v.model_id.clone(), v.genus))
                    .collect(),
            )),
            MeasureKind::PointCount => {
                let q = self.q.ok_or(MeasureError::BadQ(0))?;
                let mut models = BTreeMap::new();
                for v in g.vertices().iter().filter(|v| v.model.is_symbolic()) {
                    let given = self.numerators.get(&v.model_id);
                    let own = match v.model {
                        CurveModel::Symbolic { .. } => None,
                        _ => v.model.weil_numerator(q),
                    };
                    let numerator = match (own, given) {
                        (Some(a), Some(b)) if &a != b => {
                            return Err(MeasureError::BadNumerator {
                                model: v.model_id.clone(),
                                reason: "conflicts with the numerator fixed by the graph".into(),
                            })
                        }
                        (Some(a), _) => a,
                        (None, Some(b)) => b.clone(),
                        (None, None) => continue,
                    };
                    models.insert(
                        v.model_id.clone(),
                        WeilData {
                            genus: v.genus,
                            numerator: numerator.into_iter().map(BigInt::from).collect(),
                        },
                    );
                }
                MotivicMeasure::point_count(q, models)
            }
        }
    }
}
