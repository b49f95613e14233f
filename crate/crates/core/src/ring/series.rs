//! Power series in `t` over [`RingElem`], truncated at a fixed order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};
use thiserror::Error;

use super::RingElem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is not invertible: constant coefficient {0} is not a unit")]
    NotInvertible(String),
}

/// `a_0 + a_1 t + ... + a_N t^N + O(t^{N+1})`.
///
/// Always holds exactly `order + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<RingElem>,
}

impl TruncSeries {
    /// Builds a series of the given order from leading coefficients, padding
    /// with zeros or dropping the excess.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = RingElem>) -> Self {
        let mut c: Vec<RingElem> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, RingElem::zero());
        TruncSeries { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::from_coeffs(order, [])
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::from_coeffs(order, [RingElem::one()])
    }

    /// `1 - a t`.
    pub fn one_minus(order: usize, a: RingElem) -> Self {
        TruncSeries::from_coeffs(order, [RingElem::one(), -a])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^d`. Panics if `d` exceeds the order.
    pub fn coeff(&self, d: usize) -> &RingElem {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RingElem> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        assert!(order <= self.order(), "cannot raise truncation order");
        TruncSeries::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn map(&self, f: impl FnMut(&RingElem) -> RingElem) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_order(&self, other: &TruncSeries) {
        assert_eq!(
            self.order(),
            other.order(),
            "truncated series have different orders"
        );
    }

    /// Multiplicative inverse. The constant coefficient must be `1` or `-1`.
    pub fn inverse(&self) -> Result<TruncSeries, SeriesError> {
        let c0 = match self.coeffs[0].as_integer() {
            Some(c) if c.abs().is_one() => c,
            _ => return Err(SeriesError::NotInvertible(self.coeffs[0].to_string())),
        };
        // c0 is its own inverse.
        let mut inv: Vec<RingElem> = Vec::with_capacity(self.coeffs.len());
        inv.push(RingElem::constant(c0.clone()));
        for d in 1..self.coeffs.len() {
            let mut acc = RingElem::zero();
            for i in 1..=d {
                if !self.coeffs[i].is_zero() && !inv[d - i].is_zero() {
                    acc += &(&self.coeffs[i] * &inv[d - i]);
                }
            }
            inv.push(acc.scale(&-&c0));
        }
        Ok(TruncSeries { coeffs: inv })
    }

    pub fn pow(&self, k: u32) -> TruncSeries {
        let mut base = self.clone();
        let mut acc = TruncSeries::one(self.order());
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents go through [`TruncSeries::inverse`].
    pub fn powi(&self, k: i64) -> Result<TruncSeries, SeriesError> {
        let e = u32::try_from(k.unsigned_abs()).expect("exponent fits in u32");
        if k >= 0 {
            Ok(self.pow(e))
        } else {
            Ok(self.inverse()?.pow(e))
        }
    }

    pub fn has_unit_constant(&self) -> bool {
        self.coeffs[0].is_one()
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.check_order(rhs);
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.check_order(rhs);
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.map(|a| -a)
    }
}

/// Cauchy product. Panics if the orders differ.
impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.check_order(rhs);
        let n = self.coeffs.len();
        let mut out = vec![RingElem::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        TruncSeries { coeffs: out }
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        &self * &rhs
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let tpow = if d == 1 {
                "t".to_string()
            } else {
                format!("t^{d}")
            };
            if d == 0 {
                write!(f, "{c}")?;
            } else if c.num_terms() > 1 {
                write!(f, "({c})*{tpow}")?;
            } else {
                write!(f, "{c}*{tpow}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}
