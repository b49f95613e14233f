//! Polynomials and unreduced rational functions in `t` over [`RingElem`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::{RingElem, SeriesError, TruncSeries};

/// A polynomial in `t`; coefficient `i` multiplies `t^i`. No trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<RingElem>);

impl Poly {
    pub fn new(coeffs: impl IntoIterator<Item = RingElem>) -> Self {
        let mut c: Vec<RingElem> = coeffs.into_iter().collect();
        while c.last().is_some_and(RingElem::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| RingElem::constant(c)))
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![RingElem::one()])
    }

    /// `1 - a t`.
    pub fn one_minus(a: RingElem) -> Self {
        Poly::new([RingElem::one(), -a])
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> RingElem {
        self.0.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
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

    pub fn to_series(&self, order: usize) -> TruncSeries {
        TruncSeries::from_coeffs(order, self.0.iter().cloned())
    }

    pub fn map(&self, f: impl FnMut(&RingElem) -> RingElem) -> Poly {
        Poly::new(self.0.iter().map(f))
    }

    fn try_map<E>(&self, f: impl FnMut(&RingElem) -> Result<RingElem, E>) -> Result<Poly, E> {
        Ok(Poly::new(
            self.0.iter().map(f).collect::<Result<Vec<_>, E>>()?,
        ))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map(|c| -c)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![RingElem::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tpow = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let neg = c.to_string().starts_with('-');
            let abs = if neg { -c } else { c.clone() };
            let body = match (i, abs.is_one(), abs.num_terms() > 1) {
                (0, _, true) => format!("({abs})"),
                (0, _, false) => abs.to_string(),
                (_, true, _) => tpow,
                (_, false, true) => format!("({abs})*{tpow}"),
                (_, false, false) => format!("{abs}*{tpow}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `numerator / denominator` with no reduction to lowest terms.
///
/// The denominator's constant term is always `±1`, so every value has a power
/// series expansion. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFn {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self, SeriesError> {
        let c0 = denominator.coeff(0);
        match c0.as_integer() {
            Some(c) if c.abs().is_one() => Ok(RationalFn {
                numerator,
                denominator,
            }),
            _ => Err(SeriesError::NotInvertible(c0.to_string())),
        }
    }

    pub fn polynomial(p: Poly) -> Self {
        RationalFn {
            numerator: p,
            denominator: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFn::polynomial(Poly::one())
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn recip_poly(p: Poly) -> Result<Self, SeriesError> {
        RationalFn::new(Poly::one(), p)
    }

    pub fn pow(&self, e: u32) -> RationalFn {
        RationalFn {
            numerator: self.numerator.pow(e),
            denominator: self.denominator.pow(e),
        }
    }

    /// Integer power. A negative exponent needs a numerator with unit
    /// constant term.
    pub fn powi(&self, k: i64) -> Result<RationalFn, SeriesError> {
        let e = u32::try_from(k.unsigned_abs()).expect("exponent fits in u32");
        if k >= 0 {
            Ok(self.pow(e))
        } else {
            Ok(RationalFn::new(self.denominator.clone(), self.numerator.clone())?.pow(e))
        }
    }

    /// Series expansion up to and including `t^order`.
    pub fn expand(&self, order: usize) -> TruncSeries {
        let inv = self
            .denominator
            .to_series(order)
            .inverse()
            .expect("denominator has unit constant term");
        &inv * &self.numerator.to_series(order)
    }

    /// Applies a coefficient map to numerator and denominator.
    pub fn try_map<E>(
        &self,
        mut f: impl FnMut(&RingElem) -> Result<RingElem, E>,
    ) -> Result<RationalFn, E> {
        Ok(RationalFn {
            numerator: self.numerator.try_map(&mut f)?,
            denominator: self.denominator.try_map(&mut f)?,
        })
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn {
            numerator: &self.numerator * &rhs.numerator,
            denominator: &self.denominator * &rhs.denominator,
        }
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Eq for RationalFn {}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == Poly::one() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> RingElem {
        RingElem::lefschetz()
    }

    fn parse(s: &str) -> RingElem {
        s.parse().unwrap()
    }

    #[test]
    fn torus_expansion() {
        let r = RationalFn::new(Poly::from_ints(&[1, -1]), Poly::one_minus(l())).unwrap();
        let s = r.expand(4);
        let expect = ["1", "L - 1", "L^2 - L", "L^3 - L^2", "L^4 - L^3"];
        for (d, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(d), &parse(e), "t^{d}");
        }
    }

    #[test]
    fn node_factor_expansion() {
        let den = Poly::new([RingElem::one(), -(l() + RingElem::one()), RingElem::one()]);
        let r = RationalFn::new(Poly::one_minus(l()), den).unwrap();
        let s = r.expand(3);
        let expect = ["1", "1", "L", "L^2 + L - 1"];
        for (d, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(d), &parse(e), "t^{d}");
        }
    }

    #[test]
    fn unit_over_unit() {
        assert_eq!(RationalFn::one().expand(5), TruncSeries::one(5));
    }

    #[test]
    fn cross_multiplied_equality() {
        // (1 - t^2) / (1 - t) == 1 + t
        let a = RationalFn::new(Poly::from_ints(&[1, 0, -1]), Poly::from_ints(&[1, -1])).unwrap();
        let b = RationalFn::polynomial(Poly::from_ints(&[1, 1]));
        assert_eq!(a, b);
        assert_ne!(a, RationalFn::one());
    }

    #[test]
    fn denominator_must_have_unit_constant() {
        assert!(RationalFn::new(Poly::one(), Poly::from_ints(&[2, 1])).is_err());
        assert!(RationalFn::new(Poly::one(), Poly::new([l()])).is_err());
    }

    #[test]
    fn display() {
        let den = Poly::new([RingElem::one(), -(l() + RingElem::one()), RingElem::one()]);
        let r = RationalFn::new(Poly::one_minus(l()), den).unwrap();
        assert_eq!(r.to_string(), "(1 - L*t) / (1 - (L + 1)*t + t^2)");
        let p = Poly::new([
            RingElem::one(),
            RingElem::constant(-3),
            RingElem::constant(2) * l(),
        ]);
        assert_eq!(p.to_string(), "1 - 3*t + 2*L*t^2");
    }
}
