//! Exact arithmetic in the coefficient ring `Z[L, c[m,d] ...]`.
//!
//! `L` is the Lefschetz class and `c[m,d]` is the class of the `d`-th
//! symmetric power of the curve model `m`. Elements are sparse polynomials
//! with arbitrary-precision integer coefficients, kept in a canonical form:
//! no zero coefficients, no zero exponents, monomials in a fixed total order.
//!
//! Power series in `t` over this ring live in [`series`], rational functions
//! in `t` in [`rational`].

pub mod rational;
pub mod series;
pub(crate) mod text;

pub use rational::{Poly, RationalFn};
pub use series::{SeriesError, TruncSeries};
pub use text::ParseRingError;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A ring generator.
///
/// The derived order puts `Lefschetz` first, then symmetric-power classes by
/// `(model, degree)`. A `SymPow` degree is always at least one; degree zero
/// is the unit and never appears as a generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Lefschetz,
    SymPow { model: String, degree: u32 },
}

impl Generator {
    /// `c[model,degree]`, or `None` for degree zero.
    pub fn sym_pow(model: impl Into<String>, degree: u32) -> Option<Generator> {
        (degree > 0).then(|| Generator::SymPow {
            model: model.into(),
            degree,
        })
    }
}

/// A product of generators with positive exponents, sorted by generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_generator(g: Generator, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Factors in ascending generator order.
    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Lexicographic order on exponent vectors, reading generators from the
/// largest one down. `c[m,2] > c[m,1]*L > L^2 > L > 1`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ga, ea)), Some((gb, eb))) => match ga.cmp(gb) {
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    o => return o,
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the coefficient ring in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElem {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        RingElem::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RingElem { terms }
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        RingElem::lefschetz_pow(1)
    }

    pub fn lefschetz_pow(e: u32) -> Self {
        RingElem::term(1, Monomial::from_generator(Generator::Lefschetz, e))
    }

    /// `c[model,degree]`, with `c[model,0] = 1`.
    pub fn sym_pow(model: &str, degree: u32) -> Self {
        match Generator::sym_pow(model, degree) {
            Some(g) => RingElem::term(1, Monomial::from_generator(g, 1)),
            None => RingElem::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().is_some_and(|c| c.is_one())
    }

    /// The value if this element is a constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Every generator occurring in this element, ascending, deduplicated.
    pub fn generators(&self) -> Vec<&Generator> {
        let mut gens: Vec<&Generator> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(g, _)| g))
            .collect();
        gens.sort();
        gens.dedup();
        gens
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> RingElem {
        let mut base = self.clone();
        let mut acc = RingElem::one();
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

    pub fn scale(&self, c: &BigInt) -> RingElem {
        if c.is_zero() {
            return RingElem::zero();
        }
        RingElem {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Evaluates the element under a substitution of every generator by an
    /// integer. The closure sees each distinct generator once.
    pub fn evaluate<E>(
        &self,
        mut value: impl FnMut(&Generator) -> Result<BigInt, E>,
    ) -> Result<BigInt, E> {
        let mut cache: BTreeMap<&Generator, BigInt> = BTreeMap::new();
        for g in self.generators() {
            cache.insert(g, value(g)?);
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (g, e) in &m.0 {
                t *= num_traits::pow(cache[g].clone(), *e as usize);
            }
            total += t;
        }
        Ok(total)
    }
}

impl From<i64> for RingElem {
    fn from(c: i64) -> Self {
        RingElem::constant(c)
    }
}

impl From<BigInt> for RingElem {
    fn from(c: BigInt) -> Self {
        RingElem::constant(c)
    }
}

impl From<Generator> for RingElem {
    fn from(g: Generator) -> Self {
        RingElem::term(1, Monomial::from_generator(g, 1))
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, rhs: &RingElem) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::iter::Sum for RingElem {
    fn sum<I: Iterator<Item = RingElem>>(iter: I) -> RingElem {
        iter.fold(RingElem::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for RingElem {
    fn product<I: Iterator<Item = RingElem>>(iter: I) -> RingElem {
        iter.fold(RingElem::one(), |acc, x| &acc * &x)
    }
}
