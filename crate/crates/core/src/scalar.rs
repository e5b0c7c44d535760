//! Exact scalar types.
//!
//! Every computation in this crate is carried out over an exact field of
//! fractions. [`Scalar`] abstracts over the backing integer so the same code
//! runs on `Ratio<BigInt>` (the default, never overflows) or on fixed-width
//! `Ratio<i64>` / `Ratio<i128>` when the graphs are known to be small.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Integer types usable as the numerator/denominator of a [`Scalar`].
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + Hash + Send + Sync + From<i64> + 'static
{
    /// Narrowing conversion; `None` when the value does not fit.
    fn from_bigint(n: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i64 {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        n.to_i64()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for i128 {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        n.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn from_bigint(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// An exact ordered field element.
///
/// Conversions from big integers panic when the target is a fixed-width
/// rational and the value does not fit.
pub trait Scalar:
    Num + Signed + Clone + Debug + Display + Ord + Hash + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    /// `numer / denom`; `denom` must be nonzero.
    fn from_fraction(numer: &BigInt, denom: &BigInt) -> Self;

    fn floor(&self) -> Self;

    fn is_integer(&self) -> bool;

    fn to_big_rational(&self) -> BigRational;

    /// Fractional part in `[0, 1)`.
    fn fract_part(&self) -> Self {
        self.clone() - self.floor()
    }
}

impl<I: ExactInt> Scalar for Ratio<I> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(I::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(narrow(n))
    }

    fn from_fraction(numer: &BigInt, denom: &BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        // reduce before narrowing so representable values always fit
        let r = BigRational::new(numer.clone(), denom.clone());
        Ratio::new(narrow(r.numer()), narrow(r.denom()))
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(self.numer().to_bigint(), self.denom().to_bigint())
    }
}

fn narrow<I: ExactInt>(n: &BigInt) -> I {
    I::from_bigint(n).unwrap_or_else(|| panic!("integer {n} overflows the scalar backend"))
}

/// Parses `p`, `-p`, or `p/q` into a scalar.
pub fn parse_scalar<T: Scalar>(s: &str) -> Option<T> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(T::from_fraction(&n, &d))
}

/// Integer value of an integral scalar.
pub fn to_integer<T: Scalar>(x: &T) -> Option<BigInt> {
    let r = x.to_big_rational();
    r.is_integer().then(|| r.to_integer())
}
