//! The scalar abstraction shared by the symbolic and numeric execution modes.
//!
//! Every construction downstream (representation matrices, pairings, dual
//! elements, generators, duality functions) is generic over [`Scalar`] and
//! receives the image of q as a value: `RationalFunction::q()` in symbolic
//! mode, a fixed rational q0 in numeric mode. Operations are pure; values are
//! immutable.

use std::fmt;

use super::rational::BigRational;
use super::ratfunc::RationalFunction;

pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(value: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Field division; panics on a zero divisor (callers pivot on nonzero).
    fn divide(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;

    fn recip(&self) -> Self {
        Self::one().divide(self)
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_int(value: i64) -> Self {
        RationalFunction::from_int(value)
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn is_one(&self) -> bool {
        self.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn divide(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("division by zero")
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(value.into())
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn divide(&self, rhs: &Self) -> Self {
        assert!(!num_traits::Zero::is_zero(rhs), "division by zero");
        self / rhs
    }
    fn negate(&self) -> Self {
        -self
    }
}

/// q^exp for any scalar image of q; negative exponents invert (q must be a
/// unit, which both execution modes guarantee).
pub fn q_power<S: Scalar>(q: &S, exp: i64) -> S {
    if exp == 0 {
        return S::one();
    }
    let base = if exp < 0 { q.recip() } else { q.clone() };
    let mut out = S::one();
    let mut acc = base;
    let mut e = exp.unsigned_abs();
    loop {
        if e & 1 == 1 {
            out = out.times(&acc);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        acc = acc.times(&acc);
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    #[test]
    fn q_power_symbolic_and_numeric_agree() {
        let q = RationalFunction::q();
        let q0 = parse_rational("3/2").unwrap();
        for e in [-7i64, -1, 0, 1, 2, 11] {
            let sym = q_power(&q, e);
            let num = q_power(&q0, e);
            assert_eq!(sym.evaluate_at(&q0).unwrap(), num, "exponent {e}");
        }
    }
}
