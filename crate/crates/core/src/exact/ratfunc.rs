//! The fraction field Q(q) in canonical form.
//!
//! Canonical shape: the denominator is an ordinary monic polynomial with
//! nonzero constant term (every power of q is pushed into the numerator), and
//! the numerator's polynomial part shares no factor with it. Structural
//! equality is then semantic equality.

use num_traits::One;
use std::fmt;

use super::laurent::LaurentPoly;
use super::rational::BigRational;
use super::ExactError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    /// Builds `num/den` in canonical form. Fails only when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            });
        }
        // Shift all q-powers of the denominator into the numerator.
        let den_shift = den.min_exp().unwrap();
        let mut num = num.shift(-den_shift);
        let mut den = den.shift(-den_shift);
        // Cancel common polynomial factors of the q-free parts.
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        // Monic denominator fixes the remaining scalar freedom.
        let lead = den.leading_coeff();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(value))
    }

    pub fn from_rational(value: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::monomial(0, value))
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q())
    }

    /// q^exp as an element of Q(q).
    pub fn q_pow(exp: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(exp, BigRational::one()))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is trivial, i.e. the value is a Laurent
    /// polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::new(num, self.den.mul(&rhs.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        Self::new(num, self.den.mul(&rhs.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero denominator")
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn checked_inv(&self) -> Result<Self, ExactError> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            return self
                .checked_inv()
                .expect("negative power of zero")
                .pow(-exp);
        }
        let mut out = Self::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at a rational point.
    ///
    /// Canonicalization happens before substitution, so removable
    /// singularities do not raise: (q^2-1)/(q-1) at q0 = 1 evaluates to 2.
    pub fn evaluate_at(&self, q0: &BigRational) -> Result<BigRational, ExactError> {
        let den = self.den.evaluate(q0)?;
        if den == BigRational::from_integer(0.into()) {
            return Err(ExactError::PoleAtPoint(super::format_rational(q0)));
        }
        Ok(self.num.evaluate(q0)? / den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn q() -> RationalFunction {
        RationalFunction::q()
    }

    fn r() -> RationalFunction {
        // r = q - 1/q
        q().sub(&RationalFunction::q_pow(-1))
    }

    #[test]
    fn canonical_form_clears_negative_exponents() {
        // 1/(q - 1/q) has canonical numerator q, denominator q^2 - 1
        let inv = RationalFunction::one().checked_div(&r()).unwrap();
        assert_eq!(inv.num(), &LaurentPoly::q());
        assert_eq!(
            inv.den(),
            &LaurentPoly::q().mul(&LaurentPoly::q()).sub(&LaurentPoly::one())
        );
    }

    #[test]
    fn gcd_reduction() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = LaurentPoly::q().mul(&LaurentPoly::q()).sub(&LaurentPoly::one());
        let den = LaurentPoly::q().sub(&LaurentPoly::one());
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f, q().add(&RationalFunction::one()));
        assert!(f.is_laurent());
    }

    #[test]
    fn multiplicative_inverse() {
        // a * a^-1 = 1 for a = (q^3 + 2)/(q - 5)
        let a = RationalFunction::new(
            LaurentPoly::q().pow(3).add(&LaurentPoly::from_int(2)),
            LaurentPoly::q().sub(&LaurentPoly::from_int(5)),
        )
        .unwrap();
        assert!(a.mul(&a.checked_inv().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_reported() {
        assert_eq!(
            q().checked_div(&RationalFunction::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn evaluation_with_and_without_poles() {
        let ten = parse_rational("10").unwrap();
        assert_eq!(r().evaluate_at(&ten).unwrap(), parse_rational("99/10").unwrap());
        // canonicalization removes the spurious pole of (q^2-1)/(q-1) at 1
        let f = RationalFunction::new(
            LaurentPoly::q().pow(2).sub(&LaurentPoly::one()),
            LaurentPoly::q().sub(&LaurentPoly::one()),
        )
        .unwrap();
        assert_eq!(f.evaluate_at(&parse_rational("1").unwrap()).unwrap(), parse_rational("2").unwrap());
        // a genuine pole still raises
        let g = RationalFunction::one().checked_div(&q().sub(&RationalFunction::one())).unwrap();
        assert!(matches!(
            g.evaluate_at(&parse_rational("1").unwrap()),
            Err(ExactError::PoleAtPoint(_))
        ));
    }

    #[test]
    fn constants_evaluate_to_themselves() {
        let seven = RationalFunction::from_int(7);
        for point in ["2", "-3/5", "22/7"] {
            let q0 = parse_rational(point).unwrap();
            assert_eq!(seven.evaluate_at(&q0).unwrap(), parse_rational("7").unwrap());
        }
    }
}
