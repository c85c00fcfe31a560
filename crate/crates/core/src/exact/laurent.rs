//! Laurent polynomials in q with arbitrary-precision rational coefficients.
//!
//! Coefficients are stored sparsely, keyed by exponent; zero coefficients are
//! never stored, so the empty map is the zero polynomial and structural
//! equality is semantic equality.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::rational::{is_negative, rational_pow, BigRational};
use super::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    pub fn from_int(value: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(value.into()))
    }

    /// Builds from (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (exp, coeff) in terms {
            out.add_term(exp, coeff);
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Exponent-ascending view of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.max_exp().map(|e| self.coeff(e)).unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (exp, coeff) in rhs.terms() {
            out.add_term(exp, coeff.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (exp, coeff) in rhs.terms() {
            out.add_term(exp, -coeff.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    /// Multiplies by q^shift.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Exact division; `None` when the divisor does not divide exactly.
    ///
    /// Division is euclidean on the underlying ordinary polynomials; powers of
    /// q are units, so both arguments are shifted to constant-term form first.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let rem_shift = self.min_exp().unwrap() - divisor.min_exp().unwrap();
        let mut rem = self.shift(-self.min_exp().unwrap());
        let div = divisor.shift(-divisor.min_exp().unwrap());
        let div_deg = div.max_exp().unwrap();
        let div_lead = div.leading_coeff();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let rem_deg = rem.max_exp().unwrap();
            if rem_deg < div_deg || rem.min_exp().unwrap() < 0 {
                return None;
            }
            let factor = Self::monomial(rem_deg - div_deg, rem.leading_coeff() / &div_lead);
            rem = rem.sub(&factor.mul(&div));
            quot = quot.add(&factor);
        }
        Some(quot.shift(rem_shift))
    }

    /// Monic gcd of the ordinary-polynomial parts (q-power units stripped).
    ///
    /// The result is a monic polynomial with nonzero constant term; gcd with
    /// zero returns the other argument's polynomial part made monic.
    pub fn gcd(&self, other: &Self) -> Self {
        let normalize = |p: &Self| -> Self {
            if p.is_zero() {
                Self::zero()
            } else {
                let shifted = p.shift(-p.min_exp().unwrap());
                let lead = shifted.leading_coeff();
                shifted.scale(&lead.recip())
            }
        };
        let mut a = normalize(self);
        let mut b = normalize(other);
        while !b.is_zero() {
            let r = a.rem_poly(&b);
            a = b;
            b = normalize(&r);
        }
        normalize(&a)
    }

    /// Remainder of euclidean division of ordinary polynomials (no negative
    /// exponents in either argument).
    fn rem_poly(&self, divisor: &Self) -> Self {
        let div_deg = divisor.max_exp().expect("nonzero divisor");
        let div_lead = divisor.leading_coeff();
        let mut rem = self.clone();
        while let Some(rem_deg) = rem.max_exp() {
            if rem_deg < div_deg {
                break;
            }
            let factor = Self::monomial(rem_deg - div_deg, rem.leading_coeff() / &div_lead);
            rem = rem.sub(&factor.mul(divisor));
        }
        rem
    }

    /// Exact evaluation at a rational point; q0 = 0 is a pole whenever the
    /// polynomial has negative exponents.
    pub fn evaluate(&self, q0: &BigRational) -> Result<BigRational, ExactError> {
        let min = match self.min_exp() {
            None => return Ok(BigRational::zero()),
            Some(m) => m,
        };
        if q0.is_zero() && min < 0 {
            return Err(ExactError::PoleAtPoint("0".to_owned()));
        }
        // Horner on the shifted ordinary polynomial, then restore q0^min.
        let shift = min.min(0);
        let mut acc = BigRational::zero();
        let mut last_exp: Option<i64> = None;
        for (exp, coeff) in self.coeffs.iter().rev() {
            let exp = exp - shift;
            if let Some(prev) = last_exp {
                acc *= rational_pow(q0, prev - exp);
            }
            acc += coeff;
            last_exp = Some(exp);
        }
        if let Some(prev) = last_exp {
            acc *= rational_pow(q0, prev);
        }
        if shift != 0 {
            acc *= rational_pow(q0, shift);
        }
        Ok(acc)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest power first, matching how the results read on paper
        for (exp, coeff) in self.coeffs.iter().rev() {
            let neg = is_negative(coeff);
            let abs = if neg { -coeff.clone() } else { coeff.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || *exp == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match exp {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, exp)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    fn q_pow(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, BigRational::one())
    }

    #[test]
    fn difference_of_squares_in_q() {
        // (q - q^-1)(q + q^-1) = q^2 - q^-2
        let a = q().sub(&q_pow(-1));
        let b = q().add(&q_pow(-1));
        assert_eq!(a.mul(&b), q_pow(2).sub(&q_pow(-2)));
    }

    #[test]
    fn additive_identity() {
        let p = q_pow(3).add(&LaurentPoly::from_int(5));
        assert_eq!(p.add(&LaurentPoly::zero()), p);
    }

    #[test]
    fn square_of_r() {
        // (q - q^-1)^2 = q^2 - 2 + q^-2
        let r = q().sub(&q_pow(-1));
        let expected = LaurentPoly::from_terms(vec![
            (2, BigRational::one()),
            (0, parse_rational("-2").unwrap()),
            (-2, BigRational::one()),
        ]);
        assert_eq!(r.mul(&r), expected);
    }

    #[test]
    fn exact_division_and_failure() {
        let r = q().sub(&q_pow(-1));
        let p = r.mul(&r).mul(&q_pow(5));
        assert_eq!(p.div_exact(&r).unwrap(), r.mul(&q_pow(5)));
        assert!(q().add(&LaurentPoly::one()).div_exact(&r).is_none());
    }

    #[test]
    fn gcd_strips_units_and_normalizes() {
        // gcd(q^3 - q, q^2 - 1) over the polynomial parts is q^2 - 1
        let a = q_pow(3).sub(&q());
        let b = q_pow(2).sub(&LaurentPoly::one());
        assert_eq!(a.gcd(&b), b);
        // units of q do not matter
        assert_eq!(a.shift(-4).gcd(&b), b);
    }

    #[test]
    fn evaluation_matches_substitution() {
        let r = q().sub(&q_pow(-1));
        let ten = parse_rational("10").unwrap();
        assert_eq!(r.evaluate(&ten).unwrap(), parse_rational("99/10").unwrap());
        assert!(r.evaluate(&BigRational::zero()).is_err());
        assert_eq!(
            LaurentPoly::from_int(7).evaluate(&parse_rational("-3/4").unwrap()).unwrap(),
            parse_rational("7").unwrap()
        );
    }
}
