//! Arithmetic modulo a 61-bit prime, used as a fast probe field.
//!
//! Rank probing and solution guessing happen here; nothing modular ever
//! reaches an output. A nonzero value mod p certifies a nonzero exact value,
//! so accept-decisions backed by this field are sound; candidate solutions
//! lifted from it are only adopted after exact symbolic verification.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

use super::laurent::LaurentPoly;
use super::rational::BigRational;
use super::scalar::Scalar;

/// The Mersenne prime 2^61 - 1.
pub const PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn new(value: u64) -> Self {
        Fp(value % PRIME)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(PRIME - 2)
    }

    /// Reduction of an arbitrary-precision integer.
    pub fn from_bigint(value: &BigInt) -> Self {
        let modulus = BigInt::from(PRIME);
        let mut r = value % &modulus;
        if r.is_negative() {
            r += &modulus;
        }
        Fp(r.to_u64().expect("reduced below 2^61"))
    }

    /// Reduction of a rational; `None` when the denominator vanishes mod p.
    pub fn from_rational(value: &BigRational) -> Option<Self> {
        let den = Self::from_bigint(value.denom());
        if den.0 == 0 {
            return None;
        }
        Some(Self::from_bigint(value.numer()).times(&den.inv()))
    }

    /// Evaluation of a Laurent polynomial at a nonzero point of F_p.
    pub fn eval_laurent(poly: &LaurentPoly, point: Fp) -> Option<Fp> {
        let mut acc = Fp(0);
        for (exp, coeff) in poly.terms() {
            let c = Self::from_rational(coeff)?;
            let p = if exp >= 0 {
                point.pow(exp as u64)
            } else {
                if point.0 == 0 {
                    return None;
                }
                point.inv().pow((-exp) as u64)
            };
            acc = acc.plus(&c.times(&p));
        }
        Some(acc)
    }

    /// Lifts a residue to the unique rational a/b with |a|, b <= sqrt(p/2),
    /// if one exists (standard half-extended euclidean reconstruction).
    pub fn to_rational(&self) -> Option<BigRational> {
        let bound = 1_518_500_249u64; // floor(sqrt(p))
        let (mut r0, mut r1) = (PRIME as i128, self.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 && (r1 as u64) >= bound / 2 {
            let quo = r0 / r1;
            (r0, r1) = (r1, r0 - quo * r1);
            (t0, t1) = (t1, t0 - quo * t1);
        }
        if t1 == 0 || t1.unsigned_abs() as u64 >= bound / 2 {
            return None;
        }
        let num = BigInt::from(r1);
        let den = BigInt::from(t1);
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#p", self.0)
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_int(value: i64) -> Self {
        if value >= 0 {
            Fp::new(value as u64)
        } else {
            Fp::new((-value) as u64).negate()
        }
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn plus(&self, rhs: &Self) -> Self {
        let sum = self.0 + rhs.0;
        Fp(if sum >= PRIME { sum - PRIME } else { sum })
    }
    fn minus(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + PRIME - rhs.0
        })
    }
    fn times(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % PRIME as u128) as u64)
    }
    fn divide(&self, rhs: &Self) -> Self {
        self.times(&rhs.inv())
    }
    fn negate(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { PRIME - self.0 })
    }
}

/// Newton interpolation over F_p: recovers the coefficients (lowest first) of
/// the degree < points.len() polynomial through (points[i], values[i]).
pub fn interpolate(points: &[Fp], values: &[Fp]) -> Vec<Fp> {
    assert_eq!(points.len(), values.len());
    let n = points.len();
    // divided differences
    let mut dd: Vec<Fp> = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].minus(&dd[i - 1]);
            let den = points[i].minus(&points[i - level]);
            dd[i] = num.divide(&den);
        }
    }
    // expand the Newton form into monomial coefficients
    let mut coeffs = vec![Fp::zero(); n];
    let mut basis = vec![Fp::zero(); n];
    basis[0] = Fp::one();
    let mut basis_len = 1;
    for (i, d) in dd.iter().enumerate() {
        for (c, b) in coeffs.iter_mut().zip(basis.iter().take(basis_len)) {
            *c = c.plus(&d.times(b));
        }
        if i + 1 < n {
            // basis *= (x - points[i])
            let mut next = vec![Fp::zero(); basis_len + 1];
            for (j, b) in basis.iter().take(basis_len).enumerate() {
                next[j + 1] = next[j + 1].plus(b);
                next[j] = next[j].minus(&points[i].times(b));
            }
            basis_len += 1;
            basis[..basis_len].copy_from_slice(&next);
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    #[test]
    fn field_axioms_spot_checks() {
        let a = Fp::new(123456789);
        let b = Fp::new(PRIME - 5);
        assert_eq!(a.times(&a.inv()), Fp::one());
        assert_eq!(a.plus(&a.negate()), Fp::zero());
        assert_eq!(a.times(&b).divide(&b), a);
    }

    #[test]
    fn rational_round_trip() {
        for text in ["3/7", "-22/7", "0", "100", "-1/1000"] {
            let r = parse_rational(text).unwrap();
            let lifted = Fp::from_rational(&r).unwrap().to_rational().unwrap();
            assert_eq!(lifted, r, "{text}");
        }
    }

    #[test]
    fn laurent_evaluation_matches_exact() {
        let p = LaurentPoly::from_terms(vec![
            (-2, parse_rational("1/3").unwrap()),
            (0, parse_rational("-2").unwrap()),
            (5, parse_rational("7/2").unwrap()),
        ]);
        let q0 = parse_rational("9/4").unwrap();
        let exact = p.evaluate(&q0).unwrap();
        let modular = Fp::eval_laurent(&p, Fp::from_rational(&q0).unwrap()).unwrap();
        assert_eq!(modular, Fp::from_rational(&exact).unwrap());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        // x^3 - 4x + 2 from four points
        let f = |x: Fp| x.pow(3).minus(&Fp::new(4).times(&x)).plus(&Fp::new(2));
        let points: Vec<Fp> = (2..6).map(Fp::new).collect();
        let values: Vec<Fp> = points.iter().map(|&x| f(x)).collect();
        let coeffs = interpolate(&points, &values);
        assert_eq!(
            coeffs,
            vec![Fp::new(2), Fp::new(4).negate(), Fp::zero(), Fp::one()]
        );
    }
}
