//! q-special functions and the self-duality check: q-Pochhammer symbols,
//! terminating 2-phi-1 sums, q-Krawtchouk polynomials, the duality function
//! D(eta, xi), and exact verification of L D = D L^T.

use thiserror::Error;

use crate::asep::{multi_site_generator, AsepError, AsepParams, Configuration, GeneratorMatrix};
use crate::exact::{q_power, BigRational, Mat, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DualityError {
    #[error("2phi1 series does not terminate within {max_k} terms ({reason})")]
    NonTerminating { max_k: usize, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("duality violated at (q, a1, a2) = ({q}, {alpha1}, {alpha2}): residual {residual} at entry ({row}, {col})")]
    DualityViolated {
        q: String,
        alpha1: String,
        alpha2: String,
        residual: String,
        row: usize,
        col: usize,
    },
    #[error(transparent)]
    Asep(#[from] AsepError),
}

/// (a; q)_k = prod_{i=0}^{k-1} (1 - a q^i); the empty product is 1.
pub fn q_pochhammer<S: Scalar>(a: &S, k: usize, q: &S) -> S {
    let mut out = S::one();
    let mut aq = a.clone();
    for _ in 0..k {
        out = out.times(&S::one().minus(&aq));
        aq = aq.times(q);
    }
    out
}

/// Terminating basic hypergeometric sum 2phi1(a, b; c; q, z).
///
/// The series must terminate through a zero of (a;q)_k or (b;q)_k strictly
/// before any zero of (c;q)_k or (q;q)_k; otherwise it is an error.
pub fn q_hypergeometric_2phi1<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    q: &S,
    z: &S,
    max_k: usize,
) -> Result<S, DualityError> {
    let mut sum = S::one();
    let mut term = S::one();
    let mut aq = a.clone();
    let mut bq = b.clone();
    let mut cq = c.clone();
    let mut qq = q.clone();
    for k in 0..max_k {
        let num = S::one().minus(&aq).times(&S::one().minus(&bq));
        if num.is_zero() {
            // every later term carries this factor
            return Ok(sum);
        }
        let den = S::one().minus(&cq).times(&S::one().minus(&qq));
        if den.is_zero() {
            return Err(DualityError::NonTerminating {
                max_k,
                reason: format!("denominator factor vanishes at k = {k} before termination"),
            });
        }
        term = term.times(&num).times(z).divide(&den);
        sum = sum.plus(&term);
        aq = aq.times(q);
        bq = bq.times(q);
        cq = cq.times(q);
        qq = qq.times(q);
    }
    Err(DualityError::NonTerminating {
        max_k,
        reason: "no numerator zero reached".into(),
    })
}

/// q-Krawtchouk polynomial K_degree(x; p, c; q) =
/// 2phi1(x, q^{-degree}; q^{-c}; q, p q^{degree+1}), with x passed as the
/// already-exponentiated value q^{-x}.
pub fn q_krawtchouk<S: Scalar>(
    x_val: &S,
    degree: usize,
    p: &S,
    c: i64,
    q: &S,
) -> Result<S, DualityError> {
    let b = q_power(q, -(degree as i64));
    let c_val = q_power(q, -c);
    let z = p.times(&q_power(q, degree as i64 + 1));
    // q^{-degree} kills the series at k = degree + 1
    q_hypergeometric_2phi1(x_val, &b, &c_val, q, &z, degree + 2)
}

/// Parameters of the duality function: the process parameters at delta = 0
/// plus the two reversible-measure parameters.
#[derive(Debug, Clone)]
pub struct DualityParams<S> {
    pub q: S,
    pub n: usize,
    pub alpha: [S; 2],
    pub sites: usize,
}

impl<S: Scalar> DualityParams<S> {
    pub fn new(q: S, n: usize, alpha: [S; 2], sites: usize) -> Result<Self, DualityError> {
        if alpha.iter().any(|a| a.is_zero()) {
            return Err(DualityError::InvalidParams("alpha parameters must be nonzero".into()));
        }
        if q.is_zero() || q.is_one() {
            return Err(DualityError::InvalidParams("q must differ from 0 and 1".into()));
        }
        if n < 2 {
            return Err(DualityError::InvalidParams("n must be at least 2".into()));
        }
        if sites < 1 {
            return Err(DualityError::InvalidParams("need at least one site".into()));
        }
        Ok(Self { q, n, alpha, sites })
    }
}

/// Running particle counts strictly left and strictly right of each site,
/// per species.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    /// left[i][x] = number of species-(i+1) particles strictly left of site x
    pub left: [Vec<usize>; 2],
    /// right[i][x] = number strictly right of site x
    pub right: [Vec<usize>; 2],
    pub totals: [usize; 2],
}

impl HeightProfile {
    pub fn new(config: &Configuration) -> Self {
        let len = config.len();
        let mut left = [vec![0; len], vec![0; len]];
        let mut right = [vec![0; len], vec![0; len]];
        let mut totals = [0usize; 2];
        for (i, species) in [1u8, 2u8].into_iter().enumerate() {
            let occ = config.occupation(species);
            totals[i] = occ.iter().map(|&b| b as usize).sum();
            let mut acc = 0usize;
            for x in 0..len {
                left[i][x] = acc;
                acc += occ[x] as usize;
            }
            let mut acc = 0usize;
            for x in (0..len).rev() {
                right[i][x] = acc;
                acc += occ[x] as usize;
            }
        }
        Self { left, right, totals }
    }
}

/// The duality function D(eta, xi): eta drives the polynomial degrees, xi the
/// q-power arguments, and the site-dependent parameter mixes the heights of
/// both configurations.
pub fn duality_value<S: Scalar>(
    eta: &Configuration,
    xi: &Configuration,
    params: &DualityParams<S>,
) -> Result<S, DualityError> {
    if eta.len() != xi.len() {
        return Err(DualityError::InvalidParams(
            "configurations must have equal length".into(),
        ));
    }
    let q = &params.q;
    let q2 = q.times(q);
    let eta_heights = HeightProfile::new(eta);
    let xi_heights = HeightProfile::new(xi);
    let mut out = S::one();
    for (i, species) in [1u8, 2u8].into_iter().enumerate() {
        let eta_occ = eta.occupation(species);
        let xi_occ = xi.occupation(species);
        for x in 0..eta.len() {
            let degree = eta_occ[x] as usize;
            if degree == 0 {
                continue;
            }
            // p_i^x = alpha_i^{-1} q^{-2(N^-_{x-1}(xi_i) - N^+_{x+1}(eta_i)) + 2x - 2}
            // with sites numbered from 1
            let exp = -2 * (xi_heights.left[i][x] as i64 - eta_heights.right[i][x] as i64)
                + 2 * (x as i64 + 1)
                - 2;
            let p = params.alpha[i].recip().times(&q_power(q, exp));
            let x_val = q_power(&q2, -(xi_occ[x] as i64));
            let factor = q_krawtchouk(&x_val, degree, &p, 1, &q2)?;
            out = out.times(&factor);
        }
    }
    Ok(out)
}

/// The duality factors in symbolic form: (species, j) for each factor
/// 1 - q^j / alpha_species, sorted. A factor arises exactly where both
/// configurations carry the species, with j read off the heights.
pub fn duality_factor_exponents(eta: &Configuration, xi: &Configuration) -> Vec<(u8, i64)> {
    assert_eq!(eta.len(), xi.len());
    let eta_heights = HeightProfile::new(eta);
    let xi_heights = HeightProfile::new(xi);
    let mut out = Vec::new();
    for (i, species) in [1u8, 2u8].into_iter().enumerate() {
        let eta_occ = eta.occupation(species);
        let xi_occ = xi.occupation(species);
        for x in 0..eta.len() {
            if eta_occ[x] == 1 && xi_occ[x] == 1 {
                let j = 2 * (x as i64 + 1)
                    - 2 * xi_heights.left[i][x] as i64
                    + 2 * eta_heights.right[i][x] as i64;
                out.push((species, j));
            }
        }
    }
    out.sort_unstable();
    out
}

/// The duality matrix over an explicit state basis (use the basis of the
/// generator it will be compared against).
pub fn duality_matrix<S: Scalar>(
    params: &DualityParams<S>,
    basis: &[Configuration],
) -> Result<Mat<S>, DualityError> {
    let dim = basis.len();
    let mut m = Mat::zeros(dim, dim);
    for (r, eta) in basis.iter().enumerate() {
        for (c, xi) in basis.iter().enumerate() {
            m.set(r, c, duality_value(eta, xi, params)?);
        }
    }
    Ok(m)
}

/// One sampled verification point and its residual (exact zero expected).
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub n: usize,
    pub sites: usize,
    pub seed: u64,
    pub points: Vec<(BigRational, BigRational, BigRational)>,
    pub max_residuals: Vec<BigRational>,
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// Deterministic sample triples (q, alpha1, alpha2), avoiding the degenerate
/// region: q > 0, q != 1, alpha_i nonzero and away from small powers of q.
pub fn sample_points(seed: u64, count: usize) -> Vec<(BigRational, BigRational, BigRational)> {
    let mut rng = SplitMix(seed);
    let mut out = Vec::with_capacity(count);
    let rational = |num: i64, den: i64| BigRational::new(num.into(), den.into());
    while out.len() < count {
        let q_num = 2 + (rng.next() % 12) as i64;
        let q_den = 1 + (rng.next() % 7) as i64;
        if q_num == q_den {
            continue;
        }
        let q = rational(q_num, q_den);
        let mut alphas = Vec::with_capacity(2);
        while alphas.len() < 2 {
            let sign = if rng.next() % 2 == 0 { 1 } else { -1 };
            let a_num = 1 + (rng.next() % 15) as i64;
            let a_den = 1 + (rng.next() % 6) as i64;
            let alpha = rational(sign * a_num, a_den);
            let near_power = (-4..=4).any(|j| alpha == crate::exact::q_power(&q, j));
            if !near_power {
                alphas.push(alpha);
            }
        }
        out.push((q, alphas[0].clone(), alphas[1].clone()));
    }
    out
}

/// Exact verification of L D = D L^T at deterministically sampled rational
/// points, for the process at delta = 0.
pub fn verify_duality(
    n: usize,
    sites: usize,
    num_points: usize,
    seed: u64,
) -> Result<DualityReport, DualityError> {
    let mut report = DualityReport {
        n,
        sites,
        seed,
        points: Vec::new(),
        max_residuals: Vec::new(),
    };
    for (q, a1, a2) in sample_points(seed, num_points) {
        let residual = duality_residual(q.clone(), n, [a1.clone(), a2.clone()], sites)?;
        match residual {
            None => {
                report.points.push((q, a1, a2));
                report.max_residuals.push(<BigRational as Scalar>::zero());
            }
            Some((row, col, value)) => {
                return Err(DualityError::DualityViolated {
                    q: q.to_string(),
                    alpha1: a1.to_string(),
                    alpha2: a2.to_string(),
                    residual: value.to_string(),
                    row,
                    col,
                });
            }
        }
    }
    Ok(report)
}

/// L D - D L^T for one exact parameter point; `None` means exactly zero.
pub fn duality_residual<S: Scalar>(
    q: S,
    n: usize,
    alpha: [S; 2],
    sites: usize,
) -> Result<Option<(usize, usize, S)>, DualityError> {
    let asep = AsepParams::new(q.clone(), n, 0)?;
    let gen = multi_site_generator(&asep, sites, crate::asep::DEFAULT_SITE_CAP)?;
    let params = DualityParams::new(q, n, alpha, sites)?;
    let d = duality_matrix(&params, gen.basis())?;
    Ok(generator_duality_residual(&gen, &d))
}

/// Largest nonzero entry of L D - D L^T, if any.
pub fn generator_duality_residual<S: Scalar>(
    gen: &GeneratorMatrix<S>,
    d: &Mat<S>,
) -> Option<(usize, usize, S)> {
    let dim = gen.dim();
    // L D
    let mut ld: Mat<S> = Mat::zeros(dim, dim);
    for (r, k, v) in gen.triplets() {
        for c in 0..dim {
            let dv = d.get(k, c);
            if dv.is_zero() {
                continue;
            }
            let cur = ld.get(r, c).plus(&v.times(dv));
            ld.set(r, c, cur);
        }
    }
    // D L^T: (D L^T)[r, c] = sum_k D[r, k] L[c, k]
    let mut dlt: Mat<S> = Mat::zeros(dim, dim);
    for (c, k, v) in gen.triplets() {
        for r in 0..dim {
            let dv = d.get(r, k);
            if dv.is_zero() {
                continue;
            }
            let cur = dlt.get(r, c).plus(&dv.times(v));
            dlt.set(r, c, cur);
        }
    }
    for r in 0..dim {
        for c in 0..dim {
            let diff = ld.get(r, c).minus(dlt.get(r, c));
            if !diff.is_zero() {
                return Some((r, c, diff));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asep::two_site_basis;
    use crate::exact::{parse_rational, RationalFunction};

    fn q() -> RationalFunction {
        RationalFunction::q()
    }

    #[test]
    fn pochhammer_basics() {
        let a = RationalFunction::q_pow(3);
        assert!(q_pochhammer(&a, 0, &q()).is_one());
        let two = q_pochhammer(&a, 2, &q());
        let expected = RationalFunction::one()
            .sub(&a)
            .mul(&RationalFunction::one().sub(&a.mul(&q())));
        assert_eq!(two, expected);
        assert!(q_pochhammer(&RationalFunction::one(), 1, &q()).is_zero());
    }

    #[test]
    fn two_phi_one_terminates_and_errors() {
        // b = 1 kills the series immediately
        let one = RationalFunction::one();
        let generic = RationalFunction::q_pow(5);
        let z = RationalFunction::q_pow(2);
        let value =
            q_hypergeometric_2phi1(&generic, &one, &RationalFunction::q_pow(-3), &q(), &z, 10)
                .unwrap();
        assert!(value.is_one());
        // a = q^{-1}: two-term sum 1 + (1-q^{-1})(1-b) z / ((1-c)(1-q))
        let a = RationalFunction::q_pow(-1);
        let b = RationalFunction::q_pow(7);
        let c = RationalFunction::q_pow(-4);
        let value = q_hypergeometric_2phi1(&a, &b, &c, &q(), &z, 10).unwrap();
        let second = one
            .sub(&a)
            .mul(&one.sub(&b))
            .mul(&z)
            .checked_div(&one.sub(&c).mul(&one.sub(&q())))
            .unwrap();
        assert_eq!(value, one.add(&second));
        // generic parameters never terminate
        let err = q_hypergeometric_2phi1(&generic, &b, &c, &q(), &z, 8);
        assert!(matches!(err, Err(DualityError::NonTerminating { .. })));
    }

    #[test]
    fn two_phi_one_matches_term_by_term_oracle() {
        // independent summation: recompute each Pochhammer from scratch
        let q0 = parse_rational("3/2").unwrap();
        let x_val = crate::exact::q_power(&q0, -2);
        let b = crate::exact::q_power(&q0, -1);
        let c = crate::exact::q_power(&q0, -1);
        let z = parse_rational("5/7").unwrap();
        let incremental = q_hypergeometric_2phi1(&x_val, &b, &c, &q0, &z, 5).unwrap();
        let mut oracle = <BigRational as Scalar>::zero();
        for k in 0..=1 {
            // terminates at k = 1 because b = q^{-1}
            let num = q_pochhammer(&x_val, k, &q0).times(&q_pochhammer(&b, k, &q0));
            let den = q_pochhammer(&c, k, &q0).times(&q_pochhammer(&q0, k, &q0));
            let zk = crate::exact::q_power(&z, k as i64);
            oracle = oracle.plus(&num.times(&zk).divide(&den));
        }
        assert_eq!(incremental, oracle);
    }

    #[test]
    fn krawtchouk_edges() {
        let p = RationalFunction::q_pow(3);
        // degree 0 is the constant 1
        let v = q_krawtchouk(&RationalFunction::q_pow(-2), 0, &p, 1, &q()).unwrap();
        assert!(v.is_one());
        // argument q^0 = 1 collapses every degree to 1
        for degree in 0..4 {
            let v = q_krawtchouk(&RationalFunction::one(), degree, &p, 1, &q()).unwrap();
            assert!(v.is_one(), "degree {degree}");
        }
        // degree 1, c = 1: 1 + (1 - q^{-x}) p q^2 / (1 - q)
        let x_val = RationalFunction::q_pow(-2);
        let v = q_krawtchouk(&x_val, 1, &p, 1, &q()).unwrap();
        let expected = RationalFunction::one().add(
            &RationalFunction::one()
                .sub(&x_val)
                .mul(&p)
                .mul(&RationalFunction::q_pow(2))
                .checked_div(&RationalFunction::one().sub(&q()))
                .unwrap(),
        );
        assert_eq!(v, expected);
    }

    fn sym_params(n: usize, sites: usize) -> DualityParams<RationalFunction> {
        DualityParams::new(
            q(),
            n,
            [
                RationalFunction::from_rational(parse_rational("3").unwrap()),
                RationalFunction::from_rational(parse_rational("5").unwrap()),
            ],
            sites,
        )
        .unwrap()
    }

    #[test]
    fn empty_configuration_gives_one() {
        let params = sym_params(4, 3);
        let eta = Configuration(vec![0, 0, 0]);
        for xi_idx in 0..64 {
            let xi = Configuration::from_lex_index(xi_idx, 3);
            assert!(duality_value(&eta, &xi, &params).unwrap().is_one());
        }
    }

    #[test]
    fn value_factorizes_over_species() {
        let params = sym_params(3, 2);
        for eta_idx in 0..16 {
            for xi_idx in 0..16 {
                let eta = Configuration::from_lex_index(eta_idx, 2);
                let xi = Configuration::from_lex_index(xi_idx, 2);
                let full = duality_value(&eta, &xi, &params).unwrap();
                // strip species 2 from both, then species 1
                let strip = |c: &Configuration, keep: u8| {
                    Configuration(c.0.iter().map(|s| s & keep).collect())
                };
                let s1 = duality_value(&strip(&eta, 1), &strip(&xi, 1), &params).unwrap();
                let s2 = duality_value(&strip(&eta, 2), &strip(&xi, 2), &params).unwrap();
                assert_eq!(full, s1.mul(&s2), "eta={eta:?} xi={xi:?}");
            }
        }
    }

    #[test]
    fn factor_form_matches_value() {
        let params = sym_params(5, 2);
        for eta_idx in 0..16 {
            for xi_idx in 0..16 {
                let eta = Configuration::from_lex_index(eta_idx, 2);
                let xi = Configuration::from_lex_index(xi_idx, 2);
                let value = duality_value(&eta, &xi, &params).unwrap();
                let mut product = RationalFunction::one();
                for (species, j) in duality_factor_exponents(&eta, &xi) {
                    let alpha = &params.alpha[(species - 1) as usize];
                    let factor = RationalFunction::one()
                        .sub(&RationalFunction::q_pow(j).mul(&alpha.checked_inv().unwrap()));
                    product = product.mul(&factor);
                }
                assert_eq!(value, product, "eta={eta:?} xi={xi:?}");
            }
        }
    }

    #[test]
    fn height_profile_conservation() {
        let config = Configuration(vec![3, 0, 1, 2, 3]);
        let h = HeightProfile::new(&config);
        for (i, species) in [1u8, 2].into_iter().enumerate() {
            let occ = config.occupation(species);
            for x in 0..config.len() {
                assert_eq!(
                    h.left[i][x] + occ[x] as usize + h.right[i][x],
                    h.totals[i],
                    "species {species} site {x}"
                );
            }
        }
    }

    #[test]
    fn all_ones_row_for_empty_eta() {
        let params = sym_params(5, 2);
        let basis = two_site_basis();
        let m = duality_matrix(&params, &basis).unwrap();
        let empty_row = basis.iter().position(|c| c.0 == vec![0, 0]).unwrap();
        for c in 0..16 {
            assert!(m.get(empty_row, c).is_one());
        }
    }

    #[test]
    fn duality_holds_at_sample_points() {
        let report = verify_duality(3, 2, 3, 12345).unwrap();
        assert_eq!(report.points.len(), 3);
        assert!(report.max_residuals.iter().all(|r| Scalar::is_zero(r)));
        // three sites, beyond the printed base case
        let report = verify_duality(3, 3, 2, 999).unwrap();
        assert!(report.max_residuals.iter().all(|r| Scalar::is_zero(r)));
    }

    #[test]
    fn duality_holds_symbolically_for_two_sites() {
        // symbolic in q with fixed rational alphas
        let n = 3;
        let asep = AsepParams::new(q(), n, 0).unwrap();
        let gen = multi_site_generator(&asep, 2, crate::asep::DEFAULT_SITE_CAP).unwrap();
        let params = sym_params(n, 2);
        let d = duality_matrix(&params, gen.basis()).unwrap();
        assert!(generator_duality_residual(&gen, &d).is_none());
    }

    #[test]
    fn sampled_points_avoid_degenerate_values() {
        for (q0, a1, a2) in sample_points(42, 25) {
            assert!(q0 > <BigRational as Scalar>::zero());
            assert!(!Scalar::is_one(&q0));
            for alpha in [&a1, &a2] {
                assert!(!Scalar::is_zero(alpha));
                for j in -4..=4 {
                    assert_ne!(alpha, &crate::exact::q_power(&q0, j));
                }
            }
        }
    }

    #[test]
    fn perturbed_generator_fails_duality() {
        let n = 3;
        let q0 = parse_rational("2").unwrap();
        let asep = AsepParams::new(q0.clone(), n, 0).unwrap();
        let mut gen = multi_site_generator(&asep, 2, crate::asep::DEFAULT_SITE_CAP).unwrap();
        let params = DualityParams::new(
            q0,
            n,
            [parse_rational("3").unwrap(), parse_rational("5").unwrap()],
            2,
        )
        .unwrap();
        let d = duality_matrix(&params, gen.basis()).unwrap();
        assert!(generator_duality_residual(&gen, &d).is_none());
        // breaking one rate must surface in the residual
        let dim = gen.dim();
        let _ = dim;
        // rebuild with a wrong parameter instead of mutating internals
        let wrong = AsepParams::new(parse_rational("3").unwrap(), n, 0).unwrap();
        gen = multi_site_generator(&wrong, 2, crate::asep::DEFAULT_SITE_CAP).unwrap();
        assert!(generator_duality_residual(&gen, &d).is_some());
    }
}
