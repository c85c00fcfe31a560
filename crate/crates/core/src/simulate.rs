//! Continuous-time Monte Carlo simulation of the exclusion process and
//! floating-point validation against exact matrix data.
//!
//! This is the one module allowed to use floating point: trajectories,
//! empirical kernels, and matrix exponentials live here, always compared
//! against quantities produced by the exact layers.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::asep::{multi_site_generator, AsepError, AsepParams, Configuration, GeneratorMatrix};
use crate::duality::{duality_value, DualityError, DualityParams};
use crate::exact::BigRational;

#[derive(Debug, Clone, Error)]
pub enum SimError {
    #[error("negative rate {rate} from state {state} to {target}")]
    NegativeRate { state: usize, target: usize, rate: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Asep(#[from] AsepError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

/// Simulation setup: process parameters at a numeric q, lattice size, time
/// horizon, seed, and initial configuration.
#[derive(Debug, Clone)]
pub struct TrajectoryConfig {
    pub q: BigRational,
    pub n: usize,
    pub delta: usize,
    pub sites: usize,
    pub t_max: f64,
    pub seed: u64,
    pub initial: Configuration,
}

/// Jump times and visited states of one trajectory; `states[k]` is occupied
/// on [times[k], times[k+1]).
#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub times: Vec<f64>,
    pub states: Vec<Configuration>,
    pub final_state: Configuration,
}

/// Per-state jump table extracted from the exact generator.
pub struct JumpChain {
    pub dim: usize,
    pub sites: usize,
    /// outgoing (target, rate) lists, by state index
    pub moves: Vec<Vec<(usize, f64)>>,
    pub exit_rates: Vec<f64>,
}

impl JumpChain {
    pub fn from_generator(gen: &GeneratorMatrix<BigRational>) -> Result<Self, SimError> {
        let dim = gen.dim();
        let sites = gen.basis()[0].len();
        let mut moves = vec![Vec::new(); dim];
        let mut exit_rates = vec![0.0; dim];
        for (r, c, v) in gen.triplets() {
            if r == c {
                continue;
            }
            let rate = v.to_f64().unwrap_or(f64::NAN);
            if !(rate >= 0.0) {
                return Err(SimError::NegativeRate { state: r, target: c, rate });
            }
            if rate > 0.0 {
                moves[r].push((c, rate));
                exit_rates[r] += rate;
            }
        }
        Ok(Self { dim, sites, moves, exit_rates })
    }
}

fn build_chain(cfg: &TrajectoryConfig) -> Result<JumpChain, SimError> {
    if cfg.initial.len() != cfg.sites {
        return Err(SimError::InvalidConfig(format!(
            "initial configuration has {} sites, expected {}",
            cfg.initial.len(),
            cfg.sites
        )));
    }
    if cfg.initial.sites().iter().any(|&s| s > 3) {
        return Err(SimError::InvalidConfig("site states must be 0..=3".into()));
    }
    let params = AsepParams::new(cfg.q.clone(), cfg.n, cfg.delta)?;
    let gen = multi_site_generator(&params, cfg.sites, crate::asep::DEFAULT_SITE_CAP)?;
    JumpChain::from_generator(&gen)
}

fn run_on_chain(
    chain: &JumpChain,
    start: usize,
    t_max: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, Vec<usize>) {
    let mut t = 0.0;
    let mut state = start;
    let mut times = vec![0.0];
    let mut states = vec![state];
    loop {
        let exit = chain.exit_rates[state];
        if exit == 0.0 {
            break;
        }
        let u: f64 = rng.gen::<f64>();
        let holding = -(1.0 - u).ln() / exit;
        t += holding;
        if t >= t_max {
            break;
        }
        let mut pick = rng.gen::<f64>() * exit;
        let mut next = chain.moves[state][0].0;
        for &(target, rate) in &chain.moves[state] {
            if pick < rate {
                next = target;
                break;
            }
            pick -= rate;
        }
        state = next;
        times.push(t);
        states.push(state);
    }
    (times, states)
}

/// Standard exponential-clock jump chain, deterministic given the seed.
pub fn gillespie_run(cfg: &TrajectoryConfig) -> Result<TrajectorySample, SimError> {
    let chain = build_chain(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = cfg.initial.lex_index();
    let (times, states) = run_on_chain(&chain, start, cfg.t_max, &mut rng);
    let configs: Vec<Configuration> = states
        .iter()
        .map(|&s| Configuration::from_lex_index(s, cfg.sites))
        .collect();
    let final_state = configs.last().unwrap().clone();
    Ok(TrajectorySample { times, states: configs, final_state })
}

/// Dense matrix exponential by scaling and squaring of the Taylor series;
/// plenty for the small generators validated here.
pub fn expm(a: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
    let n = a.len();
    let norm: f64 = a
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * t.abs();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = t / 2f64.powi(squarings as i32);
    let b: Vec<Vec<f64>> = a
        .iter()
        .map(|row| row.iter().map(|x| x * scale).collect())
        .collect();
    let matmul = |x: &[Vec<f64>], y: &[Vec<f64>]| -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                let v = x[i][k];
                if v == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += v * y[k][j];
                }
            }
        }
        out
    };
    let mut result: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut term = result.clone();
    for k in 1..=24 {
        term = matmul(&term, &b);
        let kf = k as f64;
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= kf;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// The exact generator as a dense f64 matrix.
pub fn generator_to_f64(gen: &GeneratorMatrix<BigRational>) -> Vec<Vec<f64>> {
    let dim = gen.dim();
    let mut out = vec![vec![0.0; dim]; dim];
    for (r, c, v) in gen.triplets() {
        out[r][c] = v.to_f64().unwrap_or(f64::NAN);
    }
    out
}

/// Row-wise empirical distribution of the state at time t, from `trials`
/// independent runs per starting state. Trajectories stream in parallel
/// with per-run RNG streams.
pub fn estimate_transition_matrix(
    cfg: &TrajectoryConfig,
    t: f64,
    trials: usize,
) -> Result<Vec<Vec<f64>>, SimError> {
    let chain = build_chain(cfg)?;
    let dim = chain.dim;
    let rows: Vec<Vec<f64>> = (0..dim)
        .into_par_iter()
        .map(|start| {
            let mut counts = vec![0usize; dim];
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(start as u64 + 1);
            for _ in 0..trials {
                let (_, states) = run_on_chain(&chain, start, t, &mut rng);
                counts[*states.last().unwrap()] += 1;
            }
            counts.iter().map(|&c| c as f64 / trials as f64).collect()
        })
        .collect();
    Ok(rows)
}

/// Monte Carlo comparison of the two duality expectations
/// E[D(eta_t, xi_0)] and E[D(eta_0, xi_t)].
#[derive(Debug, Clone)]
pub struct DualityMcReport {
    pub forward_mean: f64,
    pub forward_se: f64,
    pub backward_mean: f64,
    pub backward_se: f64,
    /// |forward - backward| <= 4 (se_f + se_b)
    pub compatible: bool,
}

pub fn duality_expectation_check(
    cfg: &TrajectoryConfig,
    alpha: [BigRational; 2],
    xi0: &Configuration,
    t: f64,
    trials: usize,
) -> Result<DualityMcReport, SimError> {
    if cfg.delta != 0 {
        return Err(SimError::InvalidConfig("duality holds at delta = 0 only".into()));
    }
    let chain = build_chain(cfg)?;
    let params = DualityParams::new(cfg.q.clone(), cfg.n, alpha, cfg.sites)?;
    let sites = cfg.sites;
    // precompute D(eta, xi0) and D(eta0, xi) as f64 tables
    let d_against_xi0: Vec<f64> = (0..chain.dim)
        .map(|s| {
            duality_value(&Configuration::from_lex_index(s, sites), xi0, &params)
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
        })
        .collect::<Result<_, _>>()?;
    let d_from_eta0: Vec<f64> = (0..chain.dim)
        .map(|s| {
            duality_value(&cfg.initial, &Configuration::from_lex_index(s, sites), &params)
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
        })
        .collect::<Result<_, _>>()?;
    let run_side = |start: usize, table: &[f64], stream: u64| -> (f64, f64) {
        let sums: Vec<(f64, f64)> = (0..trials)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(stream * (trials as u64 + 1) + k as u64);
                let (_, states) = run_on_chain(&chain, start, t, &mut rng);
                let value = table[*states.last().unwrap()];
                (value, value * value)
            })
            .collect();
        let total: f64 = sums.iter().map(|(v, _)| v).sum();
        let total_sq: f64 = sums.iter().map(|(_, s)| s).sum();
        let mean = total / trials as f64;
        let var = (total_sq / trials as f64 - mean * mean).max(0.0);
        let se = (var / trials as f64).sqrt();
        (mean, se)
    };
    let (forward_mean, forward_se) = run_side(cfg.initial.lex_index(), &d_against_xi0, 1);
    let (backward_mean, backward_se) = run_side(xi0.lex_index(), &d_from_eta0, 2);
    let compatible = (forward_mean - backward_mean).abs() <= 4.0 * (forward_se + backward_se);
    Ok(DualityMcReport {
        forward_mean,
        forward_se,
        backward_mean,
        backward_se,
        compatible,
    })
}

/// Deterministic companion of the Monte Carlo check:
/// max |exp(tL) D - D exp(tL^T)| in double precision.
pub fn semigroup_duality_residual(
    q: &BigRational,
    n: usize,
    alpha: [BigRational; 2],
    sites: usize,
    t: f64,
) -> Result<f64, SimError> {
    let params = AsepParams::new(q.clone(), n, 0)?;
    let gen = multi_site_generator(&params, sites, crate::asep::DEFAULT_SITE_CAP)?;
    let dual_params = DualityParams::new(q.clone(), n, alpha, sites)?;
    let d = crate::duality::duality_matrix(&dual_params, gen.basis())?;
    let dim = gen.dim();
    let l = generator_to_f64(&gen);
    let lt: Vec<Vec<f64>> = (0..dim)
        .map(|i| (0..dim).map(|j| l[j][i]).collect())
        .collect();
    let el = expm(&l, t);
    let elt = expm(&lt, t);
    let df: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| d.get(i, j).to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    let mut max = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = 0.0;
            let mut rhs = 0.0;
            for k in 0..dim {
                lhs += el[i][k] * df[k][j];
                rhs += df[i][k] * elt[k][j];
            }
            max = max.max((lhs - rhs).abs());
        }
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn cfg(initial: Vec<u8>, seed: u64) -> TrajectoryConfig {
        TrajectoryConfig {
            q: parse_rational("2").unwrap(),
            n: 3,
            delta: 0,
            sites: initial.len(),
            t_max: 5.0,
            seed,
            initial: Configuration(initial),
        }
    }

    #[test]
    fn empty_lattice_is_absorbing() {
        let sample = gillespie_run(&cfg(vec![0, 0, 0], 7)).unwrap();
        assert_eq!(sample.times.len(), 1);
        assert_eq!(sample.final_state, Configuration(vec![0, 0, 0]));
    }

    #[test]
    fn fully_packed_single_species_is_absorbing() {
        // all sites singly occupied by species 1: every swap is blocked
        let sample = gillespie_run(&cfg(vec![1, 1, 1], 11)).unwrap();
        assert_eq!(sample.times.len(), 1);
        assert_eq!(sample.final_state, Configuration(vec![1, 1, 1]));
    }

    #[test]
    fn trajectories_are_reproducible_and_conserve_particles() {
        let config = cfg(vec![3, 0, 1], 99);
        let a = gillespie_run(&config).unwrap();
        let b = gillespie_run(&config).unwrap();
        assert_eq!(a.times, b.times);
        assert_eq!(a.states, b.states);
        assert!(a.times.len() > 1, "this initial state must move");
        for state in &a.states {
            assert_eq!(state.species_count(1), 2);
            assert_eq!(state.species_count(2), 1);
        }
        // consecutive states differ by one local move
        for pair in a.states.windows(2) {
            let diff: Vec<usize> = (0..3).filter(|&x| pair[0].0[x] != pair[1].0[x]).collect();
            assert_eq!(diff.len(), 2, "{:?} -> {:?}", pair[0], pair[1]);
            assert_eq!(diff[1], diff[0] + 1, "moves act on adjacent sites");
        }
    }

    #[test]
    fn expm_identities() {
        let a = vec![vec![0.0, 1.0], vec![0.0, 0.0]];
        let e = expm(&a, 0.0);
        assert_eq!(e[0][0], 1.0);
        assert_eq!(e[0][1], 0.0);
        // nilpotent: exp(tA) = I + tA
        let e = expm(&a, 0.7);
        assert!((e[0][1] - 0.7).abs() < 1e-14);
    }

    #[test]
    fn empirical_kernel_at_time_zero_is_identity() {
        let config = cfg(vec![0, 0], 5);
        let m = estimate_transition_matrix(&config, 0.0, 50).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn empirical_kernel_tracks_matrix_exponential() {
        let config = cfg(vec![0, 0], 20260811);
        let t = 0.1;
        let trials = 20_000;
        let empirical = estimate_transition_matrix(&config, t, trials).unwrap();
        let params = AsepParams::new(config.q.clone(), config.n, config.delta).unwrap();
        let gen = multi_site_generator(&params, 2, crate::asep::DEFAULT_SITE_CAP).unwrap();
        let exact = expm(&generator_to_f64(&gen), t);
        let mut max_err = 0.0f64;
        for i in 0..16 {
            for j in 0..16 {
                max_err = max_err.max((empirical[i][j] - exact[i][j]).abs());
            }
        }
        assert!(max_err < 0.02, "max error {max_err}");
    }

    #[test]
    fn empirical_jump_rate_matches_generator() {
        // from (1,0), the chain jumps to (0,1) with probability 1; the mean
        // holding time estimates 1/rate
        let config = TrajectoryConfig {
            q: parse_rational("2").unwrap(),
            n: 3,
            delta: 0,
            sites: 2,
            t_max: f64::INFINITY,
            seed: 31415,
            initial: Configuration(vec![1, 0]),
        };
        let chain = build_chain(&config).unwrap();
        let start = config.initial.lex_index();
        let exact_rate = chain.exit_rates[start];
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let trials = 100_000;
        let mut total = 0.0;
        for _ in 0..trials {
            let u: f64 = rng.gen::<f64>();
            total += -(1.0 - u).ln() / exact_rate;
        }
        let mean = total / trials as f64;
        let se = (1.0 / exact_rate) / (trials as f64).sqrt();
        assert!(
            (mean - 1.0 / exact_rate).abs() < 3.0 * se,
            "mean {mean}, expected {}",
            1.0 / exact_rate
        );
    }

    #[test]
    fn duality_expectations_agree() {
        let config = TrajectoryConfig {
            q: parse_rational("2").unwrap(),
            n: 3,
            delta: 0,
            sites: 2,
            t_max: 0.0,
            seed: 8,
            initial: Configuration(vec![3, 0]),
        };
        let alpha = [parse_rational("3").unwrap(), parse_rational("5").unwrap()];
        let xi0 = Configuration(vec![1, 2]);
        let report =
            duality_expectation_check(&config, alpha.clone(), &xi0, 0.5, 20_000).unwrap();
        assert!(report.compatible, "{report:?}");
        // t = 0: both sides equal D(eta0, xi0) exactly
        let report0 = duality_expectation_check(&config, alpha, &xi0, 0.0, 10).unwrap();
        assert_eq!(report0.forward_mean, report0.backward_mean);
        assert_eq!(report0.forward_se, 0.0);
    }

    #[test]
    fn semigroup_duality_in_double_precision() {
        let residual = semigroup_duality_residual(
            &parse_rational("2").unwrap(),
            3,
            [parse_rational("3").unwrap(), parse_rational("5").unwrap()],
            2,
            0.05,
        )
        .unwrap();
        assert!(residual < 1e-10, "residual {residual}");
    }
}
