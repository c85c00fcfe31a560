//! Direct construction of the two-species Type D exclusion generator: the
//! 16x16 two-site matrix and the L-site generator as a sum of local
//! generators on adjacent pairs.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact::{q_power, BigRational, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AsepError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("state space 4^{sites} = {states} exceeds the cap of {cap}")]
    DimensionOverflow { sites: usize, states: usize, cap: usize },
}

/// Parameters (q, n, delta) of the process; q is the asymmetry parameter
/// (symbolic or a rational value), n >= 2 the drift rank, 0 <= delta <= n-2
/// the interspecies coupling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsepParams<S> {
    q: S,
    n: usize,
    delta: usize,
}

impl<S: Scalar> AsepParams<S> {
    pub fn new(q: S, n: usize, delta: usize) -> Result<Self, AsepError> {
        if n < 2 {
            return Err(AsepError::InvalidParams(format!("n = {n} must be at least 2")));
        }
        if delta > n - 2 {
            return Err(AsepError::InvalidParams(format!(
                "delta = {delta} must satisfy 0 <= delta <= n-2 = {}",
                n - 2
            )));
        }
        if q.is_one() || q.is_zero() {
            return Err(AsepError::InvalidParams("q must differ from 0 and 1".into()));
        }
        Ok(Self { q, n, delta })
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> usize {
        self.delta
    }
}

/// A lattice configuration: site states in {0, 1, 2, 3} where 0 is empty,
/// 1 carries a species-1 particle, 2 a species-2 particle, 3 both.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration(pub Vec<u8>);

impl Configuration {
    pub fn sites(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Occupation of one species (1 or 2) per site, each 0 or 1.
    pub fn occupation(&self, species: u8) -> Vec<u8> {
        assert!(species == 1 || species == 2);
        let bit = species; // species 1 <-> bit 1, species 2 <-> bit 2
        self.0
            .iter()
            .map(|s| if s & bit != 0 { 1 } else { 0 })
            .collect()
    }

    pub fn species_count(&self, species: u8) -> usize {
        self.occupation(species).iter().map(|&b| b as usize).sum()
    }

    /// Index in the lexicographic basis (site tuples as base-4 digits).
    pub fn lex_index(&self) -> usize {
        self.0.iter().fold(0usize, |acc, &s| acc * 4 + s as usize)
    }

    pub fn from_lex_index(mut index: usize, len: usize) -> Self {
        let mut sites = vec![0u8; len];
        for slot in sites.iter_mut().rev() {
            *slot = (index % 4) as u8;
            index /= 4;
        }
        Configuration(sites)
    }
}

/// Square generator matrix with sparse storage and an explicit state basis.
/// Off-diagonal entries are jump rates; diagonals make the rows sum to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix<S> {
    dim: usize,
    basis: Vec<Configuration>,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> GeneratorMatrix<S> {
    fn new(basis: Vec<Configuration>) -> Self {
        Self {
            dim: basis.len(),
            basis,
            entries: BTreeMap::new(),
        }
    }

    /// Rebuilds a generator from decoded parts, merging duplicate triplets;
    /// indices must lie inside the basis.
    pub fn from_triplets(
        basis: Vec<Configuration>,
        triplets: Vec<(usize, usize, S)>,
    ) -> Result<Self, AsepError> {
        let dim = basis.len();
        let mut gen = Self::new(basis);
        for (row, col, value) in triplets {
            if row >= dim || col >= dim {
                return Err(AsepError::InvalidParams(format!(
                    "entry ({row}, {col}) outside a {dim}-state basis"
                )));
            }
            gen.add(row, col, value);
        }
        Ok(gen)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Configuration] {
        &self.basis
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(S::zero)
    }

    fn add(&mut self, row: usize, col: usize, value: S) {
        if value.is_zero() {
            return;
        }
        let entry = self.entries.entry((row, col)).or_insert_with(S::zero);
        *entry = entry.plus(&value);
        if entry.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    /// Sets each diagonal entry to minus the off-diagonal row sum.
    fn close_rows(&mut self) {
        for row in 0..self.dim {
            let mut sum = S::zero();
            for ((r, c), v) in self.entries.range((row, 0)..=(row, self.dim)) {
                if *r == row && *c != row {
                    sum = sum.plus(v);
                }
            }
            self.entries.remove(&(row, row));
            if !sum.is_zero() {
                self.entries.insert((row, row), sum.negate());
            }
        }
    }

    pub fn row_sum(&self, row: usize) -> S {
        let mut sum = S::zero();
        for ((r, _), v) in self.entries.range((row, 0)..=(row, self.dim)) {
            debug_assert_eq!(*r, row);
            sum = sum.plus(v);
        }
        sum
    }

    /// Sparse triplets (row, col, value) in deterministic order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Connected components of the symmetrized off-diagonal pattern,
    /// each sorted, ordered by their smallest state index.
    pub fn communicating_blocks(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.dim).collect();
        fn find(parent: &mut Vec<usize>, a: usize) -> usize {
            if parent[a] != a {
                let root = find(parent, parent[a]);
                parent[a] = root;
            }
            parent[a]
        }
        for (&(r, c), _) in self.entries.iter() {
            if r != c {
                let (ra, rb) = (find(&mut parent, r), find(&mut parent, c));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        blocks
    }
}

/// The ordered two-site basis used for the 16x16 generator.
pub fn two_site_basis() -> Vec<Configuration> {
    [
        (3, 0), (2, 1), (0, 3), (1, 2),
        (1, 0), (0, 1), (2, 0), (0, 2),
        (3, 1), (1, 3), (3, 2), (2, 3),
        (0, 0), (1, 1), (2, 2), (3, 3),
    ]
    .into_iter()
    .map(|(a, b)| Configuration(vec![a, b]))
    .collect()
}

/// Off-diagonal jump rates of the two-site generator, keyed by state pairs.
///
/// The 4x4 block couples the mixed-pair class {(3,0), (2,1), (0,3), (1,2)};
/// the four 2x2 blocks couple single-particle swaps; everything else is
/// absorbing.
fn local_rates<S: Scalar>(params: &AsepParams<S>) -> BTreeMap<((u8, u8), (u8, u8)), S> {
    let q = &params.q;
    let n = params.n as i64;
    let d = params.delta as i64;
    let qp = |e: i64| q_power(q, e);
    // building blocks of the 4x4 class
    let up_fast = qp(2 * n).minus(&qp(2 * n - 2)).plus(&S::from_int(2));
    let up_slow = qp(2 * n - 2).minus(&qp(2 * n - 4)).plus(&qp(-2).times(&S::from_int(2)));
    let down_fast = qp(-2 * n).minus(&qp(2 - 2 * n)).plus(&S::from_int(2));
    let down_slow = S::from_int(2).times(&qp(2)).plus(&qp(2 - 2 * n)).minus(&qp(4 - 2 * n));
    let hop = {
        let a = qp(n - 1).minus(&qp(1 - n));
        a.times(&a)
    };
    let mut rates: BTreeMap<((u8, u8), (u8, u8)), S> = BTreeMap::new();
    let mut put = |from: (u8, u8), to: (u8, u8), rate: S| {
        rates.insert((from, to), rate);
    };
    // rows of the 4x4 block in the order (3,0), (2,1), (0,3), (1,2)
    put((3, 0), (2, 1), qp(-2 * d).times(&up_slow));
    put((3, 0), (0, 3), hop.times(&qp(-2)));
    put((3, 0), (1, 2), up_slow.clone());
    put((2, 1), (3, 0), qp(-2 * d).times(&up_fast));
    put((2, 1), (0, 3), down_fast.clone());
    put((2, 1), (1, 2), hop.clone());
    put((0, 3), (3, 0), qp(2).times(&hop));
    put((0, 3), (2, 1), down_slow.clone());
    put((0, 3), (1, 2), qp(2 * d).times(&down_slow));
    put((1, 2), (3, 0), up_fast.clone());
    put((1, 2), (2, 1), hop.clone());
    put((1, 2), (0, 3), qp(2 * d).times(&down_fast));
    // the four 2x2 blocks: (x, y) <-> (y, x) swaps of a single particle
    let w = qp(1 - 2 * n).plus(&qp(2 * n - 1));
    let right = w.divide(q);
    let left = q.times(&w);
    for class in [(1u8, 0u8), (2, 0), (3, 1), (3, 2)] {
        let (a, b) = class;
        put((a, b), (b, a), right.clone());
        put((b, a), (a, b), left.clone());
    }
    rates
}

/// The 16x16 two-site generator in the ordered basis
/// {(3,0), (2,1), (0,3), (1,2), (1,0), (0,1), (2,0), (0,2), (3,1), (1,3),
///  (3,2), (2,3), (0,0), (1,1), (2,2), (3,3)}.
pub fn local_generator<S: Scalar>(params: &AsepParams<S>) -> GeneratorMatrix<S> {
    let basis = two_site_basis();
    let index: BTreeMap<(u8, u8), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, c)| ((c.0[0], c.0[1]), i))
        .collect();
    let mut gen = GeneratorMatrix::new(basis);
    for (&(from, to), rate) in local_rates(params).iter() {
        gen.add(index[&from], index[&to], rate.clone());
    }
    gen.close_rows();
    gen
}

pub const DEFAULT_SITE_CAP: usize = 10;

/// The L-site generator: the sum of the local generator embedded on each
/// adjacent site pair, over the lexicographic configuration basis.
pub fn multi_site_generator<S: Scalar>(
    params: &AsepParams<S>,
    sites: usize,
    site_cap: usize,
) -> Result<GeneratorMatrix<S>, AsepError> {
    if sites < 2 {
        return Err(AsepError::InvalidParams(format!("need at least 2 sites, got {sites}")));
    }
    if sites > site_cap {
        return Err(AsepError::DimensionOverflow {
            sites,
            states: 4usize.pow(sites.min(31) as u32),
            cap: site_cap,
        });
    }
    let dim = 4usize.pow(sites as u32);
    let basis: Vec<Configuration> = (0..dim).map(|i| Configuration::from_lex_index(i, sites)).collect();
    let rates = local_rates(params);
    let mut gen = GeneratorMatrix::new(basis);
    for row in 0..dim {
        let config = Configuration::from_lex_index(row, sites);
        for x in 0..sites - 1 {
            let pair = (config.0[x], config.0[x + 1]);
            for (&(from, to), rate) in rates.iter() {
                if from != pair {
                    continue;
                }
                let mut next = config.clone();
                next.0[x] = to.0;
                next.0[x + 1] = to.1;
                gen.add(row, next.lex_index(), rate.clone());
            }
        }
    }
    gen.close_rows();
    Ok(gen)
}

/// Report of an off-diagonal nonnegativity scan over numeric q values.
#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub points: Vec<BigRational>,
    /// (q, row, col, value) for every negative off-diagonal entry found.
    pub violations: Vec<(BigRational, usize, usize, BigRational)>,
    /// smallest off-diagonal entry seen per point
    pub minima: Vec<(BigRational, BigRational)>,
}

impl PositivityReport {
    pub fn all_nonnegative(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every off-diagonal rate is nonnegative at each grid point.
pub fn rate_positivity_scan(
    n: usize,
    delta: usize,
    sites: usize,
    grid: &[BigRational],
) -> Result<PositivityReport, AsepError> {
    let mut report = PositivityReport {
        points: grid.to_vec(),
        violations: Vec::new(),
        minima: Vec::new(),
    };
    for q0 in grid {
        let params = AsepParams::new(q0.clone(), n, delta)?;
        let gen = multi_site_generator(&params, sites, DEFAULT_SITE_CAP)?;
        let mut min: Option<BigRational> = None;
        for (r, c, v) in gen.triplets() {
            if r == c {
                continue;
            }
            if min.as_ref().map(|m| v < m).unwrap_or(true) {
                min = Some(v.clone());
            }
            if v < &<BigRational as Scalar>::zero() {
                report.violations.push((q0.clone(), r, c, v.clone()));
            }
        }
        if let Some(m) = min {
            report.minima.push((q0.clone(), m));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, RationalFunction};

    fn sym_params(n: usize, delta: usize) -> AsepParams<RationalFunction> {
        AsepParams::new(RationalFunction::q(), n, delta).unwrap()
    }

    fn qp(e: i64) -> RationalFunction {
        RationalFunction::q_pow(e)
    }

    #[test]
    fn parameter_validation() {
        assert!(AsepParams::new(RationalFunction::q(), 1, 0).is_err());
        assert!(AsepParams::new(RationalFunction::q(), 3, 2).is_err());
        assert!(AsepParams::new(RationalFunction::one(), 3, 0).is_err());
        assert!(AsepParams::new(parse_rational("1").unwrap(), 3, 0).is_err());
        assert!(AsepParams::new(parse_rational("2").unwrap(), 3, 1).is_ok());
    }

    #[test]
    fn printed_entries_of_the_four_by_four() {
        // row (2,1), col (3,0): q^{-2 delta} (q^{2n} - q^{2n-2} + 2)
        for (n, delta) in [(5usize, 0usize), (5, 3), (3, 1), (2, 0)] {
            let gen = local_generator(&sym_params(n, delta));
            let expected = qp(-2 * delta as i64).mul(
                &qp(2 * n as i64)
                    .sub(&qp(2 * n as i64 - 2))
                    .add(&RationalFunction::from_int(2)),
            );
            assert_eq!(gen.get(1, 0), expected, "n={n} delta={delta}");
        }
    }

    #[test]
    fn two_by_two_rates() {
        let gen = local_generator(&sym_params(5, 0));
        let w = qp(-9).add(&qp(9));
        // (1,0) -> (0,1) at rate w/q, (0,1) -> (1,0) at rate q w
        assert_eq!(gen.get(4, 5), w.mul(&qp(-1)));
        assert_eq!(gen.get(5, 4), w.mul(&qp(1)));
        // all four classes share the rates
        for (a, b) in [(6, 7), (8, 9), (10, 11)] {
            assert_eq!(gen.get(a, b), gen.get(4, 5));
            assert_eq!(gen.get(b, a), gen.get(5, 4));
        }
    }

    #[test]
    fn absorbing_states_have_zero_rows() {
        let gen = local_generator(&sym_params(4, 1));
        for row in 12..16 {
            for col in 0..16 {
                assert!(gen.get(row, col).is_zero(), "row {row} col {col}");
            }
        }
    }

    #[test]
    fn rows_sum_to_zero_over_the_grid() {
        for n in 2..=6 {
            for delta in 0..=n - 2 {
                let gen = local_generator(&sym_params(n, delta));
                for row in 0..16 {
                    assert!(gen.row_sum(row).is_zero(), "n={n} delta={delta} row {row}");
                }
                for sites in [3usize, 4] {
                    let q0 = parse_rational("3/2").unwrap();
                    let params = AsepParams::new(q0, n, delta).unwrap();
                    let gen = multi_site_generator(&params, sites, DEFAULT_SITE_CAP).unwrap();
                    for row in 0..gen.dim() {
                        assert!(
                            Scalar::is_zero(&gen.row_sum(row)),
                            "n={n} delta={delta} L={sites} row {row}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn communicating_class_census() {
        let gen = local_generator(&sym_params(5, 2));
        let blocks = gen.communicating_blocks();
        let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 1, 2, 2, 2, 2, 4]);
        assert!(blocks.contains(&vec![0, 1, 2, 3]));
        assert!(blocks.contains(&vec![4, 5]));
        assert!(blocks.contains(&vec![12]));
    }

    #[test]
    fn particle_counts_are_conserved() {
        let params = AsepParams::new(parse_rational("2").unwrap(), 4, 2).unwrap();
        let gen = multi_site_generator(&params, 3, DEFAULT_SITE_CAP).unwrap();
        for (r, c, v) in gen.triplets() {
            if r == c || Scalar::is_zero(v) {
                continue;
            }
            let from = &gen.basis()[r];
            let to = &gen.basis()[c];
            assert_eq!(from.species_count(1), to.species_count(1), "{from:?} -> {to:?}");
            assert_eq!(from.species_count(2), to.species_count(2), "{from:?} -> {to:?}");
        }
    }

    #[test]
    fn two_site_multi_generator_is_local_reordered() {
        let params = sym_params(3, 1);
        let local = local_generator(&params);
        let multi = multi_site_generator(&params, 2, DEFAULT_SITE_CAP).unwrap();
        // map paper-order index -> lex index and compare entrywise
        let to_lex: Vec<usize> = local.basis().iter().map(|c| c.lex_index()).collect();
        for r in 0..16 {
            for c in 0..16 {
                assert_eq!(local.get(r, c), multi.get(to_lex[r], to_lex[c]), "({r},{c})");
            }
        }
    }

    #[test]
    fn three_site_embedding_matches_kronecker_oracle() {
        // independent route: permute the 16x16 to the lex basis, then embed
        // as L (x) I + I (x) L on three sites
        let q0 = parse_rational("5/3").unwrap();
        let params = AsepParams::new(q0, 3, 0).unwrap();
        let local = local_generator(&params);
        let mut lex16 = vec![vec![<BigRational as Scalar>::zero(); 16]; 16];
        let to_lex: Vec<usize> = local.basis().iter().map(|c| c.lex_index()).collect();
        for r in 0..16 {
            for c in 0..16 {
                lex16[to_lex[r]][to_lex[c]] = local.get(r, c);
            }
        }
        let multi = multi_site_generator(&params, 3, DEFAULT_SITE_CAP).unwrap();
        for row in 0..64 {
            for col in 0..64 {
                // L^{1,2} entry: acts on (a,b), identity on c
                let (ra, rb, rc) = (row / 16, (row / 4) % 4, row % 4);
                let (ca, cb, cc) = (col / 16, (col / 4) % 4, col % 4);
                let mut expected = <BigRational as Scalar>::zero();
                if rc == cc {
                    expected = expected.plus(&lex16[row / 4][col / 4]);
                }
                if ra == ca {
                    expected = expected.plus(&lex16[(rb * 4 + rc) as usize][(cb * 4 + cc) as usize]);
                }
                let _ = (ra, ca);
                assert_eq!(multi.get(row, col), expected, "({row},{col})");
            }
        }
        // spot check the embedded swap rates against the 2x2 block: the
        // rightward hop (1,0) -> (0,1) carries w/q, the reverse carries q w
        let from = Configuration(vec![1, 0, 0]).lex_index();
        let to = Configuration(vec![0, 1, 0]).lex_index();
        let q0 = parse_rational("5/3").unwrap();
        let w = q_power(&q0, -5).plus(&q_power(&q0, 5));
        assert_eq!(multi.get(from, to), w.divide(&q0));
        assert_eq!(multi.get(to, from), q0.times(&w));
    }

    #[test]
    fn positivity_scan_is_clean() {
        let grid: Vec<BigRational> = ["1/2", "3/4", "3/2", "2", "10"]
            .iter()
            .map(|t| parse_rational(t).unwrap())
            .collect();
        for (n, delta) in [(5usize, 0usize), (5, 3), (2, 0), (6, 4)] {
            let report = rate_positivity_scan(n, delta, 2, &grid).unwrap();
            assert!(report.all_nonnegative(), "n={n} delta={delta}: {:?}", report.violations);
            assert_eq!(report.minima.len(), grid.len());
        }
    }

    #[test]
    fn dimension_overflow_guard() {
        let params = AsepParams::new(parse_rational("2").unwrap(), 3, 0).unwrap();
        assert!(matches!(
            multi_site_generator(&params, 11, DEFAULT_SITE_CAP),
            Err(AsepError::DimensionOverflow { .. })
        ));
    }
}
