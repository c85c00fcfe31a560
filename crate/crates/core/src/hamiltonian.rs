//! From central element to Markov generator: the quantum Hamiltonian
//! H = (rho (x) rho)(Delta(C)), its zero-eigenvalue shift, block structure,
//! ground states, and the conjugation-prune-rescale step that recovers the
//! two-site exclusion generator.

use thiserror::Error;

use crate::algebra::{evaluate_coproduct, AlgebraElement};
use crate::asep::{local_generator, AsepError, AsepParams};
use crate::exact::{q_power, FieldSolve, Mat, Scalar, SparseMat};
use crate::lie::{LieRank, Rep};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HamiltonianError {
    #[error("kernel of the interaction block has dimension {got}, expected {expected}")]
    WrongKernelDimension { expected: usize, got: usize },
    #[error("unexpected structure: {0}")]
    UnexpectedStructure(String),
    #[error(transparent)]
    Asep(#[from] AsepError),
}

/// A zero eigenvector of the interaction block in staircase form: support
/// {n-1-d, n-d, 2n-1-d, 2n-d} (1-based) carrying (-q^2, q, -1, q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundState<S> {
    pub delta: usize,
    /// coefficients over the interaction-block basis, length 2n
    pub vector: Vec<S>,
    /// the four nonzero positions, ascending (0-based)
    pub support: [usize; 4],
}

/// Everything the downstream checks need from one Hamiltonian run.
#[derive(Debug, Clone)]
pub struct HamiltonianReport<S> {
    pub lambda: S,
    /// connected blocks of the shifted Hamiltonian, ordered by first index
    pub blocks: Vec<Vec<usize>>,
    /// index set of the 2n x 2n interaction block (ascending)
    pub big_indices: Vec<usize>,
    pub big_block: Mat<S>,
    pub big_rank: usize,
    pub ground_states: Vec<GroundState<S>>,
    /// 4x4 conjugated-pruned generators, one per ground state
    pub pruned: Vec<Mat<S>>,
    /// exact-match flags of pruned blocks against the directly built
    /// generator with the same (q, n, delta)
    pub asep_matches: Vec<bool>,
    pub two_by_two_all_match: bool,
    pub one_by_one_all_zero: bool,
}

/// H = (rho (x) rho)(Delta(C)) and its shift by the ground eigenvalue.
///
/// Lambda is read off the e_1 (x) e_1 diagonal entry, which sits in a 1x1
/// block of its own; for n = 5 it reproduces the published eigenvalue.
pub fn build_hamiltonian<S: Scalar>(
    c: &AlgebraElement<S>,
    rep: &Rep<S>,
) -> (SparseMat<S>, SparseMat<S>, S) {
    let h = evaluate_coproduct(c, rep);
    let lambda = h.get(0, 0);
    let dim = rep.dim() * rep.dim();
    let shift = SparseMat::identity(dim).scale(&lambda.negate());
    let h_hat = h.add(&shift);
    (h, h_hat, lambda)
}

/// Tensor-basis indices of the states e_i (x) e_{n+i} and e_{n+i} (x) e_i,
/// the block on which the two-particle interaction lives.
pub fn interaction_indices(rank: LieRank) -> Vec<usize> {
    let n = rank.n();
    let dim = rank.dim();
    let mut idx: Vec<usize> = (0..n).map(|i| i * dim + (n + i)).collect();
    idx.extend((0..n).map(|i| (n + i) * dim + i));
    idx
}

/// Restriction of a sparse matrix to an index set, as a dense matrix.
pub fn restrict<S: Scalar>(m: &SparseMat<S>, indices: &[usize]) -> Mat<S> {
    Mat::from_fn(indices.len(), indices.len(), |r, c| m.get(indices[r], indices[c]))
}

/// Nullspace of the interaction block, canonicalized to the staircase
/// ground states g_0 .. g_{n-2}.
pub fn ground_states<S: FieldSolve>(
    big_block: &Mat<S>,
    rank: LieRank,
    q: &S,
) -> Result<Vec<GroundState<S>>, HamiltonianError> {
    let n = rank.n();
    let kernel = S::matrix_nullspace(big_block);
    if kernel.len() != n - 1 {
        return Err(HamiltonianError::WrongKernelDimension {
            expected: n - 1,
            got: kernel.len(),
        });
    }
    let dim = 2 * n;
    let mut out = Vec::with_capacity(n - 1);
    for delta in 0..n - 1 {
        let support = [n - 2 - delta, n - 1 - delta, 2 * n - 2 - delta, 2 * n - 1 - delta];
        // combination of kernel vectors vanishing off the support
        let outside: Vec<usize> = (0..dim).filter(|i| !support.contains(i)).collect();
        let constraint = Mat::from_fn(outside.len(), kernel.len(), |r, c| kernel[c][outside[r]].clone());
        let combos = S::matrix_nullspace(&constraint);
        if combos.len() != 1 {
            return Err(HamiltonianError::UnexpectedStructure(format!(
                "staircase support for delta = {delta} admits {} kernel combinations, expected 1",
                combos.len()
            )));
        }
        let mut vector = vec![S::zero(); dim];
        for (kv, coeff) in kernel.iter().zip(&combos[0]) {
            if coeff.is_zero() {
                continue;
            }
            for (slot, value) in vector.iter_mut().zip(kv) {
                *slot = slot.plus(&coeff.times(value));
            }
        }
        // normalize the second support entry to q
        let pivot = vector[support[1]].clone();
        if pivot.is_zero() {
            return Err(HamiltonianError::UnexpectedStructure(format!(
                "ground state for delta = {delta} vanishes at its staircase pivot"
            )));
        }
        let scale = q.divide(&pivot);
        for slot in vector.iter_mut() {
            *slot = slot.times(&scale);
        }
        let expected = [
            q.times(q).negate(),
            q.clone(),
            S::one().negate(),
            q.clone(),
        ];
        for (pos, want) in support.iter().zip(&expected) {
            if &vector[*pos] != want {
                return Err(HamiltonianError::UnexpectedStructure(format!(
                    "ground state for delta = {delta} deviates from the (-q^2, q, -1, q) pattern at {pos}"
                )));
            }
        }
        out.push(GroundState { delta, vector, support });
    }
    Ok(out)
}

/// Support-restricted ground-state conjugation: entries
/// block[s_i, s_j] g[s_j] / g[s_i], divided by r^2 = (q - 1/q)^2.
///
/// Restricting to the support is the finite reading of "remove the rows with
/// infinities and the columns with zeros" from the conjugated block.
pub fn conjugate_prune<S: Scalar>(big_block: &Mat<S>, g: &GroundState<S>, q: &S) -> Mat<S> {
    let r = q.minus(&q.recip());
    let r2 = r.times(&r);
    Mat::from_fn(4, 4, |i, j| {
        let (si, sj) = (g.support[i], g.support[j]);
        big_block
            .get(si, sj)
            .times(&g.vector[sj])
            .divide(&g.vector[si])
            .divide(&r2)
    })
}

/// Exact comparison of a pruned 4x4 block against the interacting block of
/// the directly built generator with parameters (q, n, delta).
pub fn match_asep<S: Scalar>(l_tilde: &Mat<S>, q: &S, n: usize, delta: usize) -> Result<bool, AsepError> {
    let params = AsepParams::new(q.clone(), n, delta)?;
    let gen = local_generator(&params);
    for i in 0..4 {
        for j in 0..4 {
            if l_tilde.get(i, j) != &gen.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff conjugating the 2x2 block by diag(q, 1) (in either orientation
/// of the two states) gives r^2 times the swap block of the generator.
pub fn match_two_by_two<S: Scalar>(block: &Mat<S>, q: &S, n: usize) -> bool {
    assert_eq!((block.rows(), block.cols()), (2, 2));
    let r = q.minus(&q.recip());
    let r2 = r.times(&r);
    let w = q_power(q, 1 - 2 * n as i64).plus(&q_power(q, 2 * n as i64 - 1));
    let z = r2.times(&w);
    let slow = z.divide(q).negate();
    let fast = z.times(q).negate();
    let matches = |a: &S, d: &S| -> bool {
        block.get(0, 1) == &z && block.get(1, 0) == &z && block.get(0, 0) == a && block.get(1, 1) == d
    };
    matches(&slow, &fast) || matches(&fast, &slow)
}

/// Runs the whole extraction for one central element and verifies the block
/// census on the way.
pub fn analyze<S: FieldSolve>(
    c: &AlgebraElement<S>,
    rep: &Rep<S>,
) -> Result<HamiltonianReport<S>, HamiltonianError> {
    let rank = rep.rank();
    let n = rank.n();
    let dim = rank.dim() * rank.dim();
    let (_, h_hat, lambda) = build_hamiltonian(c, rep);
    // census: connected components of the off-diagonal pattern
    let blocks = block_decomposition(&h_hat);
    let big_indices = interaction_indices(rank);
    let mut sorted_big = big_indices.clone();
    sorted_big.sort_unstable();
    let big = blocks
        .iter()
        .find(|b| b.len() == 2 * n)
        .ok_or_else(|| HamiltonianError::UnexpectedStructure("no 2n-state block found".into()))?;
    if big != &sorted_big {
        return Err(HamiltonianError::UnexpectedStructure(
            "the 2n-state block is not the paired-coordinate set".into(),
        ));
    }
    let mut one_by_one_all_zero = true;
    let mut two_by_two_all_match = true;
    for block in &blocks {
        match block.len() {
            1 => {
                if !h_hat.get(block[0], block[0]).is_zero() {
                    one_by_one_all_zero = false;
                }
            }
            2 => {
                let m = restrict(&h_hat, block);
                if !match_two_by_two(&m, rep.q(), n) {
                    two_by_two_all_match = false;
                }
            }
            len if len == 2 * n => {}
            len => {
                return Err(HamiltonianError::UnexpectedStructure(format!(
                    "unexpected block of size {len}"
                )))
            }
        }
    }
    let expected_blocks = 2 * n + (dim - 4 * n) / 2 + 1;
    if blocks.len() != expected_blocks {
        return Err(HamiltonianError::UnexpectedStructure(format!(
            "found {} blocks, expected {expected_blocks}",
            blocks.len()
        )));
    }
    // the interaction block, in the staircase basis order
    let big_block = restrict(&h_hat, &big_indices);
    let big_rank = S::matrix_rank(&big_block);
    let states = ground_states(&big_block, rank, rep.q())?;
    let mut pruned = Vec::with_capacity(states.len());
    let mut asep_matches = Vec::with_capacity(states.len());
    for g in &states {
        let l_tilde = conjugate_prune(&big_block, g, rep.q());
        asep_matches.push(match_asep(&l_tilde, rep.q(), n, g.delta)?);
        pruned.push(l_tilde);
    }
    Ok(HamiltonianReport {
        lambda,
        blocks,
        big_indices,
        big_block,
        big_rank,
        ground_states: states,
        pruned,
        asep_matches,
        two_by_two_all_match,
        one_by_one_all_zero,
    })
}

/// Connected components of the nonzero off-diagonal pattern, each sorted,
/// ordered by smallest member.
pub fn block_decomposition<S: Scalar>(m: &SparseMat<S>) -> Vec<Vec<usize>> {
    let dim = m.rows();
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut Vec<usize>, a: usize) -> usize {
        if parent[a] != a {
            let root = find(parent, parent[a]);
            parent[a] = root;
        }
        parent[a]
    }
    for row in 0..dim {
        for (col, _) in m.row_entries(row) {
            if *col != row {
                let (ra, rb) = (find(&mut parent, row), find(&mut parent, *col));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..dim {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}
