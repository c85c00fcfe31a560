//! Static data of so(2n) and its fundamental representation: generator
//! matrices, Cartan matrix, roots and weights, rho-pairings, and the
//! Cartan-exponent bookkeeping behind products of K generators.
//!
//! Weights live in the L-basis as integer vectors of length n; the weight
//! order is L_1 > ... > L_n = -L_n > ... > -L_1, realized as positions
//! 1..2n with +L_i at position i and -L_i at position 2n+1-i.

use thiserror::Error;

use crate::exact::{q_power, Scalar, SparseMat};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("weight {0:?} is not in the root lattice of so(2n)")]
    NotInRootLattice(Vec<i64>),
}

/// The rank n of so(2n); at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieRank(usize);

impl LieRank {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "so(2n) requires n >= 2");
        Self(n)
    }

    pub fn n(&self) -> usize {
        self.0
    }

    /// Dimension 2n of the fundamental representation.
    pub fn dim(&self) -> usize {
        2 * self.0
    }
}

/// One of the fundamental weights ±L_index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightLabel {
    pub index: usize,
    pub sign: i8,
}

impl WeightLabel {
    pub fn positive(index: usize) -> Self {
        Self { index, sign: 1 }
    }

    pub fn negative(index: usize) -> Self {
        Self { index, sign: -1 }
    }

    /// Position in the total order: +L_i at i, -L_i at 2n+1-i.
    pub fn position(&self, rank: LieRank) -> usize {
        if self.sign > 0 {
            self.index
        } else {
            2 * rank.n() + 1 - self.index
        }
    }

    pub fn from_position(pos: usize, rank: LieRank) -> Self {
        let n = rank.n();
        assert!((1..=2 * n).contains(&pos), "position out of range");
        if pos <= n {
            Self::positive(pos)
        } else {
            Self::negative(2 * n + 1 - pos)
        }
    }

    /// Integer vector in the L-basis.
    pub fn l_vector(&self, rank: LieRank) -> Vec<i64> {
        let mut v = vec![0i64; rank.n()];
        v[self.index - 1] = self.sign as i64;
        v
    }
}

impl std::fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}L{}", if self.sign > 0 { "+" } else { "-" }, self.index)
    }
}

/// Entry of the D_n Cartan matrix.
pub fn cartan_entry(i: usize, j: usize, rank: LieRank) -> i64 {
    let n = rank.n();
    assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    if i == j {
        return 2;
    }
    let (a, b) = (i.min(j), i.max(j));
    let adjacent_chain = b == a + 1 && a <= n - 2;
    let fork = a == n - 2 && b == n;
    if adjacent_chain || fork {
        -1
    } else {
        0
    }
}

/// Simple root alpha_i in the L-basis: L_i - L_{i+1} for i < n, L_{n-1} + L_n
/// for i = n.
pub fn simple_root(i: usize, rank: LieRank) -> Vec<i64> {
    let n = rank.n();
    assert!((1..=n).contains(&i));
    let mut v = vec![0i64; n];
    if i < n {
        v[i - 1] = 1;
        v[i] = -1;
    } else {
        v[n - 2] = 1;
        v[n - 1] = 1;
    }
    v
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Half the sum of the positive roots, in the L-basis: (n-1, n-2, ..., 1, 0).
pub fn rho_vector(rank: LieRank) -> Vec<i64> {
    let n = rank.n() as i64;
    (0..rank.n()).map(|i| n - 1 - i as i64).collect()
}

/// Coordinate (0-based) of the single 1 in the weight vector v_k.
pub fn weight_vector_coord(k: usize, rank: LieRank) -> usize {
    let n = rank.n();
    assert!((1..=2 * n).contains(&k));
    if k <= n {
        k - 1
    } else {
        3 * n - k
    }
}

/// The basis vector v_k of length 2n.
pub fn weight_vector(k: usize, rank: LieRank) -> Vec<i64> {
    let mut v = vec![0i64; rank.dim()];
    v[weight_vector_coord(k, rank)] = 1;
    v
}

/// Weight of v_k: +L_k for k <= n, -L_{2n+1-k} otherwise.
pub fn weight_of_vector(k: usize, rank: LieRank) -> WeightLabel {
    let n = rank.n();
    assert!((1..=2 * n).contains(&k));
    if k <= n {
        WeightLabel::positive(k)
    } else {
        WeightLabel::negative(2 * n + 1 - k)
    }
}

/// Weight of the coordinate basis vector e_c (0-based c): L_{c+1} for c < n,
/// -L_{c+1-n} otherwise.
pub fn coord_weight(c: usize, rank: LieRank) -> WeightLabel {
    let n = rank.n();
    assert!(c < 2 * n);
    if c < n {
        WeightLabel::positive(c + 1)
    } else {
        WeightLabel::negative(c + 1 - n)
    }
}

/// q^{(-2 rho, mu)}: q^{2i-2n} for mu = L_i, q^{2n-2i} for mu = -L_i.
pub fn rho_factor<S: Scalar>(mu: WeightLabel, rank: LieRank, q: &S) -> S {
    let n = rank.n() as i64;
    let i = mu.index as i64;
    let exp = if mu.sign > 0 { 2 * i - 2 * n } else { 2 * n - 2 * i };
    q_power(q, exp)
}

/// q^{(mu - lambda, mu)}: q^2 when lambda = -mu, 1 when lambda = mu, q
/// otherwise. Requires mu >= lambda in the weight order.
pub fn mu_lambda_factor<S: Scalar>(mu: WeightLabel, lam: WeightLabel, q: &S) -> S {
    if lam == mu {
        S::one()
    } else if lam.index == mu.index && lam.sign == -mu.sign {
        q_power(q, 2)
    } else {
        q.clone()
    }
}

/// Integer exponents c with H_w = sum_k c_k H_k, for w in the root lattice
/// (an integer L-basis vector with even coordinate sum).
pub fn cartan_exponents(w: &[i64], rank: LieRank) -> Result<Vec<i64>, LieError> {
    let n = rank.n();
    assert_eq!(w.len(), n, "weight vector must have length n");
    if w.iter().sum::<i64>() % 2 != 0 {
        return Err(LieError::NotInRootLattice(w.to_vec()));
    }
    let mut c = vec![0i64; n];
    let mut partial = 0i64;
    for i in 0..n.saturating_sub(2) {
        partial += w[i];
        c[i] = partial;
    }
    let s: i64 = w[..n - 1].iter().sum();
    c[n - 2] = (s - w[n - 1]) / 2;
    c[n - 1] = (s + w[n - 1]) / 2;
    Ok(c)
}

/// The fundamental representation of U_q(so(2n)) over a scalar image of q.
///
/// E_i and F_i have two nonzero entries (&plusmn;1); H_i is an integer diagonal, and
/// K_i^b = q^{b H_i} is exact because H_i has entries in {-1, 0, 1}.
#[derive(Debug, Clone)]
pub struct Rep<S: Scalar> {
    rank: LieRank,
    q: S,
    e: Vec<SparseMat<S>>,
    f: Vec<SparseMat<S>>,
    h: Vec<Vec<i64>>,
}

impl<S: Scalar> Rep<S> {
    pub fn new(rank: LieRank, q: S) -> Self {
        let n = rank.n();
        let dim = rank.dim();
        let mut e = Vec::with_capacity(n);
        let mut f = Vec::with_capacity(n);
        let mut h = Vec::with_capacity(n);
        for i in 1..=n {
            let mut ei = SparseMat::zeros(dim, dim);
            let mut fi = SparseMat::zeros(dim, dim);
            let mut hi = vec![0i64; dim];
            if i < n {
                ei.insert(i - 1, i, S::one());
                ei.insert(n + i, n + i - 1, S::one().negate());
                fi.insert(i, i - 1, S::one());
                fi.insert(n + i - 1, n + i, S::one().negate());
                hi[i - 1] = 1;
                hi[i] = -1;
                hi[n + i - 1] = -1;
                hi[n + i] = 1;
            } else {
                ei.insert(n - 2, 2 * n - 1, S::one());
                ei.insert(n - 1, 2 * n - 2, S::one().negate());
                fi.insert(2 * n - 2, n - 1, S::one());
                fi.insert(2 * n - 1, n - 2, S::one().negate());
                hi[n - 2] = 1;
                hi[n - 1] = 1;
                hi[2 * n - 2] = -1;
                hi[2 * n - 1] = -1;
            }
            e.push(ei);
            f.push(fi);
            h.push(hi);
        }
        Self { rank, q, e, f, h }
    }

    pub fn rank(&self) -> LieRank {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rank.dim()
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn e(&self, i: usize) -> &SparseMat<S> {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &SparseMat<S> {
        &self.f[i - 1]
    }

    pub fn h_diag(&self, i: usize) -> &[i64] {
        &self.h[i - 1]
    }

    /// K_i^power = q^{power * H_i} as a diagonal matrix.
    pub fn k_pow(&self, i: usize, power: i64) -> SparseMat<S> {
        let dim = self.dim();
        let mut m = SparseMat::zeros(dim, dim);
        for (j, &hj) in self.h[i - 1].iter().enumerate() {
            m.insert(j, j, q_power(&self.q, power * hj));
        }
        m
    }

    pub fn k(&self, i: usize) -> SparseMat<S> {
        self.k_pow(i, 1)
    }

    /// Diagonal matrix q^{sum_k c_k H_k}.
    pub fn k_from_exponents(&self, exponents: &[i64]) -> SparseMat<S> {
        let dim = self.dim();
        let mut m = SparseMat::zeros(dim, dim);
        for j in 0..dim {
            let total: i64 = exponents.iter().zip(&self.h).map(|(c, hi)| c * hi[j]).sum();
            m.insert(j, j, q_power(&self.q, total));
        }
        m
    }
}
