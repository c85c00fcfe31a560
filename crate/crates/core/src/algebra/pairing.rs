//! The bilinear pairing between the two Borel halves.
//!
//! Generator values: <F_i, E_j> = -delta_ij / (q - 1/q) and
//! <q^{H_a}, q^{H_b}> = q^{-(a.b)}; everything else between generators is
//! zero. Products reduce through the coproduct: <y, x x'> = <Delta(y), x' (x) x>
//! (note the swap) and <y y', x> = <y (x) y', Delta(x)>.
//!
//! The recursion peels one symbol off the E-side word per step. Splitting
//! Delta(y) is cheap because grading kills every term whose right slot does
//! not carry exactly the F-content matched by the peeled symbol; what remains
//! is a sum over positions of matching F's in y, each with a q-power prefix
//! from the K's and skipped F's standing in front of it.
//!
//! Pairings recur heavily across permutation spans, so results are memoized
//! in a concurrent map keyed by the word pair; this cache is the only shared
//! mutable state in the crate.

use dashmap::DashMap;

use crate::exact::{q_power, Scalar};
use crate::lie::{cartan_entry, LieRank};

use super::{AlgebraElement, AlgebraError, GenSymbol, Word};

pub struct PairingCtx<S: Scalar> {
    rank: LieRank,
    q: S,
    /// <F_i, E_i> = -1/(q - 1/q).
    minus_inv_r: S,
    cache: DashMap<(Word, Word), S>,
}

impl<S: Scalar> PairingCtx<S> {
    pub fn new(rank: LieRank, q: S) -> Self {
        let r = q.minus(&q.recip());
        assert!(
            !r.is_zero(),
            "the pairing is singular at q = +/-1; pick a different point"
        );
        Self {
            rank,
            minus_inv_r: S::one().negate().divide(&r),
            q,
            cache: DashMap::new(),
        }
    }

    pub fn rank(&self) -> LieRank {
        self.rank
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }


    /// <y, x> for words: y over {F, K}, x over {E, K}.
    pub fn pairing(&self, y: &Word, x: &Word) -> Result<S, AlgebraError> {
        if !y.is_fk_word() || !x.is_ek_word() {
            return Err(AlgebraError::MixedBorelInput);
        }
        let n = self.rank.n() as u8;
        let in_range = |w: &Word| w.symbols().iter().all(|s| (1..=n).contains(&s.index()));
        if !in_range(y) || !in_range(x) {
            return Err(AlgebraError::BadSymbol(format!(
                "generator index out of range for rank {}",
                self.rank.n()
            )));
        }
        Ok(self.pair_words(y, x.symbols()))
    }

    /// Bilinear extension to linear combinations.
    pub fn pairing_elements(
        &self,
        y: &AlgebraElement<S>,
        x: &AlgebraElement<S>,
    ) -> Result<S, AlgebraError> {
        let mut acc = S::zero();
        for (wy, cy) in y.terms() {
            for (wx, cx) in x.terms() {
                let p = self.pairing(wy, wx)?;
                if !p.is_zero() {
                    acc = acc.plus(&cy.times(cx).times(&p));
                }
            }
        }
        Ok(acc)
    }

    fn cartan(&self, i: u8, j: u8) -> i64 {
        cartan_entry(i as usize, j as usize, self.rank)
    }

    fn pair_words(&self, y: &Word, x: &[GenSymbol]) -> S {
        if x.is_empty() {
            // <pure-K word, 1> = 1; anything with an F pairs to zero
            return if y.has_ef() { S::zero() } else { S::one() };
        }
        // Grading: the F-index multiset of y must equal the E-index multiset
        // of x (simple roots are a basis of the root lattice).
        let mut fy = y.f_indices();
        let mut ex: Vec<u8> = x
            .iter()
            .filter_map(|s| match s {
                GenSymbol::E(i) => Some(*i),
                _ => None,
            })
            .collect();
        fy.sort_unstable();
        ex.sort_unstable();
        if fy != ex {
            return S::zero();
        }

        let key = (y.clone(), Word::new(x.to_vec()));
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }

        let rest = &x[1..];
        let value = match x[0] {
            GenSymbol::E(j) => {
                // <y, E_j w> = <Delta(y), w (x) E_j>: pick which F_j of y
                // lands in the right slot; symbols in front of it contribute
                // <., K_j> factors, symbols behind pair with 1.
                let mut acc = S::zero();
                let mut prefix_exp = 0i64;
                for (p, sym) in y.symbols().iter().enumerate() {
                    match *sym {
                        GenSymbol::F(i) => {
                            if i == j {
                                let mut remaining = y.symbols().to_vec();
                                remaining.remove(p);
                                let sub = self.pair_words(&Word::new(remaining), rest);
                                if !sub.is_zero() {
                                    let factor =
                                        q_power(&self.q, prefix_exp).times(&self.minus_inv_r);
                                    acc = acc.plus(&factor.times(&sub));
                                }
                            }
                            // an F_i passed over sits as K_i^-1 in the right slot
                            prefix_exp += self.cartan(i, j);
                        }
                        GenSymbol::K { index, power } => {
                            prefix_exp -= power as i64 * self.cartan(index, j);
                        }
                        GenSymbol::E(_) => unreachable!("validated F/K word"),
                    }
                }
                acc
            }
            GenSymbol::K { index: j, power: b } => {
                // all F's of y go left; the right slot is the K-image of y
                let mut exp = 0i64;
                for sym in y.symbols() {
                    match *sym {
                        GenSymbol::F(i) => exp -= self.cartan(i, j),
                        GenSymbol::K { index, power } => exp += power as i64 * self.cartan(index, j),
                        GenSymbol::E(_) => unreachable!("validated F/K word"),
                    }
                }
                let factor = q_power(&self.q, -(b as i64) * exp);
                factor.times(&self.pair_words(y, rest))
            }
            GenSymbol::F(_) => unreachable!("validated E/K word"),
        };
        self.cache.insert(key, value.clone());
        value
    }
}
