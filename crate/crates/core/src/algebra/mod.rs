//! The quantum group U_q(so(2n)) as a free word algebra.
//!
//! Words in the generator symbols {E_i, F_i, K_i^b} carry no normal form;
//! relations only ever enter through representation evaluation and through
//! the bilinear pairing between the two Borel halves. Linear combinations are
//! kept in coefficient maps with no stored zeros.

mod eval;
mod pairing;

pub use eval::{
    delta_symbol_matrix, evaluate, evaluate_coproduct, evaluate_in_power, evaluate_tensor,
    evaluate_word,
};
pub use pairing::PairingCtx;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact::Scalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("pairing requires an F/K word on the left and an E/K word on the right")]
    MixedBorelInput,
    #[error("invalid generator symbol `{0}`")]
    BadSymbol(String),
}

/// A generator symbol. K symbols carry a nonzero integer power so that
/// Cartan products stay one symbol per index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenSymbol {
    E(u8),
    F(u8),
    K { index: u8, power: i32 },
}

impl GenSymbol {
    pub fn k(index: u8, power: i32) -> Self {
        assert!(power != 0, "K symbols carry nonzero powers");
        GenSymbol::K { index, power }
    }

    pub fn index(&self) -> u8 {
        match self {
            GenSymbol::E(i) | GenSymbol::F(i) => *i,
            GenSymbol::K { index, .. } => *index,
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSymbol::E(i) => write!(f, "E{i}"),
            GenSymbol::F(i) => write!(f, "F{i}"),
            GenSymbol::K { index, power: 1 } => write!(f, "K{index}"),
            GenSymbol::K { index, power } => write!(f, "K{index}^{power}"),
        }
    }
}

/// Parses "E3", "F5", "K2", "K2^-1".
pub fn parse_symbol(text: &str) -> Result<GenSymbol, AlgebraError> {
    let bad = || AlgebraError::BadSymbol(text.to_owned());
    let mut chars = text.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    match kind {
        'E' | 'F' => {
            let index: u8 = rest.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            Ok(if kind == 'E' { GenSymbol::E(index) } else { GenSymbol::F(index) })
        }
        'K' => {
            let (idx_str, pow_str) = match rest.split_once('^') {
                Some((i, p)) => (i, p),
                None => (rest, "1"),
            };
            let index: u8 = idx_str.parse().map_err(|_| bad())?;
            let power: i32 = pow_str.parse().map_err(|_| bad())?;
            if index == 0 || power == 0 {
                return Err(bad());
            }
            Ok(GenSymbol::K { index, power })
        }
        _ => Err(bad()),
    }
}

/// An ordered sequence of generator symbols; the leftmost symbol acts last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<GenSymbol>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(symbols: Vec<GenSymbol>) -> Self {
        Self(symbols)
    }

    pub fn single(symbol: GenSymbol) -> Self {
        Self(vec![symbol])
    }

    /// E_{x_1} E_{x_2} ... E_{x_k} from index shorthand.
    pub fn e_word(indices: &[u8]) -> Self {
        Self(indices.iter().map(|&i| GenSymbol::E(i)).collect())
    }

    pub fn f_word(indices: &[u8]) -> Self {
        Self(indices.iter().map(|&i| GenSymbol::F(i)).collect())
    }

    /// K_1^{c_1} ... K_n^{c_n}, skipping zero exponents.
    pub fn k_word(exponents: &[i64]) -> Self {
        Self(
            exponents
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| GenSymbol::k((i + 1) as u8, c as i32))
                .collect(),
        )
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&rhs.0);
        Word(symbols)
    }

    /// Swaps E and F symbols, keeping index order; K symbols are unchanged.
    pub fn mirror(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|s| match *s {
                    GenSymbol::E(i) => GenSymbol::F(i),
                    GenSymbol::F(i) => GenSymbol::E(i),
                    k => k,
                })
                .collect(),
        )
    }

    pub fn is_ek_word(&self) -> bool {
        self.0.iter().all(|s| !matches!(s, GenSymbol::F(_)))
    }

    pub fn is_fk_word(&self) -> bool {
        self.0.iter().all(|s| !matches!(s, GenSymbol::E(_)))
    }

    pub fn has_ef(&self) -> bool {
        self.0
            .iter()
            .any(|s| matches!(s, GenSymbol::E(_) | GenSymbol::F(_)))
    }

    /// Indices of E symbols, in order.
    pub fn e_indices(&self) -> Vec<u8> {
        self.0
            .iter()
            .filter_map(|s| match s {
                GenSymbol::E(i) => Some(*i),
                _ => None,
            })
            .collect()
    }

    pub fn f_indices(&self) -> Vec<u8> {
        self.0
            .iter()
            .filter_map(|s| match s {
                GenSymbol::F(i) => Some(*i),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A finite linear combination of words with scalar coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<S> {
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// The identity element (empty word, coefficient 1).
    pub fn one() -> Self {
        Self::from_word(Word::empty(), S::one())
    }

    pub fn from_word(word: Word, coeff: S) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Self { terms }
    }

    pub fn add_term(&mut self, word: Word, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().plus(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> S {
        self.terms.get(word).cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.negate());
        }
        out
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.times(factor)))
                .collect(),
        }
    }

    /// Free product: words concatenate, coefficients multiply.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in rhs.terms() {
                out.add_term(w1.concat(w2), c1.times(c2));
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> AlgebraElement<T> {
        let mut out = AlgebraElement::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {w}")?;
        }
        Ok(())
    }
}

/// A linear combination of pairs of words: the coproduct's codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement<S> {
    terms: BTreeMap<(Word, Word), S>,
}

impl<S: Scalar> TensorElement<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(Word::empty(), Word::empty(), S::one());
        t
    }

    pub fn add_term(&mut self, left: Word, right: Word, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let key = (left, right);
        let cur = self.terms.remove(&key).unwrap_or_else(S::zero);
        let sum = cur.plus(&coeff);
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> S {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Componentwise product in U (x) U.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in rhs.terms() {
                out.add_term(a1.concat(a2), b1.concat(b2), c1.times(c2));
            }
        }
        out
    }
}

/// The coproduct summands of a single generator, as (left, right) word pairs.
pub(crate) fn symbol_coproduct(symbol: GenSymbol) -> Vec<(Word, Word)> {
    match symbol {
        GenSymbol::E(i) => vec![
            (Word::single(GenSymbol::E(i)), Word::empty()),
            (Word::single(GenSymbol::k(i, 1)), Word::single(GenSymbol::E(i))),
        ],
        GenSymbol::F(i) => vec![
            (Word::empty(), Word::single(GenSymbol::F(i))),
            (Word::single(GenSymbol::F(i)), Word::single(GenSymbol::k(i, -1))),
        ],
        GenSymbol::K { index, power } => {
            let k = Word::single(GenSymbol::k(index, power));
            vec![(k.clone(), k)]
        }
    }
}

/// The coproduct as an algebra homomorphism, fully expanded into the
/// pair-of-words basis.
pub fn coproduct<S: Scalar>(x: &AlgebraElement<S>) -> TensorElement<S> {
    let mut out = TensorElement::zero();
    for (word, coeff) in x.terms() {
        let mut acc: TensorElement<S> = TensorElement::one();
        for &symbol in word.symbols() {
            let mut next = TensorElement::zero();
            for ((a1, b1), c) in acc.terms() {
                for (a2, b2) in symbol_coproduct(symbol) {
                    next.add_term(a1.concat(&a2), b1.concat(&b2), c.clone());
                }
            }
            acc = next;
        }
        for ((a, b), c) in acc.terms() {
            out.add_term(a.clone(), b.clone(), coeff.times(c));
        }
    }
    out
}
