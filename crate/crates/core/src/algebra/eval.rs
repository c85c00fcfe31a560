//! Evaluation of algebra elements in the fundamental representation and in
//! its tensor square.
//!
//! Two independent routes compute the tensor action: [`evaluate_coproduct`]
//! multiplies per-symbol coproduct matrices directly, while
//! [`evaluate_tensor`] takes an explicitly expanded [`TensorElement`]. The
//! two must agree; the test suite holds them against each other.

use crate::exact::{Scalar, SparseMat};
use crate::lie::Rep;

use super::{AlgebraElement, GenSymbol, TensorElement, Word};

/// rho of a single symbol.
fn symbol_matrix<S: Scalar>(symbol: GenSymbol, rep: &Rep<S>) -> SparseMat<S> {
    match symbol {
        GenSymbol::E(i) => rep.e(i as usize).clone(),
        GenSymbol::F(i) => rep.f(i as usize).clone(),
        GenSymbol::K { index, power } => rep.k_pow(index as usize, power as i64),
    }
}

/// rho of a word: the product of symbol matrices, leftmost acting last.
pub fn evaluate_word<S: Scalar>(word: &Word, rep: &Rep<S>) -> SparseMat<S> {
    let mut out = SparseMat::identity(rep.dim());
    for &symbol in word.symbols() {
        out = out.mul(&symbol_matrix(symbol, rep));
    }
    out
}

/// rho of a linear combination of words.
pub fn evaluate<S: Scalar>(x: &AlgebraElement<S>, rep: &Rep<S>) -> SparseMat<S> {
    let dim = rep.dim();
    let mut out = SparseMat::zeros(dim, dim);
    for (word, coeff) in x.terms() {
        out = out.add(&evaluate_word(word, rep).scale(coeff));
    }
    out
}

/// (rho (x) rho) of Delta(symbol) on the tensor square, index (a, b) -> a*2n + b.
pub fn delta_symbol_matrix<S: Scalar>(symbol: GenSymbol, rep: &Rep<S>) -> SparseMat<S> {
    let id = SparseMat::identity(rep.dim());
    match symbol {
        GenSymbol::E(i) => {
            let e = rep.e(i as usize);
            e.kron(&id).add(&rep.k(i as usize).kron(e))
        }
        GenSymbol::F(i) => {
            let f = rep.f(i as usize);
            id.kron(f).add(&f.kron(&rep.k_pow(i as usize, -1)))
        }
        GenSymbol::K { index, power } => {
            let k = rep.k_pow(index as usize, power as i64);
            k.kron(&k)
        }
    }
}

/// (rho (x) rho)(Delta(x)) computed directly as products of per-symbol
/// coproduct matrices, without expanding Delta into word pairs.
pub fn evaluate_coproduct<S: Scalar>(x: &AlgebraElement<S>, rep: &Rep<S>) -> SparseMat<S> {
    let dim = rep.dim() * rep.dim();
    let mut out = SparseMat::zeros(dim, dim);
    for (word, coeff) in x.terms() {
        let mut m = SparseMat::identity(dim);
        for &symbol in word.symbols() {
            m = m.mul(&delta_symbol_matrix(symbol, rep));
        }
        out = out.add(&m.scale(coeff));
    }
    out
}

/// (rho (x) rho) of an explicit tensor element.
pub fn evaluate_tensor<S: Scalar>(x: &TensorElement<S>, rep: &Rep<S>) -> SparseMat<S> {
    let dim = rep.dim() * rep.dim();
    let mut out = SparseMat::zeros(dim, dim);
    for ((left, right), coeff) in x.terms() {
        let m = evaluate_word(left, rep).kron(&evaluate_word(right, rep));
        out = out.add(&m.scale(coeff));
    }
    out
}

/// Convenience wrapper matching the operation signature used by the pipeline:
/// tensor power 1 evaluates rho(x), tensor power 2 evaluates
/// (rho (x) rho)(Delta(x)).
pub fn evaluate_in_power<S: Scalar>(x: &AlgebraElement<S>, rep: &Rep<S>, tensor_power: u8) -> SparseMat<S> {
    match tensor_power {
        1 => evaluate(x, rep),
        2 => evaluate_coproduct(x, rep),
        _ => panic!("tensor power must be 1 or 2"),
    }
}




#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coproduct;
    use crate::exact::RationalFunction;
    use crate::lie::{weight_vector_coord, LieRank};

    fn rep5() -> Rep<RationalFunction> {
        Rep::new(LieRank::new(5), RationalFunction::q())
    }

    fn column(m: &SparseMat<RationalFunction>, c: usize) -> Vec<RationalFunction> {
        (0..m.rows()).map(|r| m.get(r, c)).collect()
    }

    #[test]
    fn word_actions_follow_the_diagram() {
        let rep = rep5();
        let r5 = LieRank::new(5);
        // F_1 v_1 = v_2
        let f1 = evaluate_word(&Word::f_word(&[1]), &rep);
        let col = column(&f1, weight_vector_coord(1, r5));
        assert!(col[weight_vector_coord(2, r5)].is_one());
        assert_eq!(col.iter().filter(|v| !v.is_zero()).count(), 1);
        // E_5 v_6 = v_4
        let e5 = evaluate_word(&Word::e_word(&[5]), &rep);
        let col = column(&e5, weight_vector_coord(6, r5));
        assert!(col[weight_vector_coord(4, r5)].is_one());
        // E_5 v_7 = -v_5
        let col = column(&e5, weight_vector_coord(7, r5));
        assert_eq!(col[weight_vector_coord(5, r5)], RationalFunction::from_int(-1));
    }

    #[test]
    fn longer_word_runs_the_path() {
        // -E3 E4 E5 E3 E2 sends v_9 to +v_3
        let rep = rep5();
        let r5 = LieRank::new(5);
        let e = AlgebraElement::from_word(
            Word::e_word(&[3, 4, 5, 3, 2]),
            RationalFunction::from_int(-1),
        );
        let m = evaluate(&e, &rep);
        let col = column(&m, weight_vector_coord(9, r5));
        assert!(col[weight_vector_coord(3, r5)].is_one());
        assert_eq!(col.iter().filter(|v| !v.is_zero()).count(), 1);
    }

    #[test]
    fn tensor_routes_agree_on_words() {
        // (rho (x) rho)(Delta(w)) via per-symbol products equals the fully
        // expanded coproduct evaluation, word by word.
        let rep = rep5();
        let words = [
            Word::e_word(&[1]),
            Word::f_word(&[2]),
            Word::new(vec![GenSymbol::k(3, -1)]),
            Word::e_word(&[4, 5]),
            Word::new(vec![GenSymbol::F(1), GenSymbol::k(1, 1), GenSymbol::E(2)]),
            Word::f_word(&[3, 4, 3]),
        ];
        for w in words {
            let x = AlgebraElement::from_word(w.clone(), RationalFunction::q_pow(2));
            let direct = evaluate_coproduct(&x, &rep);
            let expanded = evaluate_tensor(&coproduct(&x), &rep);
            assert_eq!(direct, expanded, "word {w}");
        }
    }

    #[test]
    fn tensor_routes_agree_on_combinations() {
        let rep = Rep::new(LieRank::new(3), RationalFunction::q());
        let mut x = AlgebraElement::from_word(Word::e_word(&[1, 2]), RationalFunction::q());
        x.add_term(Word::f_word(&[3]), RationalFunction::from_int(-2));
        x.add_term(Word::empty(), RationalFunction::q_pow(-3));
        let direct = evaluate_coproduct(&x, &rep);
        let expanded = evaluate_tensor(&coproduct(&x), &rep);
        assert_eq!(direct, expanded);
    }
}
