//! JSON formats for the exact types: Laurent polynomials as exponent maps
//! with "num/den" coefficient strings (keys in ascending exponent order),
//! rational functions as {"num", "den"} pairs, algebra elements as word/
//! coefficient lists, and generators as sparse triplets with their basis.
//!
//! Decoders accept untrusted input: they validate everything and never
//! panic. Numeric-mode coefficients serialize as plain rational strings and
//! deserialize into constant rational functions.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{parse_symbol, AlgebraElement, Word};
use crate::asep::{Configuration, GeneratorMatrix};
use crate::exact::{format_rational, parse_rational, BigRational, LaurentPoly, RationalFunction, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum JsonError {
    #[error("expected {expected} at {context}")]
    Shape { expected: &'static str, context: String },
    #[error("bad value at {context}: {detail}")]
    Value { context: String, detail: String },
}

fn shape(expected: &'static str, context: impl Into<String>) -> JsonError {
    JsonError::Shape { expected, context: context.into() }
}

fn bad(context: impl Into<String>, detail: impl Into<String>) -> JsonError {
    JsonError::Value { context: context.into(), detail: detail.into() }
}

const MAX_EXPONENT: i64 = 1 << 32;

pub fn laurent_to_json(poly: &LaurentPoly) -> Value {
    let mut map = Map::new();
    for (exp, coeff) in poly.terms() {
        map.insert(exp.to_string(), Value::String(format_rational(coeff)));
    }
    Value::Object(map)
}

pub fn laurent_from_json(value: &Value) -> Result<LaurentPoly, JsonError> {
    let map = value
        .as_object()
        .ok_or_else(|| shape("object of exponent -> rational", "laurent polynomial"))?;
    let mut terms = Vec::with_capacity(map.len());
    for (key, coeff) in map {
        let exp: i64 = key
            .parse()
            .map_err(|_| bad(format!("exponent `{key}`"), "not an integer"))?;
        if exp.abs() > MAX_EXPONENT {
            return Err(bad(format!("exponent `{key}`"), "out of range"));
        }
        let text = coeff
            .as_str()
            .ok_or_else(|| shape("rational string", format!("coefficient of q^{exp}")))?;
        let value = parse_rational(text)
            .map_err(|e| bad(format!("coefficient of q^{exp}"), e.to_string()))?;
        terms.push((exp, value));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn ratfunc_to_json(f: &RationalFunction) -> Value {
    json!({
        "num": laurent_to_json(f.num()),
        "den": laurent_to_json(f.den()),
    })
}

pub fn ratfunc_from_json(value: &Value) -> Result<RationalFunction, JsonError> {
    let map = value
        .as_object()
        .ok_or_else(|| shape("object with num/den", "rational function"))?;
    let num = laurent_from_json(map.get("num").ok_or_else(|| shape("num field", "rational function"))?)?;
    let den = laurent_from_json(map.get("den").ok_or_else(|| shape("den field", "rational function"))?)?;
    RationalFunction::new(num, den).map_err(|e| bad("rational function", e.to_string()))
}

pub fn word_to_json(word: &Word) -> Value {
    Value::Array(
        word.symbols()
            .iter()
            .map(|s| Value::String(s.to_string()))
            .collect(),
    )
}

pub fn word_from_json(value: &Value) -> Result<Word, JsonError> {
    let list = value
        .as_array()
        .ok_or_else(|| shape("array of symbol strings", "word"))?;
    let mut symbols = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let text = item
            .as_str()
            .ok_or_else(|| shape("symbol string", format!("word[{i}]")))?;
        let symbol = parse_symbol(text).map_err(|e| bad(format!("word[{i}]"), e.to_string()))?;
        symbols.push(symbol);
    }
    Ok(Word::new(symbols))
}

pub fn symbolic_element_to_json(elem: &AlgebraElement<RationalFunction>) -> Value {
    Value::Array(
        elem.terms()
            .map(|(w, c)| {
                json!({
                    "word": word_to_json(w),
                    "coeff": if c.is_laurent() {
                        laurent_to_json(c.num())
                    } else {
                        ratfunc_to_json(c)
                    },
                })
            })
            .collect(),
    )
}

pub fn numeric_element_to_json(elem: &AlgebraElement<BigRational>) -> Value {
    Value::Array(
        elem.terms()
            .map(|(w, c)| {
                json!({
                    "word": word_to_json(w),
                    "coeff": Value::String(format_rational(c)),
                })
            })
            .collect(),
    )
}

/// Parses an element with symbolic, Laurent, or plain-rational coefficients;
/// the latter two embed into Q(q).
pub fn element_from_json(value: &Value) -> Result<AlgebraElement<RationalFunction>, JsonError> {
    let list = value
        .as_array()
        .ok_or_else(|| shape("array of terms", "algebra element"))?;
    let mut out = AlgebraElement::zero();
    for (i, term) in list.iter().enumerate() {
        let map = term
            .as_object()
            .ok_or_else(|| shape("term object", format!("element[{i}]")))?;
        let word = word_from_json(
            map.get("word")
                .ok_or_else(|| shape("word field", format!("element[{i}]")))?,
        )?;
        let coeff = map
            .get("coeff")
            .ok_or_else(|| shape("coeff field", format!("element[{i}]")))?;
        let coeff = match coeff {
            Value::String(text) => RationalFunction::from_rational(
                parse_rational(text).map_err(|e| bad(format!("element[{i}].coeff"), e.to_string()))?,
            ),
            Value::Object(map) if map.contains_key("num") => ratfunc_from_json(coeff)?,
            Value::Object(_) => RationalFunction::from_laurent(laurent_from_json(coeff)?),
            _ => return Err(shape("string or object coefficient", format!("element[{i}].coeff"))),
        };
        out.add_term(word, coeff);
    }
    Ok(out)
}

pub fn configuration_to_json(config: &Configuration) -> Value {
    Value::Array(
        config
            .sites()
            .iter()
            .map(|&s| Value::Number(s.into()))
            .collect(),
    )
}

pub fn configuration_from_json(value: &Value) -> Result<Configuration, JsonError> {
    let list = value
        .as_array()
        .ok_or_else(|| shape("array of site states", "configuration"))?;
    let mut sites = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let state = item
            .as_u64()
            .filter(|&s| s <= 3)
            .ok_or_else(|| bad(format!("site {i}"), "states are 0..=3"))?;
        sites.push(state as u8);
    }
    Ok(Configuration(sites))
}

pub fn numeric_generator_to_json(gen: &GeneratorMatrix<BigRational>) -> Value {
    generator_to_json_with(gen, |v| Value::String(format_rational(v)))
}

pub fn symbolic_generator_to_json(gen: &GeneratorMatrix<RationalFunction>) -> Value {
    generator_to_json_with(gen, ratfunc_to_json)
}

fn generator_to_json_with<S: Scalar>(gen: &GeneratorMatrix<S>, encode: impl Fn(&S) -> Value) -> Value {
    json!({
        "dim": gen.dim(),
        "basis": gen.basis().iter().map(configuration_to_json).collect::<Vec<_>>(),
        "entries": gen
            .triplets()
            .map(|(r, c, v)| json!([r, c, encode(v)]))
            .collect::<Vec<_>>(),
    })
}

/// Decodes a sparse generator with rational-string or rational-function
/// entries into Q(q); indices and basis are validated.
pub fn generator_from_json(value: &Value) -> Result<GeneratorMatrix<RationalFunction>, JsonError> {
    let map = value
        .as_object()
        .ok_or_else(|| shape("object with dim/basis/entries", "generator"))?;
    let dim = map
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| shape("dim integer", "generator"))? as usize;
    if dim > 1 << 20 {
        return Err(bad("dim", "too large"));
    }
    let basis_value = map
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("basis array", "generator"))?;
    if basis_value.len() != dim {
        return Err(bad("basis", format!("has {} states, dim says {dim}", basis_value.len())));
    }
    let basis: Vec<Configuration> = basis_value
        .iter()
        .map(configuration_from_json)
        .collect::<Result<_, _>>()?;
    if let Some(first) = basis.first() {
        if basis.iter().any(|c| c.len() != first.len()) {
            return Err(bad("basis", "ragged configuration lengths"));
        }
    }
    let entries_value = map
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("entries array", "generator"))?;
    let mut entries = Vec::with_capacity(entries_value.len());
    for (i, entry) in entries_value.iter().enumerate() {
        let triple = entry
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| shape("[row, col, value] triplet", format!("entries[{i}]")))?;
        let row = triple[0]
            .as_u64()
            .filter(|&r| (r as usize) < dim)
            .ok_or_else(|| bad(format!("entries[{i}]"), "row out of range"))? as usize;
        let col = triple[1]
            .as_u64()
            .filter(|&c| (c as usize) < dim)
            .ok_or_else(|| bad(format!("entries[{i}]"), "col out of range"))? as usize;
        let value = match &triple[2] {
            Value::String(text) => RationalFunction::from_rational(
                parse_rational(text).map_err(|e| bad(format!("entries[{i}]"), e.to_string()))?,
            ),
            v @ Value::Object(_) => ratfunc_from_json(v)?,
            _ => return Err(shape("string or object value", format!("entries[{i}]"))),
        };
        entries.push((row, col, value));
    }
    GeneratorMatrix::from_triplets(basis, entries).map_err(|e| bad("generator", e.to_string()))
}
