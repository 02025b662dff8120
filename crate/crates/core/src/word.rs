//! Free-group words and words with constants.
//!
//! A [`Word`] is a freely reduced product of powers of variables
//! `x_1, x_2, ...`. A [`WordWithConstants`] is an alternating product
//! `w_1 s_1 w_2 s_2 ... w_r s_r w_{r+1}` of words and named constants, where
//! the inner words `w_2, ..., w_r` are non-trivial. The constants are bound
//! to matrices separately (see [`crate::eval::Binding`]), so one parsed shape
//! can be evaluated against many bindings.
//!
//! # Syntax
//!
//! ```text
//! word     := term { term }                 (juxtaposition is product)
//! term     := factor [ "^" signed-int ]
//! factor   := variable | constant | "1" | "[" word "," word "]" | "(" word ")"
//! variable := "x" | "y" | "z" | "x" int     (x = x1, y = x2, z = x3)
//! constant := "s" int | identifier
//! ```
//!
//! Identifiers are maximal runs of `[A-Za-z0-9_]`, so `xy` is a constant
//! named `xy`, not `x y`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const MAX_SYLLABLES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero exponent at byte {pos}")]
    ZeroExponent { pos: usize },
    #[error("inner word w_{index} reduces to the identity")]
    EmptyInnerWord { index: usize },
    #[error("word expands beyond {MAX_SYLLABLES} syllables")]
    TooLong,
}

/// `x_var^exp` with `var >= 1` and `exp != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub var: usize,
    pub exp: i64,
}

impl Letter {
    pub fn new(var: usize, exp: i64) -> Self {
        assert!(var >= 1 && exp != 0, "invalid letter x{var}^{exp}");
        Letter { var, exp }
    }
}

/// A freely reduced word: adjacent letters never share a variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Free reduction of a raw letter sequence: merges neighbours with the same
/// variable and drops zero exponents, repeatedly.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if l.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.var == l.var => {
                top.exp += l.exp;
                if top.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(*l),
        }
    }
    out
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn var(var: usize) -> Self {
        Word { letters: vec![Letter::new(var, 1)] }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word { letters: free_reduce(letters) }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length counted with multiplicity, `sum |exp|`.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest variable index used, 0 for the identity.
    pub fn max_var(&self) -> usize {
        self.letters.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn reduce(&self) -> Word {
        Word::from_letters(&self.letters)
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| Letter { var: l.var, exp: -l.exp }).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        Word::from_letters(&v)
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.concat(&base))
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Sum of the exponents of `x_var`.
    pub fn exponent_sum(&self, var: usize) -> i64 {
        self.letters.iter().filter(|l| l.var == var).map(|l| l.exp).sum()
    }

    /// Whether the exponents of the distinguished variable sum to zero.
    pub fn zero_exponent_sum_in(&self, var: usize) -> bool {
        self.exponent_sum(var) == 0
    }
}

pub fn var_name(var: usize) -> String {
    match var {
        1 => "x".to_string(),
        2 => "y".to_string(),
        3 => "z".to_string(),
        k => format!("x{k}"),
    }
}

fn render_power(f: &mut fmt::Formatter<'_>, name: &str, exp: i64) -> fmt::Result {
    if exp == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{exp}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            render_power(f, &var_name(l.var), l.exp)?;
        }
        Ok(())
    }
}

/// A constant symbol occurrence; `inverted` stands for the inverse of the
/// bound matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstSymbol {
    pub name: String,
    pub inverted: bool,
}

impl ConstSymbol {
    pub fn inverse(&self) -> ConstSymbol {
        ConstSymbol { name: self.name.clone(), inverted: !self.inverted }
    }
}

/// One factor of a word with constants, in left-to-right order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Syllable<'a> {
    Var(Letter),
    Const(&'a ConstSymbol),
}

/// `w_1 s_1 w_2 ... s_r w_{r+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordWithConstants {
    words: Vec<Word>,
    constants: Vec<ConstSymbol>,
}

impl From<Word> for WordWithConstants {
    fn from(w: Word) -> Self {
        WordWithConstants { words: vec![w], constants: Vec::new() }
    }
}

impl WordWithConstants {
    pub fn new(words: Vec<Word>, constants: Vec<ConstSymbol>) -> Result<Self, WordError> {
        assert_eq!(words.len(), constants.len() + 1, "segments must alternate");
        let words: Vec<Word> = words.iter().map(Word::reduce).collect();
        let r = constants.len();
        for (i, w) in words.iter().enumerate() {
            if i >= 1 && i < r && w.is_identity() {
                return Err(WordError::EmptyInnerWord { index: i + 1 });
            }
        }
        Ok(WordWithConstants { words, constants })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn constants(&self) -> &[ConstSymbol] {
        &self.constants
    }

    /// The underlying free-group word when there are no constants.
    pub fn as_word(&self) -> Option<&Word> {
        if self.constants.is_empty() {
            Some(&self.words[0])
        } else {
            None
        }
    }

    pub fn syllables(&self) -> impl Iterator<Item = Syllable<'_>> {
        self.words.iter().enumerate().flat_map(move |(i, w)| {
            w.letters()
                .iter()
                .map(|&l| Syllable::Var(l))
                .chain(self.constants.get(i).map(Syllable::Const))
        })
    }

    pub fn max_var(&self) -> usize {
        self.words.iter().map(Word::max_var).max().unwrap_or(0)
    }

    /// Length with multiplicity, constants counting one each.
    pub fn len(&self) -> usize {
        self.words.iter().map(Word::len).sum::<usize>() + self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn exponent_data(&self, n: usize) -> ExponentData {
        ExponentData::of(self, n)
    }

    pub fn inverse(&self) -> WordWithConstants {
        WordWithConstants {
            words: self.words.iter().rev().map(Word::inverse).collect(),
            constants: self.constants.iter().rev().map(ConstSymbol::inverse).collect(),
        }
    }
}

impl fmt::Display for WordWithConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in self.syllables() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match s {
                Syllable::Var(l) => render_power(f, &var_name(l.var), l.exp)?,
                Syllable::Const(c) => render_power(f, &c.name, if c.inverted { -1 } else { 1 })?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Exponent masses of a word with constants and the homogeneity degrees of
/// its adjugate extension on `n x n` matrices. Vectors are indexed by
/// variable, entry 0 being `x_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentData {
    /// Sum of positive exponents.
    pub a: u64,
    /// Sum of absolute values of negative exponents.
    pub b: u64,
    pub positive: Vec<u64>,
    pub negative: Vec<u64>,
    /// `positive[r] + (n - 1) * negative[r]`.
    pub degrees: Vec<u64>,
    /// `a + (n - 1) * b`, the degree of every entry of the extension.
    pub total_degree: u64,
}

impl ExponentData {
    pub fn of(w: &WordWithConstants, n: usize) -> Self {
        let m = w.max_var();
        let mut positive = vec![0u64; m];
        let mut negative = vec![0u64; m];
        for s in w.syllables() {
            if let Syllable::Var(l) = s {
                if l.exp > 0 {
                    positive[l.var - 1] += l.exp as u64;
                } else {
                    negative[l.var - 1] += l.exp.unsigned_abs();
                }
            }
        }
        let k = n as u64 - 1;
        let a = positive.iter().sum();
        let b = negative.iter().sum();
        let degrees = positive.iter().zip(&negative).map(|(p, q)| p + k * q).collect();
        ExponentData { a, b, positive, negative, degrees, total_degree: a + k * b }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RawSyl {
    Var(usize, i64),
    Const(String, bool),
}

fn invert_seq(seq: &[RawSyl]) -> Vec<RawSyl> {
    seq.iter()
        .rev()
        .map(|s| match s {
            RawSyl::Var(v, e) => RawSyl::Var(*v, -e),
            RawSyl::Const(c, inv) => RawSyl::Const(c.clone(), !inv),
        })
        .collect()
}

fn reduce_seq(seq: Vec<RawSyl>) -> Vec<RawSyl> {
    let mut out: Vec<RawSyl> = Vec::with_capacity(seq.len());
    for s in seq {
        match (out.last_mut(), &s) {
            (Some(RawSyl::Var(v, e)), RawSyl::Var(w, f)) if v == w => {
                *e += f;
                if *e == 0 {
                    out.pop();
                }
            }
            (Some(RawSyl::Const(c, i)), RawSyl::Const(d, j)) if c == d && i != j => {
                out.pop();
            }
            _ => out.push(s),
        }
    }
    out
}

/// Parses a word with constants; pure variable words come back with no
/// constants.
pub fn parse(text: &str) -> Result<WordWithConstants, WordError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let seq = if p.pos == p.src.len() { Vec::new() } else { p.word()? };
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected input"));
    }
    let seq = reduce_seq(seq);
    let mut words = Vec::new();
    let mut constants = Vec::new();
    let mut current = Vec::new();
    for s in seq {
        match s {
            RawSyl::Var(v, e) => current.push(Letter::new(v, e)),
            RawSyl::Const(name, inverted) => {
                words.push(Word::from_letters(&current));
                current.clear();
                constants.push(ConstSymbol { name, inverted });
            }
        }
    }
    words.push(Word::from_letters(&current));
    WordWithConstants::new(words, constants)
}

/// Parses a word that must not contain constants.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let w = parse(text)?;
    match w.as_word() {
        Some(w) => Ok(w.clone()),
        None => Err(WordError::Syntax { pos: 0, msg: "constants are not allowed here".to_string() }),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> WordError {
        WordError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Vec<RawSyl>, WordError> {
        let mut seq = Vec::new();
        loop {
            match self.peek() {
                None | Some(b',' | b')' | b']') => break,
                _ => {
                    seq.extend(self.term()?);
                    if seq.len() > MAX_SYLLABLES {
                        return Err(WordError::TooLong);
                    }
                }
            }
        }
        Ok(seq)
    }

    fn term(&mut self) -> Result<Vec<RawSyl>, WordError> {
        let base = self.factor()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = self.pos;
        let k = self.signed_int()?;
        if k == 0 {
            return Err(WordError::ZeroExponent { pos: exp_pos });
        }
        if let [RawSyl::Var(v, e)] = base.as_slice() {
            return Ok(vec![RawSyl::Var(*v, e.checked_mul(k).ok_or(WordError::TooLong)?)]);
        }
        let unit = if k < 0 { invert_seq(&base) } else { base };
        let reps = k.unsigned_abs() as usize;
        if unit.len().saturating_mul(reps) > MAX_SYLLABLES {
            return Err(WordError::TooLong);
        }
        Ok(unit.iter().cloned().cycle().take(unit.len() * reps).collect())
    }

    fn signed_int(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let mut neg = false;
        if let Some(c @ (b'-' | b'+')) = self.src.get(self.pos).copied() {
            neg = c == b'-';
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer exponent"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let k: i64 = digits.parse().map_err(|_| WordError::Syntax { pos: start, msg: "exponent out of range".to_string() })?;
        Ok(if neg { -k } else { k })
    }

    fn factor(&mut self) -> Result<Vec<RawSyl>, WordError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                let mut out = u.clone();
                out.extend(v.iter().cloned());
                out.extend(invert_seq(&u));
                out.extend(invert_seq(&v));
                Ok(out)
            }
            Some(b'1') => {
                let start = self.pos;
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    self.pos = start;
                    return Err(self.err("expected a variable, constant or bracket"));
                }
                Ok(Vec::new())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let ident = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(vec![classify(ident, start)?])
            }
            _ => Err(self.err("expected a variable, constant or bracket")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }
}

fn classify(ident: &str, pos: usize) -> Result<RawSyl, WordError> {
    match ident {
        "x" => return Ok(RawSyl::Var(1, 1)),
        "y" => return Ok(RawSyl::Var(2, 1)),
        "z" => return Ok(RawSyl::Var(3, 1)),
        _ => {}
    }
    if let Some(digits) = ident.strip_prefix('x') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let k: usize = digits
                .parse()
                .map_err(|_| WordError::Syntax { pos, msg: "variable index out of range".to_string() })?;
            if k == 0 {
                return Err(WordError::Syntax { pos, msg: "variables are numbered from 1".to_string() });
            }
            return Ok(RawSyl::Var(k, 1));
        }
    }
    Ok(RawSyl::Const(ident.to_string(), false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(var: usize, exp: i64) -> Letter {
        Letter::new(var, exp)
    }

    #[test]
    fn commutator_expansion() {
        let w = parse_word("[x,y]").unwrap();
        assert_eq!(w.letters(), &[l(1, 1), l(2, 1), l(1, -1), l(2, -1)]);
        assert_eq!(Word::commutator(&Word::var(1), &Word::var(2)), w);
        let sq = w.power(2);
        assert_eq!(sq.len(), 8);
        assert_eq!(sq, parse_word("[x,y]^2").unwrap());
    }

    #[test]
    fn constants_split_into_segments() {
        let w = parse("s1 x s1^-1 x^-1").unwrap();
        assert_eq!(w.words(), &[Word::identity(), Word::var(1), Word::var(1).inverse()]);
        assert_eq!(
            w.constants(),
            &[
                ConstSymbol { name: "s1".into(), inverted: false },
                ConstSymbol { name: "s1".into(), inverted: true }
            ]
        );
        assert_eq!(w.to_string(), "s1 x s1^-1 x^-1");
    }

    #[test]
    fn free_reduction_and_errors() {
        assert!(parse("x x^-1").unwrap().as_word().unwrap().is_identity());
        assert_eq!(parse_word("x^2 x^-1 y y").unwrap().letters(), &[l(1, 1), l(2, 2)]);
        assert!(matches!(parse("x^0"), Err(WordError::ZeroExponent { pos: 2 })));
        assert!(matches!(parse("s x x^-1 t"), Err(WordError::EmptyInnerWord { index: 2 })));
        assert!(matches!(parse("s^2 x"), Err(WordError::EmptyInnerWord { .. })));
        assert!(parse("s x s^-1").is_ok());
        // a constant next to its own inverse cancels
        assert_eq!(parse("x s s^-1 y").unwrap().as_word().unwrap().letters(), &[l(1, 1), l(2, 1)]);
        assert!(matches!(parse("[x,y"), Err(WordError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x ^"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse("x0"), Err(WordError::Syntax { .. })));
        assert!(parse("").unwrap().is_empty());
        assert!(parse("1").unwrap().is_empty());
    }

    #[test]
    fn variable_names() {
        assert_eq!(parse_word("x1 x2 x3 x4").unwrap(), parse_word("x y z x4").unwrap());
        assert_eq!(parse("xy").unwrap().constants()[0].name, "xy");
    }

    #[test]
    fn exponent_data_examples() {
        let w = parse("s x s^-1 x^-1").unwrap();
        let e = w.exponent_data(2);
        assert_eq!((e.a, e.b, e.total_degree), (1, 1, 2));
        let e = parse("x^3").unwrap().exponent_data(2);
        assert_eq!((e.a, e.b, e.degrees.clone()), (3, 0, vec![3]));
        let e = parse("[x,y]").unwrap().exponent_data(3);
        assert_eq!((e.a, e.b, e.total_degree), (2, 2, 6));
        assert_eq!(e.degrees, vec![3, 3]);
    }

    #[test]
    fn zero_exponent_sums() {
        assert!(parse_word("[x,y]").unwrap().zero_exponent_sum_in(2));
        assert!(!parse_word("x y^2").unwrap().zero_exponent_sum_in(2));
        let engel = parse_word("[[x,y],y]").unwrap();
        // expand by hand: x y x^-1 y^-1 y y x y^-1 x^-1 y^-1 -> y exponents 1-1+1+1-1-1
        assert_eq!(engel.letters().iter().filter(|l| l.var == 2).map(|l| l.exp).sum::<i64>(), 0);
        assert!(engel.zero_exponent_sum_in(2));
    }

    fn arb_letters(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((1usize..=3, prop_oneof![(-3i64..=-1), (1i64..=3)]), 0..max_len)
            .prop_map(|v| v.into_iter().map(|(var, exp)| Letter::new(var, exp)).collect())
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_shrinking(raw in arb_letters(12)) {
            let w = Word::from_letters(&raw);
            prop_assert_eq!(w.reduce(), w.clone());
            let raw_len: usize = raw.iter().map(|l| l.exp.unsigned_abs() as usize).sum();
            prop_assert!(w.len() <= raw_len);
            prop_assert!(w.letters().windows(2).all(|p| p[0].var != p[1].var));
        }

        #[test]
        fn inverse_of_concat(u in arb_letters(6), v in arb_letters(6)) {
            let (u, v) = (Word::from_letters(&u), Word::from_letters(&v));
            prop_assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
            prop_assert!(u.concat(&u.inverse()).is_identity());
        }

        #[test]
        fn render_parse_round_trip(raw in arb_letters(10), names in prop::collection::vec(0usize..3, 0..3)) {
            let w = Word::from_letters(&raw);
            prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w.clone());
            // interleave constants between non-trivial chunks
            let consts: Vec<ConstSymbol> = names
                .iter()
                .map(|&k| ConstSymbol { name: ["s1", "s2", "sigma"][k].to_string(), inverted: k == 1 })
                .collect();
            let mut words = vec![w.clone()];
            for _ in &consts {
                words.push(Word::var(1).concat(&Word::var(2)));
            }
            let wc = WordWithConstants::new(words, consts).unwrap();
            prop_assert_eq!(parse(&wc.to_string()).unwrap(), wc);
        }
    }
}
