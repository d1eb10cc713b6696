//! The free associative algebra on the letters `1..=d`.
//!
//! A [`Tensor`] is a finite linear combination of [`Word`]s with
//! [`MultiPoly`] coefficients. Besides concatenation it carries the shuffle
//! product and the half-shuffle; all three are computed on words and
//! extended bilinearly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{check_tables, Lexer, MultiPoly, PolyParser, Rational, Token, VariableTable, Vars};
use crate::error::{Error, Result};

/// A word in the letters `1..=d`; the empty word is the unit `e`.
///
/// Words are ordered by length first and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Self(vec![i])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, letter: usize) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    /// Word without its last letter.
    pub fn init(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn check_alphabet(&self, alphabet: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l > alphabet) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, alphabet }),
            None => Ok(()),
        }
    }

    /// All words of length `k` over `1..=d` in lexicographic order.
    pub fn all_of_length(d: usize, k: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..k {
            out = out
                .iter()
                .flat_map(|w| (1..=d).map(move |i| w.push(i)))
                .collect();
        }
        out
    }

    /// `[1,2,3]` without spaces.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses a bracket array such as `[1, 2]` or `[]`.
    pub fn parse(text: &str) -> Result<Word> {
        let tokens = Lexer::tokenize(text)?;
        let vars = VariableTable::empty();
        let mut p = PolyParser::new(&tokens, &vars);
        let w = parse_letters(&mut p, None)?;
        p.expect_end()?;
        Ok(w)
    }

    /// Lexicographic comparison on letters only (no length priority).
    pub fn lex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Word {
    fn from(v: [usize; N]) -> Self {
        Word(v.to_vec())
    }
}

fn parse_letters(p: &mut PolyParser<'_>, alphabet: Option<usize>) -> Result<Word> {
    p.expect(Token::LBracket, "`[`")?;
    let mut letters = Vec::new();
    if p.peek() == Some(&Token::RBracket) {
        p.bump();
        return Ok(Word(letters));
    }
    loop {
        let at = p.offset();
        match p.bump() {
            Some(Token::Int(n)) => {
                let letter = usize::try_from(n).ok().filter(|&l| l >= 1);
                match (letter, alphabet) {
                    (Some(l), Some(d)) if l > d => {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!("letter {l} outside the alphabet 1..={d}"),
                        })
                    }
                    (Some(l), _) => letters.push(l),
                    (None, _) => {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "letters are positive integers".into(),
                        })
                    }
                }
            }
            _ => {
                return Err(Error::Parse {
                    pos: at,
                    msg: "expected a letter".into(),
                })
            }
        }
        match p.bump() {
            Some(Token::Comma) => continue,
            Some(Token::RBracket) => return Ok(Word(letters)),
            _ => {
                return Err(Error::Parse {
                    pos: p.offset().saturating_sub(1),
                    msg: "expected `,` or `]`".into(),
                })
            }
        }
    }
}

/// Element of the free algebra: word → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    alphabet: usize,
    vars: Vars,
    terms: BTreeMap<Word, MultiPoly>,
}

impl Tensor {
    pub fn zero(alphabet: usize, vars: &Vars) -> Self {
        assert!(alphabet >= 1, "alphabet size must be positive");
        Self {
            alphabet,
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `1·e`.
    pub fn unit(alphabet: usize, vars: &Vars) -> Self {
        let mut t = Self::zero(alphabet, vars);
        t.terms.insert(Word::empty(), MultiPoly::one(vars));
        t
    }

    /// `1·w`.
    pub fn word(alphabet: usize, vars: &Vars, w: Word) -> Result<Self> {
        Self::from_terms(alphabet, vars, [(w, MultiPoly::one(vars))])
    }

    /// Tensor with rational coefficients over the empty variable table.
    pub fn rational<I>(alphabet: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let vars = VariableTable::empty();
        let terms: Vec<_> = terms
            .into_iter()
            .map(|(w, c)| (w, MultiPoly::constant(&vars, c)))
            .collect();
        Self::from_terms(alphabet, &vars, terms)
    }

    pub fn from_terms<I>(alphabet: usize, vars: &Vars, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, MultiPoly)>,
    {
        let mut t = Self::zero(alphabet, vars);
        for (w, c) in terms {
            w.check_alphabet(alphabet)?;
            check_tables(vars, c.vars())?;
            t.add_term(w, c);
        }
        Ok(t)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Word, MultiPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> MultiPoly {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    /// Rational coefficient of `w`; errors if it is not constant.
    pub fn rational_coefficient(&self, w: &Word) -> Result<Rational> {
        self.coefficient(w)
            .as_constant()
            .ok_or(Error::NonConstantCoefficient)
    }

    pub fn has_empty_word(&self) -> bool {
        self.terms.contains_key(&Word::empty())
    }

    /// `Some(k)` when every word has length `k`; the zero tensor yields `None`.
    pub fn homogeneous_level(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let k = lens.next()?;
        lens.all(|l| l == k).then_some(k)
    }

    pub fn max_level(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// Component of words of length exactly `k`.
    pub fn level(&self, k: usize) -> Tensor {
        self.filter(|w| w.len() == k)
    }

    /// Component of words of length at most `k`.
    pub fn truncate(&self, k: usize) -> Tensor {
        self.filter(|w| w.len() <= k)
    }

    fn filter(&self, keep: impl Fn(&Word) -> bool) -> Tensor {
        Tensor {
            alphabet: self.alphabet,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut t = Tensor::zero(self.alphabet, &self.vars);
        if c.is_zero() {
            return t;
        }
        t.terms = self.terms.iter().map(|(w, a)| (w.clone(), a.scale(c))).collect();
        t
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> Result<Tensor> {
        check_tables(&self.vars, c.vars())?;
        let mut t = Tensor::zero(self.alphabet, &self.vars);
        for (w, a) in &self.terms {
            t.add_term(w.clone(), a * c);
        }
        Ok(t)
    }

    fn check_compatible(&self, other: &Tensor) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        check_tables(&self.vars, &other.vars)
    }

    pub fn checked_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        let mut t = self.clone();
        for (w, c) in &other.terms {
            t.add_term(w.clone(), c.clone());
        }
        Ok(t)
    }

    pub fn checked_sub(&self, other: &Tensor) -> Result<Tensor> {
        self.checked_add(&other.scale(&-Rational::one()))
    }

    /// Re-expresses the coefficients over `vars` (matching names).
    pub fn embed(&self, vars: &Vars) -> Result<Tensor> {
        let mut t = Tensor::zero(self.alphabet, vars);
        for (w, c) in &self.terms {
            t.add_term(w.clone(), c.embed(vars)?);
        }
        Ok(t)
    }

    /// The same terms viewed over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: usize) -> Result<Tensor> {
        let mut t = Tensor::zero(alphabet, &self.vars);
        for (w, c) in &self.terms {
            w.check_alphabet(alphabet)?;
            t.terms.insert(w.clone(), c.clone());
        }
        Ok(t)
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &Tensor) -> Result<Tensor> {
        self.concat_truncated(other, usize::MAX)
    }

    /// Concatenation product keeping only words of length `<= max_len`.
    pub fn concat_truncated(&self, other: &Tensor, max_len: usize) -> Result<Tensor> {
        self.check_compatible(other)?;
        let mut t = Tensor::zero(self.alphabet, &self.vars);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() <= max_len {
                    t.add_term(u.concat(v), a * b);
                }
            }
        }
        Ok(t)
    }

    /// Shuffle product.
    pub fn shuffle(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        let mut memo = ShuffleMemo::default();
        let mut t = Tensor::zero(self.alphabet, &self.vars);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (w, n) in memo.shuffle(u, v).iter() {
                    t.add_term(w.clone(), ab.scale(&Rational::from_integer((*n).into())));
                }
            }
        }
        Ok(t)
    }

    /// Half-shuffle `self ≻ other`; both sides must avoid the empty word.
    pub fn half_shuffle(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        if self.has_empty_word() || other.has_empty_word() {
            return Err(Error::HalfShuffleEmptyWord);
        }
        let mut memo = HalfShuffleMemo::default();
        let mut t = Tensor::zero(self.alphabet, &self.vars);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (w, n) in memo.half_shuffle(u, v).iter() {
                    t.add_term(w.clone(), ab.scale(&Rational::from_integer((*n).into())));
                }
            }
        }
        Ok(t)
    }

    /// Pairing with a linear form given word by word.
    pub fn pair_with(&self, mut value: impl FnMut(&Word) -> Result<MultiPoly>) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(&self.vars);
        for (w, c) in &self.terms {
            acc = acc.checked_add(&c.checked_mul(&value(w)?)?)?;
        }
        Ok(acc)
    }

    /// Parses the bracket-array notation, e.g. `9/2 x_2^2 [2, 2] - [1, 2]`.
    pub fn parse(text: &str, alphabet: usize, vars: &Vars) -> Result<Tensor> {
        let tokens = Lexer::tokenize(text)?;
        let mut p = PolyParser::new(&tokens, vars);
        let mut t = Tensor::zero(alphabet, vars);
        if tokens.len() == 1 && matches!(&tokens[0].1, Token::Int(n) if n.is_zero()) {
            return Ok(t);
        }
        let mut negate = match p.peek() {
            Some(Token::Minus) => {
                p.bump();
                true
            }
            Some(Token::Plus) => {
                p.bump();
                false
            }
            _ => false,
        };
        loop {
            let coeff = if p.peek() == Some(&Token::LBracket) {
                MultiPoly::one(vars)
            } else {
                let c = p.term()?;
                if p.peek() != Some(&Token::LBracket) {
                    return p.error("expected `[` after coefficient");
                }
                c
            };
            let w = parse_letters(&mut p, Some(alphabet))?;
            t.add_term(w, if negate { -&coeff } else { coeff });
            match p.bump() {
                None => return Ok(t),
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                Some(_) => {
                    p.retreat();
                    return p.error("expected `+` or `-`");
                }
            }
        }
    }
}

/// One `{word, coefficient}` entry of a serialized tensor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<usize>,
    pub coefficient: String,
}

/// `{alphabet, variables, terms: [{word, coefficient}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub alphabet: usize,
    #[serde(default)]
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl Tensor {
    pub(crate) fn json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(w, c)| TermJson {
                word: w.letters().to_vec(),
                coefficient: c.to_string(),
            })
            .collect()
    }

    pub(crate) fn from_json_terms(alphabet: usize, variables: &[String], terms: &[TermJson]) -> Result<Tensor> {
        let vars = VariableTable::new(variables.iter().cloned())?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            parsed.push((Word::new(t.word.clone()), MultiPoly::parse(&t.coefficient, &vars)?));
        }
        Tensor::from_terms(alphabet, &vars, parsed)
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            alphabet: self.alphabet,
            variables: self.vars.names().to_vec(),
            terms: self.json_terms(),
        }
    }

    pub fn from_json(j: &TensorJson) -> Result<Tensor> {
        Tensor::from_json_terms(j.alphabet, &j.variables, &j.terms)
    }
}

impl fmt::Display for Tensor {
    /// Terms in descending (length, lexicographic) order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = match c.as_constant() {
                Some(r) if c.num_terms() == 1 => {
                    let a = r.abs();
                    let body = if a.is_one() && !w.is_empty() {
                        w.to_string()
                    } else {
                        format!("{a} {w}")
                    };
                    (r.is_negative(), body)
                }
                _ if c.num_terms() == 1 => {
                    let text = c.to_string();
                    match text.strip_prefix('-') {
                        Some(rest) => (true, format!("{rest} {w}")),
                        None => (false, format!("{text} {w}")),
                    }
                }
                _ => (false, format!("{} {w}", c.coefficient_text())),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

type WordCounts = Arc<Vec<(Word, u128)>>;

/// Memo for word-level shuffles, keyed by the unordered pair. Confined to
/// one call; values are shared read-only.
#[derive(Default)]
pub(crate) struct ShuffleMemo {
    cache: HashMap<(Word, Word), WordCounts>,
}

impl ShuffleMemo {
    /// `u ⧢ v` as word counts; the counts sum to `binomial(|u|+|v|, |u|)`.
    pub(crate) fn shuffle(&mut self, u: &Word, v: &Word) -> WordCounts {
        let key = if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
        if let Some(r) = self.cache.get(&key) {
            return r.clone();
        }
        let r = Arc::new(shuffle_words(u, v).into_iter().collect::<Vec<_>>());
        self.cache.insert(key, r.clone());
        r
    }
}

/// Dynamic programme over prefix pairs:
/// `S(i, j) = S(i-1, j)·u_i + S(i, j-1)·v_j`, which is the defining
/// recursion `(w₁a) ⧢ (w₂b) = (w₁ ⧢ w₂b)a + (w₁a ⧢ w₂)b` with every
/// subproblem solved once.
pub(crate) fn shuffle_words(u: &Word, v: &Word) -> BTreeMap<Word, u128> {
    assert!(u.len() + v.len() < 128, "shuffle counts would overflow");
    let (m, n) = (u.len(), v.len());
    // row[j] holds S(i, j) for the current i
    let mut row: Vec<BTreeMap<Word, u128>> = Vec::with_capacity(n + 1);
    row.push(BTreeMap::from([(Word::empty(), 1)]));
    for j in 1..=n {
        row.push(BTreeMap::from([(v.slice(0, j), 1)]));
    }
    for i in 1..=m {
        let mut next: Vec<BTreeMap<Word, u128>> = Vec::with_capacity(n + 1);
        next.push(BTreeMap::from([(u.slice(0, i), 1)]));
        for j in 1..=n {
            let mut cell = BTreeMap::new();
            for (w, c) in &row[j] {
                *cell.entry(w.push(u.0[i - 1])).or_insert(0) += c;
            }
            for (w, c) in &next[j - 1] {
                *cell.entry(w.push(v.0[j - 1])).or_insert(0) += c;
            }
            next.push(cell);
        }
        row = next;
    }
    row.pop().unwrap()
}

#[derive(Default)]
pub(crate) struct HalfShuffleMemo {
    cache: HashMap<(Word, Word), WordCounts>,
}

impl HalfShuffleMemo {
    /// `w ≻ i = w·i` and `w ≻ (v·i) = (w ≻ v + v ≻ w)·i`.
    pub(crate) fn half_shuffle(&mut self, w: &Word, v: &Word) -> WordCounts {
        debug_assert!(!w.is_empty() && !v.is_empty());
        let key = (w.clone(), v.clone());
        if let Some(r) = self.cache.get(&key) {
            return r.clone();
        }
        let last = v.last().expect("nonempty");
        let rest = v.init();
        let result: Vec<(Word, u128)> = if rest.is_empty() {
            vec![(w.push(last), 1)]
        } else {
            let mut acc: BTreeMap<Word, u128> = BTreeMap::new();
            for (x, c) in self.half_shuffle(w, &rest).iter() {
                *acc.entry(x.push(last)).or_insert(0) += c;
            }
            for (x, c) in self.half_shuffle(&rest, w).iter() {
                *acc.entry(x.push(last)).or_insert(0) += c;
            }
            acc.into_iter().collect()
        };
        let r = Arc::new(result);
        self.cache.insert(key, r.clone());
        r
    }
}
