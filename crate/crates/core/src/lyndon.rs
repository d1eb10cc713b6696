//! Lyndon words, their standard factorization and Lie bracketing, and the
//! expansion of shuffle-algebra elements as polynomials in Lyndon words.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{DenseMatrix, Rational, VariableTable, Vars};
use crate::error::{Error, Result};
use crate::words::{ShuffleMemo, Tensor, Word};

/// True iff `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let l = w.letters();
    let n = l.len();
    Ok((1..n).all(|r| {
        let rotated = l[r..].iter().chain(&l[..r]);
        l.iter().cmp(rotated) == Ordering::Less
    }))
}

/// All Lyndon words of length `1..=max_len` over `1..=d`, in lexicographic
/// order, generated by Duval's successor rule.
pub fn lyndon_words(d: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![1];
    loop {
        out.push(Word::new(w.clone()));
        // extend periodically to full length, then strip maximal letters
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&d) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => return out,
        }
    }
}

/// Splits a Lyndon word `l = l₁l₂` with `l₂` its longest proper Lyndon
/// right factor.
pub fn standard_factorization(l: &Word) -> Result<(Word, Word)> {
    if !is_lyndon(l)? {
        return Err(Error::NotLyndon(l.to_string()));
    }
    if l.len() == 1 {
        return Err(Error::SingleLetter(l.to_string()));
    }
    for i in 1..l.len() {
        let right = l.slice(i, l.len());
        if is_lyndon(&right)? {
            return Ok((l.slice(0, i), right));
        }
    }
    unreachable!("the last letter is always a Lyndon right factor")
}

/// Chen–Fox–Lyndon factorization into a non-increasing sequence of Lyndon
/// words (Duval's algorithm).
pub fn lyndon_factorization(w: &Word) -> Vec<Word> {
    let s = w.letters();
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            out.push(Word::new(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    out
}

/// The bracketing `b(l)` expanded in the free algebra with rational
/// coefficients over the empty variable table.
pub fn lie_basis(l: &Word, alphabet: usize) -> Result<Tensor> {
    lie_basis_over(l, alphabet, &VariableTable::empty())
}

/// [`lie_basis`] with coefficients in the given table.
pub fn lie_basis_over(l: &Word, alphabet: usize, vars: &Vars) -> Result<Tensor> {
    l.check_alphabet(alphabet)?;
    if !is_lyndon(l)? {
        return Err(Error::NotLyndon(l.to_string()));
    }
    bracket(l, alphabet, vars)
}

fn bracket(l: &Word, alphabet: usize, vars: &Vars) -> Result<Tensor> {
    if l.len() == 1 {
        return Tensor::word(alphabet, vars, l.clone());
    }
    let (l1, l2) = standard_factorization(l)?;
    let x = bracket(&l1, alphabet, vars)?;
    let y = bracket(&l2, alphabet, vars)?;
    x.concat(&y)?.checked_sub(&y.concat(&x)?)
}

/// Product of Lyndon words under the shuffle, each with a positive
/// exponent; factors are kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleMonomial {
    factors: Vec<(Word, u32)>,
}

impl ShuffleMonomial {
    /// The empty monomial (the unit `e`).
    pub fn one() -> Self {
        Self { factors: Vec::new() }
    }

    /// Builds a monomial, merging repeated words; every word must be Lyndon.
    pub fn new(factors: impl IntoIterator<Item = (Word, u32)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        for (w, e) in factors {
            if !is_lyndon(&w)? {
                return Err(Error::NotLyndon(w.to_string()));
            }
            if e > 0 {
                *merged.entry(w.letters().to_vec()).or_insert(0) += e;
            }
        }
        Ok(Self {
            factors: merged.into_iter().map(|(l, e)| (Word::new(l), e)).collect(),
        })
    }

    pub fn factors(&self) -> &[(Word, u32)] {
        &self.factors
    }

    /// Number of Lyndon factors counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Total word length of the expansion.
    pub fn weight(&self) -> usize {
        self.factors.iter().map(|(w, e)| w.len() * *e as usize).sum()
    }

    fn expand(&self, memo: &mut ShuffleMemo) -> BTreeMap<Word, Rational> {
        let mut acc: BTreeMap<Word, Rational> = BTreeMap::from([(Word::empty(), Rational::one())]);
        for (l, e) in &self.factors {
            for _ in 0..*e {
                let mut next: BTreeMap<Word, Rational> = BTreeMap::new();
                for (u, c) in &acc {
                    for (w, n) in memo.shuffle(u, l).iter() {
                        *next.entry(w.clone()).or_insert_with(Rational::zero) +=
                            c * Rational::from_integer((*n).into());
                    }
                }
                acc = next;
            }
        }
        acc
    }
}

impl Ord for ShuffleMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for ShuffleMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ShuffleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("[]");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(w, e)| if *e == 1 { w.to_string() } else { format!("{w}^{e}") })
            .collect();
        f.write_str(&parts.join(" ⧢ "))
    }
}

/// Shuffle polynomial in Lyndon words with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LyndonPolynomial {
    terms: BTreeMap<ShuffleMonomial, Rational>,
}

/// One record of the JSON rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyndonTermJson {
    pub monomial: Vec<LyndonFactorJson>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyndonFactorJson {
    pub word: Vec<usize>,
    pub exponent: u32,
}

impl LyndonPolynomial {
    pub fn terms(&self) -> &BTreeMap<ShuffleMonomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &ShuffleMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add(&mut self, m: ShuffleMonomial, c: Rational) {
        let sum = self.coefficient(&m) + c;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    /// Replaces every monomial by its shuffle expansion.
    pub fn expand(&self, alphabet: usize) -> Result<Tensor> {
        let mut memo = ShuffleMemo::default();
        let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (w, n) in m.expand(&mut memo) {
                *acc.entry(w).or_insert_with(Rational::zero) += c * n;
            }
        }
        Tensor::rational(alphabet, acc)
    }

    pub fn to_json(&self) -> Vec<LyndonTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| LyndonTermJson {
                monomial: m
                    .factors
                    .iter()
                    .map(|(w, e)| LyndonFactorJson {
                        word: w.letters().to_vec(),
                        exponent: *e,
                    })
                    .collect(),
                coefficient: c.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for LyndonPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            let body = if a.is_one() && m.degree() > 0 {
                m.to_string()
            } else {
                format!("{a} {m}")
            };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

fn rational_terms(t: &Tensor) -> Result<BTreeMap<Word, Rational>> {
    t.terms()
        .iter()
        .map(|(w, c)| {
            c.as_constant()
                .map(|r| (w.clone(), r))
                .ok_or(Error::NonConstantCoefficient)
        })
        .collect()
}

/// Writes a tensor with rational coefficients as a shuffle polynomial in
/// Lyndon words.
///
/// Repeatedly eliminates the largest remaining word `w` (longest, then
/// lexicographically largest) using the monomial given by its
/// non-increasing Lyndon factorization, whose expansion contains `w` as its
/// largest word. If the remainder ever fails to drop strictly below `w`, the
/// decomposition is recomputed by an exact linear solve per level.
pub fn lyndon_shuffle(t: &Tensor) -> Result<LyndonPolynomial> {
    let mut rem = rational_terms(t)?;
    let mut out = LyndonPolynomial::default();
    let mut memo = ShuffleMemo::default();
    while let Some((w, c)) = rem.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
        let mono = monomial_of(&w)?;
        let expansion = mono.expand(&mut memo);
        let lead = match expansion.get(&w) {
            Some(l) if !l.is_zero() => l.clone(),
            _ => return lyndon_shuffle_by_solve(t),
        };
        let scale = &c / &lead;
        for (u, n) in &expansion {
            let e = rem.entry(u.clone()).or_insert_with(Rational::zero);
            *e -= &scale * n;
            if e.is_zero() {
                rem.remove(u);
            }
        }
        if rem.keys().next_back().is_some_and(|top| *top >= w) {
            return lyndon_shuffle_by_solve(t);
        }
        out.add(mono, scale);
    }
    Ok(out)
}

fn monomial_of(w: &Word) -> Result<ShuffleMonomial> {
    if w.is_empty() {
        return Ok(ShuffleMonomial::one());
    }
    ShuffleMonomial::new(lyndon_factorization(w).into_iter().map(|l| (l, 1)))
}

/// All shuffle monomials of total word length `n` in Lyndon words over
/// `1..=d`.
pub fn shuffle_monomials_of_weight(d: usize, n: usize) -> Vec<ShuffleMonomial> {
    let lyndon = lyndon_words(d, n);
    let mut out = Vec::new();
    let mut current: Vec<(Word, u32)> = Vec::new();
    fn go(
        lyndon: &[Word],
        start: usize,
        remaining: usize,
        current: &mut Vec<(Word, u32)>,
        out: &mut Vec<ShuffleMonomial>,
    ) {
        if remaining == 0 {
            out.push(ShuffleMonomial::new(current.iter().cloned()).expect("Lyndon factors"));
            return;
        }
        for i in start..lyndon.len() {
            let len = lyndon[i].len();
            let mut e = 1;
            while e * len <= remaining {
                current.push((lyndon[i].clone(), e as u32));
                go(lyndon, i + 1, remaining - e * len, current, out);
                current.pop();
                e += 1;
            }
        }
    }
    go(&lyndon, 0, n, &mut current, &mut out);
    out
}

/// Decomposition by solving, level by level, the linear system against the
/// full basis of shuffle monomials of that weight.
pub fn lyndon_shuffle_by_solve(t: &Tensor) -> Result<LyndonPolynomial> {
    let rem = rational_terms(t)?;
    let d = t.alphabet();
    let mut out = LyndonPolynomial::default();
    let mut memo = ShuffleMemo::default();
    let mut levels: BTreeMap<usize, Vec<(Word, Rational)>> = BTreeMap::new();
    for (w, c) in rem {
        levels.entry(w.len()).or_default().push((w, c));
    }
    for (n, terms) in levels {
        if n == 0 {
            out.add(ShuffleMonomial::one(), terms[0].1.clone());
            continue;
        }
        let monos = shuffle_monomials_of_weight(d, n);
        let words = Word::all_of_length(d, n);
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut a = vec![vec![Rational::zero(); monos.len()]; words.len()];
        for (j, m) in monos.iter().enumerate() {
            for (w, c) in m.expand(&mut memo) {
                a[index[&w]][j] = c;
            }
        }
        let mut b = vec![Rational::zero(); words.len()];
        for (w, c) in terms {
            b[index[&w]] = c;
        }
        let x = crate::algebra::solve(&DenseMatrix::from_rows(a)?, &b)
            .expect("shuffle monomials span every level");
        for (m, c) in monos.into_iter().zip(x) {
            if !c.is_zero() {
                out.add(m, c);
            }
        }
    }
    Ok(out)
}
