//! Signatures of piecewise polynomial paths and the maps that act on them.
//!
//! A segment's signature is built from the inner functions
//! `S_e(t) = 1`, `S_{w·i}(t) = ∫₀ᵗ S_w(s) X_i'(s) ds`, evaluated at `t = 1`.
//! Segments are combined with Chen's rule: the truncated signature series
//! of a concatenation is the concatenation product of the series.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{check_tables, same_table, DenseMatrix, MultiPoly, Rational, UniPoly, VariableTable};
use crate::error::{Error, Result};
use crate::paths::{poly_path, pw_lin_path, Path, PathSegment};
use crate::words::{Tensor, TermJson, Word};

fn check_letters(w: &Word, d: usize) -> Result<()> {
    w.check_alphabet(d)
}

/// `⟨σ(s), w⟩` for a single segment.
pub fn segment_sig_word(s: &PathSegment, w: &Word) -> Result<MultiPoly> {
    check_letters(w, s.dimension())?;
    let mut inner = UniPoly::constant(MultiPoly::one(s.vars()));
    for &i in w.letters() {
        inner = inner.checked_mul(&s.coord(i - 1).derivative())?.integrate();
    }
    Ok(inner.eval_at_one())
}

/// Signature series of one segment through level `k` (all levels `0..=k`).
pub fn segment_series(s: &PathSegment, k: usize) -> Tensor {
    let d = s.dimension();
    let vars = s.vars().clone();
    let derivs: Vec<UniPoly> = s.coords().iter().map(UniPoly::derivative).collect();
    let mut out = Tensor::unit(d, &vars);
    // depth-first over word prefixes so each inner function is built once
    let mut stack: Vec<(Word, UniPoly)> = vec![(Word::empty(), UniPoly::constant(MultiPoly::one(&vars)))];
    while let Some((w, inner)) = stack.pop() {
        if w.len() == k || inner.is_zero() {
            continue;
        }
        for (i, dx) in derivs.iter().enumerate() {
            let next = inner.checked_mul(dx).expect("same table").integrate();
            let wi = w.push(i + 1);
            out.add_term(wi.clone(), next.eval_at_one());
            stack.push((wi, next));
        }
    }
    out
}

/// Truncated signature series `1 + σ⁽¹⁾ + … + σ⁽ᵏ⁾`, folding segments left
/// to right.
pub fn sig_series(x: &Path, k: usize) -> Tensor {
    let mut acc = Tensor::unit(x.dimension(), x.vars());
    for s in x.segments() {
        acc = acc
            .concat_truncated(&segment_series(s, k), k)
            .expect("segments share alphabet and table");
    }
    acc
}

/// Level-`k` signature tensor.
pub fn sig_level(x: &Path, k: usize) -> Tensor {
    sig_series(x, k).level(k)
}

/// Inner functions `S_w(t)` of every segment, memoized on word prefixes.
struct InnerCache<'a> {
    path: &'a Path,
    derivs: Vec<Vec<UniPoly>>,
    inner: Vec<HashMap<Word, UniPoly>>,
}

impl<'a> InnerCache<'a> {
    fn new(path: &'a Path) -> Self {
        let derivs = path
            .segments()
            .iter()
            .map(|s| s.coords().iter().map(UniPoly::derivative).collect())
            .collect();
        Self {
            path,
            derivs,
            inner: vec![HashMap::new(); path.segments().len()],
        }
    }

    fn inner(&mut self, seg: usize, w: &Word) -> UniPoly {
        if let Some(p) = self.inner[seg].get(w) {
            return p.clone();
        }
        let p = match w.last() {
            None => UniPoly::constant(MultiPoly::one(self.path.vars())),
            Some(i) => {
                let head = self.inner(seg, &w.init());
                head.checked_mul(&self.derivs[seg][i - 1]).expect("same table").integrate()
            }
        };
        self.inner[seg].insert(w.clone(), p.clone());
        p
    }

    /// `⟨σ(X), w⟩`, summing over all ways to cut `w` into consecutive
    /// (possibly empty) pieces, one per segment.
    fn sig_word(&mut self, w: &Word) -> MultiPoly {
        let n = w.len();
        let vars = self.path.vars().clone();
        // prefix[p] = coefficient of w[..p] in the series of the segments so far
        let mut prefix: Vec<MultiPoly> = (0..=n)
            .map(|p| if p == 0 { MultiPoly::one(&vars) } else { MultiPoly::zero(&vars) })
            .collect();
        for seg in 0..self.path.segments().len() {
            let mut next = vec![MultiPoly::zero(&vars); n + 1];
            for (q, slot) in next.iter_mut().enumerate() {
                for (p, head) in prefix.iter().enumerate().take(q + 1) {
                    if head.is_zero() {
                        continue;
                    }
                    let piece = self.inner(seg, &w.slice(p, q)).eval_at_one();
                    *slot = &*slot + &(head * &piece);
                }
            }
            prefix = next;
        }
        prefix.pop().unwrap()
    }
}

/// `⟨σ(X), w⟩` by Chen's rule over the segments, without forming any
/// tensor.
pub fn sig_word(x: &Path, w: &Word) -> Result<MultiPoly> {
    check_letters(w, x.dimension())?;
    Ok(InnerCache::new(x).sig_word(w))
}

/// Pairs the signature with a tensor: `Σ c_w ⟨σ(X), w⟩`. Coefficients of
/// `t` are moved into the path's ring by variable name.
pub fn sig_pair(x: &Path, t: &Tensor) -> Result<MultiPoly> {
    let t = t.embed(x.vars())?;
    if t.alphabet() != x.dimension() {
        return Err(Error::AlphabetMismatch(t.alphabet(), x.dimension()));
    }
    let mut cache = InnerCache::new(x);
    t.pair_with(|w| Ok(cache.sig_word(w)))
}

/// Signature of the canonical axis path `e_1, …, e_d` at level `k`.
pub fn caxis_tensor(d: usize, k: usize) -> Tensor {
    let q = VariableTable::empty();
    let path = pw_lin_path(&DenseMatrix::<Rational>::identity(d).to_poly(&q)).expect("nonempty");
    sig_level(&path, k)
}

/// Signature of the canonical monomial path `t ↦ (t, t², …, t^d)` at
/// level `k`.
pub fn cmon_tensor(d: usize, k: usize) -> Tensor {
    let q = VariableTable::empty();
    let coords = (1..=d as u32)
        .map(|e| UniPoly::monomial(MultiPoly::one(&q), e))
        .collect();
    sig_level(&poly_path(coords).expect("nonempty"), k)
}

/// Closed form of [`caxis_tensor`]: a weakly increasing word with letter
/// multiplicities `k_1..k_d` has coefficient `1/(k_1!⋯k_d!)`, every other
/// word has coefficient zero.
pub fn caxis_tensor_closed_form(d: usize, k: usize) -> Tensor {
    let mut terms = Vec::new();
    let mut w = vec![1usize; k];
    loop {
        let mut denom = Rational::one();
        let mut run = 0u64;
        for (j, &l) in w.iter().enumerate() {
            run = if j > 0 && w[j - 1] == l { run + 1 } else { 1 };
            denom *= Rational::from_integer(run.into());
        }
        terms.push((Word::new(w.clone()), denom.recip()));
        // next weakly increasing word
        let Some(pos) = w.iter().rposition(|&l| l < d) else { break };
        let v = w[pos] + 1;
        for l in &mut w[pos..] {
            *l = v;
        }
    }
    Tensor::rational(d, terms).expect("letters in range")
}

/// Closed form of [`cmon_tensor`]: the coefficient of `[i_1, …, i_k]` is
/// `∏_j i_j / (i_1 + … + i_j)`.
pub fn cmon_tensor_closed_form(d: usize, k: usize) -> Tensor {
    let terms = Word::all_of_length(d, k).into_iter().map(|w| {
        let mut c = Rational::one();
        let mut partial = 0usize;
        for &i in w.letters() {
            partial += i;
            c *= Rational::new(i.into(), partial.into());
        }
        (w, c)
    });
    Tensor::rational(d, terms).expect("letters in range")
}

/// `Σ_{n=0}^{k} Lⁿ/n!` truncated to words of length at most `k`.
pub fn tensor_exp_series(l: &Tensor, k: usize) -> Result<Tensor> {
    if l.has_empty_word() {
        return Err(Error::InvalidArgument(
            "the exponent must have no empty-word component".into(),
        ));
    }
    let l = l.truncate(k);
    let mut acc = Tensor::unit(l.alphabet(), l.vars());
    let mut power = acc.clone();
    for n in 1..=k {
        power = power
            .concat_truncated(&l, k)?
            .scale(&Rational::new(1.into(), n.into()));
        if power.is_zero() {
            break;
        }
        acc = acc.checked_add(&power)?;
    }
    Ok(acc)
}

/// Level-`k` component of the tensor exponential.
pub fn tensor_exp(l: &Tensor, k: usize) -> Result<Tensor> {
    Ok(tensor_exp_series(l, k)?.level(k))
}

fn unify(a: &DenseMatrix<MultiPoly>, t: &Tensor) -> Result<(DenseMatrix<MultiPoly>, Tensor)> {
    let avars = a.entries().first().map(|e| e.vars().clone()).unwrap_or_else(VariableTable::empty);
    for e in a.entries() {
        check_tables(&avars, e.vars())?;
    }
    if same_table(&avars, t.vars()) {
        Ok((a.clone(), t.clone()))
    } else if avars.is_empty() {
        let lifted = a.map(|e| e.embed(t.vars()).expect("constants embed anywhere"));
        Ok((lifted, t.clone()))
    } else {
        Ok((a.clone(), t.embed(&avars)?))
    }
}

/// Diagonal action `A.T` of an `r × c` matrix on a tensor over the alphabet
/// `1..=c`: the word `[j_1, …, j_k]` maps to
/// `Σ A[i_1, j_1]⋯A[i_k, j_k] [i_1, …, i_k]` over the alphabet `1..=r`.
///
/// With this convention `σ(A∘X) = A.σ(X)` and
/// `⟨σ(A∘X), w⟩ = ⟨σ(X), Aᵀ.w⟩`.
pub fn matrix_action(a: &DenseMatrix<MultiPoly>, t: &Tensor) -> Result<Tensor> {
    if t.alphabet() != a.cols() {
        return Err(Error::AlphabetMismatch(t.alphabet(), a.cols()));
    }
    let (a, t) = unify(a, t)?;
    let vars = t.vars().clone();
    let mut out = Tensor::zero(a.rows(), &vars);
    for (w, c) in t.terms() {
        let mut partial: Vec<(Vec<usize>, MultiPoly)> = vec![(Vec::new(), c.clone())];
        for &j in w.letters() {
            let mut next = Vec::with_capacity(partial.len() * a.rows());
            for (prefix, coeff) in &partial {
                for i in 0..a.rows() {
                    let e = a.get(i, j - 1);
                    if e.is_zero() {
                        continue;
                    }
                    let mut p = prefix.clone();
                    p.push(i + 1);
                    next.push((p, coeff * e));
                }
            }
            partial = next;
        }
        for (letters, coeff) in partial {
            out.add_term(Word::new(letters), coeff);
        }
    }
    Ok(out)
}

/// `φ_d`: sends `x_{i_1}⋯x_{i_l}` to `i_1 ⧢ ⋯ ⧢ i_l`. The `d` letters are
/// the variables of `p`'s table in order.
pub fn phi_map(p: &MultiPoly) -> Result<Tensor> {
    let d = p.vars().len();
    if d == 0 {
        return Err(Error::InvalidArgument("polynomial ring has no variables".into()));
    }
    if !p.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    let q = VariableTable::empty();
    let mut out = Tensor::zero(d, &q);
    for (m, c) in p.terms() {
        let mut image = Tensor::unit(d, &q);
        for (i, &e) in m.exponents().iter().enumerate() {
            let letter = Tensor::word(d, &q, Word::letter(i + 1))?;
            for _ in 0..e {
                image = image.shuffle(&letter)?;
            }
        }
        out = out.checked_add(&image.scale(c))?;
    }
    Ok(out)
}

fn letter_images(source_dim: usize, p: &[MultiPoly]) -> Result<Vec<Tensor>> {
    p.iter()
        .map(|q| {
            if q.vars().len() != source_dim {
                return Err(Error::DimensionMismatch {
                    expected: source_dim,
                    got: q.vars().len(),
                });
            }
            phi_map(q)
        })
        .collect()
}

/// `M_p(w)` for `p = (p_1, …, p_m)` polynomials in `source_dim` variables.
///
/// `w = [i_1, …, i_k]` is the left-nested half-shuffle
/// `((i_1 ≻ i_2) ≻ i_3) ⋯ ≻ i_k`, and `M_p` is the half-shuffle morphism
/// with `M_p(i) = φ(p_i)`.
pub fn adjoint_word(w: &Word, source_dim: usize, p: &[MultiPoly]) -> Result<Tensor> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    w.check_alphabet(p.len())?;
    let images = letter_images(source_dim, p)?;
    adjoint_with(w, &images)
}

fn adjoint_with(w: &Word, images: &[Tensor]) -> Result<Tensor> {
    let mut letters = w.letters().iter();
    let first = letters.next().ok_or(Error::EmptyWord)?;
    let mut acc = images[first - 1].clone();
    for &i in letters {
        acc = acc.half_shuffle(&images[i - 1])?;
    }
    Ok(acc)
}

/// `M_p` extended linearly to a tensor with rational coefficients over the
/// alphabet `1..=m`.
pub fn adjoint_tensor(t: &Tensor, source_dim: usize, p: &[MultiPoly]) -> Result<Tensor> {
    if t.alphabet() != p.len() {
        return Err(Error::AlphabetMismatch(t.alphabet(), p.len()));
    }
    let images = letter_images(source_dim, p)?;
    let mut out = Tensor::zero(source_dim, &VariableTable::empty());
    for (w, c) in t.terms() {
        let c = c.as_constant().ok_or(Error::NonConstantCoefficient)?;
        out = out.checked_add(&adjoint_with(w, &images)?.scale(&c))?;
    }
    Ok(out)
}

/// `p ∘ X`, see [`Path::substitute`].
pub fn substitute_path(p: &[MultiPoly], x: &Path) -> Result<Path> {
    x.substitute(p)
}

/// A level-`k` signature together with the path it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureResult {
    pub path: Path,
    pub level: usize,
    pub tensor: Tensor,
}

impl SignatureResult {
    pub fn compute(path: &Path, level: usize) -> Self {
        Self {
            path: path.clone(),
            level,
            tensor: sig_level(path, level),
        }
    }

    pub fn to_json(&self) -> SignatureJson {
        SignatureJson::from_tensor(&self.tensor, self.level)
    }
}

/// `{dimension, level, variables, terms: [{word, coefficient}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureJson {
    pub dimension: usize,
    pub level: usize,
    #[serde(default)]
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl SignatureJson {
    pub fn from_tensor(t: &Tensor, level: usize) -> Self {
        Self {
            dimension: t.alphabet(),
            level,
            variables: t.vars().names().to_vec(),
            terms: t.json_terms(),
        }
    }

    pub fn to_tensor(&self) -> Result<Tensor> {
        if let Some(t) = self.terms.iter().find(|t| t.word.len() != self.level) {
            return Err(Error::InvalidArgument(format!(
                "word {:?} is not of level {}",
                t.word, self.level
            )));
        }
        Tensor::from_json_terms(self.dimension, &self.variables, &self.terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Vars};
    use crate::paths::lin_path;

    fn q() -> Vars {
        VariableTable::empty()
    }

    fn w(v: &[usize]) -> Word {
        Word::from(v)
    }

    fn z_path() -> Path {
        let v = VariableTable::new(["x_1", "x_2"]).unwrap();
        lin_path(vec![
            MultiPoly::parse("2 x_1", &v).unwrap(),
            MultiPoly::parse("3 x_2", &v).unwrap(),
        ])
        .unwrap()
    }

    fn poly(coords: &[&str]) -> Path {
        poly_path(coords.iter().map(|c| UniPoly::parse(c, &q()).unwrap()).collect()).unwrap()
    }

    #[test]
    fn linear_path_values() {
        let z = z_path();
        assert_eq!(sig_word(&z, &w(&[1, 2])).unwrap().to_string(), "3 x_1 x_2");
        assert_eq!(
            sig_level(&z, 2).to_string(),
            "9/2 x_2^2 [2, 2] + 3 x_1 x_2 [2, 1] + 3 x_1 x_2 [1, 2] + 2 x_1^2 [1, 1]"
        );
        assert!(sig_word(&z, &Word::empty()).unwrap().is_one());
        assert_eq!(sig_level(&z, 0), Tensor::unit(2, z.vars()));
        assert_eq!(
            sig_word(&z, &w(&[3])).unwrap_err(),
            Error::LetterOutOfRange { letter: 3, alphabet: 2 }
        );
    }

    #[test]
    fn polynomial_path_values() {
        let z = poly(&["t+2t^2+3t^3", "4t+5t^2+6t^3"]);
        assert_eq!(sig_word(&z, &w(&[1, 2])).unwrap().as_constant(), Some(rat(427, 10)));
        let seg = poly(&["t", "t^2"]);
        assert_eq!(
            segment_sig_word(&seg.segments()[0], &w(&[1, 1])).unwrap().as_constant(),
            Some(rat(1, 2))
        );
    }

    #[test]
    fn core_tensors() {
        assert_eq!(
            caxis_tensor(2, 3).to_string(),
            "1/6 [2, 2, 2] + 1/2 [1, 2, 2] + 1/2 [1, 1, 2] + 1/6 [1, 1, 1]"
        );
        assert_eq!(caxis_tensor(1, 4).to_string(), "1/24 [1, 1, 1, 1]");
        let c3 = caxis_tensor(3, 2);
        for i in 1..=3 {
            for j in 1..=3 {
                let expected = match i.cmp(&j) {
                    std::cmp::Ordering::Less => int(1),
                    std::cmp::Ordering::Equal => rat(1, 2),
                    std::cmp::Ordering::Greater => int(0),
                };
                assert_eq!(c3.rational_coefficient(&w(&[i, j])).unwrap(), expected);
            }
        }
        assert_eq!(cmon_tensor(1, 2).to_string(), "1/2 [1, 1]");
        assert_eq!(cmon_tensor(2, 1).to_string(), "[2] + [1]");
        assert_eq!(cmon_tensor(3, 2).rational_coefficient(&w(&[1, 2])).unwrap(), rat(2, 3));
    }

    #[test]
    fn exponentials() {
        let zero = Tensor::zero(2, &q());
        assert!(tensor_exp(&zero, 3).unwrap().is_zero());
        assert_eq!(tensor_exp_series(&zero, 3).unwrap(), Tensor::unit(2, &q()));
        let a = VariableTable::new(["a"]).unwrap();
        let l = Tensor::parse("a [1]", 2, &a).unwrap();
        assert_eq!(tensor_exp(&l, 3).unwrap(), Tensor::parse("1/6 a^3 [1,1,1]", 2, &a).unwrap());
        let y = VariableTable::new(["y"]).unwrap();
        let br = Tensor::parse("y [1,2] - y [2,1]", 2, &y).unwrap();
        assert_eq!(tensor_exp(&br, 2).unwrap(), br);
        assert!(tensor_exp(&Tensor::unit(2, &q()), 2).is_err());
    }

    #[test]
    fn matrix_action_examples() {
        let a = DenseMatrix::from_integers(&[&[1, 2, 3], &[4, 5, 6]]).unwrap().to_poly(&q());
        let y = poly(&["t", "t^2", "t^3"]);
        let w12 = Tensor::word(2, &q(), w(&[1, 2])).unwrap();
        let pulled = matrix_action(&a.transpose(), &w12).unwrap();
        assert_eq!(sig_pair(&y, &pulled).unwrap().as_constant(), Some(rat(427, 10)));
        let ay = y.linear_image(&a).unwrap();
        assert_eq!(sig_word(&ay, &w(&[1, 2])).unwrap().as_constant(), Some(rat(427, 10)));

        let t = Tensor::parse("2[1,2] - [3] + 1/2[]", 3, &q()).unwrap();
        let id = DenseMatrix::<Rational>::identity(3).to_poly(&q());
        assert_eq!(matrix_action(&id, &t).unwrap(), t);
        let zero = DenseMatrix::<Rational>::zeros(2, 3).to_poly(&q());
        assert!(matrix_action(&zero, &t.truncate(2).level(2)).unwrap().is_zero());
        assert!(matches!(matrix_action(&a, &w12), Err(Error::AlphabetMismatch(2, 3))));
    }

    #[test]
    fn phi_examples() {
        let x = VariableTable::new(["x_1", "x_2"]).unwrap();
        let phi = |s: &str| phi_map(&MultiPoly::parse(s, &x).unwrap()).unwrap().to_string();
        assert_eq!(phi("x_1"), "[1]");
        assert_eq!(phi("x_1 x_2"), "[2, 1] + [1, 2]");
        assert_eq!(phi("x_1^2"), "2 [1, 1]");
        assert_eq!(
            phi_map(&MultiPoly::parse("x_1 + 1", &x).unwrap()).unwrap_err(),
            Error::ConstantTerm
        );
    }

    #[test]
    fn adjoint_example() {
        let xy = VariableTable::new(["x", "y"]).unwrap();
        let p: Vec<MultiPoly> = ["x^2", "y^3", "x - y"]
            .iter()
            .map(|s| MultiPoly::parse(s, &xy).unwrap())
            .collect();
        let x = poly(&["t", "t^2"]);
        let y = x.substitute(&p).unwrap();
        assert_eq!(y.segments()[0].to_string(), "{t^2, t^6, -t^2 + t}");
        let m1 = adjoint_word(&w(&[1]), 2, &p).unwrap();
        assert_eq!(m1.to_string(), "2 [1, 1]");
        for i in 1..=3 {
            let lhs = sig_word(&y, &w(&[i])).unwrap();
            let rhs = sig_pair(&x, &adjoint_word(&w(&[i]), 2, &p).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "letter {i}");
        }
        assert_eq!(adjoint_word(&Word::empty(), 2, &p).unwrap_err(), Error::EmptyWord);
        let bad = vec![MultiPoly::parse("x + 1", &xy).unwrap()];
        assert_eq!(adjoint_word(&w(&[1]), 2, &bad).unwrap_err(), Error::ConstantTerm);
    }

    #[test]
    fn identity_adjoint() {
        let xs = VariableTable::new(["x_1", "x_2", "x_3"]).unwrap();
        let id: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&xs, i)).collect();
        for word in [w(&[1]), w(&[2, 1]), w(&[3, 1, 3]), w(&[1, 2, 3, 2])] {
            let m = adjoint_word(&word, 3, &id).unwrap();
            assert_eq!(m, Tensor::word(3, &q(), word.clone()).unwrap());
        }
    }

    #[test]
    fn signature_json_round_trip() {
        let r = SignatureResult::compute(&z_path(), 2);
        let j = serde_json::to_string(&r.to_json()).unwrap();
        let back: SignatureJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_tensor().unwrap(), r.tensor);
    }
}
