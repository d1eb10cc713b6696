#![allow(dead_code)]

use pathsig::algebra::{DenseMatrix, MultiPoly, Rational, UniPoly, VariableTable, Vars};
use pathsig::paths::{poly_path, Path};
use pathsig::words::{Tensor, Word};
use rand::Rng;

pub fn q() -> Vars {
    VariableTable::empty()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = small_rational(rng);
        if c != Rational::from_integer(0.into()) {
            return c;
        }
    }
}

pub fn random_word<R: Rng>(rng: &mut R, d: usize, len: usize) -> Word {
    Word::new((0..len).map(|_| rng.gen_range(1..=d)).collect())
}

/// A coordinate of degree at most `deg` without constant term.
pub fn random_coordinate<R: Rng>(rng: &mut R, deg: u32) -> UniPoly {
    let coeffs = (0..=deg)
        .map(|e| if e == 0 { MultiPoly::zero(&q()) } else { MultiPoly::constant(&q(), small_rational(rng)) })
        .collect();
    UniPoly::from_coeffs(&q(), coeffs).unwrap()
}

pub fn random_path<R: Rng>(rng: &mut R, d: usize, max_deg: u32, max_segments: usize) -> Path {
    let n = rng.gen_range(1..=max_segments);
    let mut path: Option<Path> = None;
    for _ in 0..n {
        let deg = rng.gen_range(1..=max_deg);
        let seg = poly_path((0..d).map(|_| random_coordinate(rng, deg)).collect()).unwrap();
        path = Some(match path {
            None => seg,
            Some(p) => p.concat(&seg).unwrap(),
        });
    }
    path.unwrap()
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DenseMatrix<MultiPoly> {
    DenseMatrix::from_fn(rows, cols, |_, _| {
        MultiPoly::constant(&q(), Rational::from_integer(rng.gen_range(-3i64..=3).into()))
    })
}

/// A polynomial in the variables of `vars` of degree `1..=max_deg` with no
/// constant term.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &Vars, max_deg: u32) -> MultiPoly {
    let n = vars.len();
    let mut p = MultiPoly::zero(vars);
    for _ in 0..rng.gen_range(1..=4) {
        let deg = rng.gen_range(1..=max_deg);
        let mut m = MultiPoly::constant(vars, small_rational(rng));
        for _ in 0..deg {
            m = &m * &MultiPoly::var(vars, rng.gen_range(0..n));
        }
        p = &p + &m;
    }
    p
}

pub fn random_rational_tensor<R: Rng>(rng: &mut R, d: usize, level: usize, terms: usize) -> Tensor {
    let t = (0..terms).map(|_| (random_word(rng, d, level), small_rational(rng)));
    let mut acc = Tensor::zero(d, &q());
    for (w, c) in t {
        acc = acc.checked_add(&Tensor::word(d, &q(), w).unwrap().scale(&c)).unwrap();
    }
    acc
}

/// Every interleaving of `u` and `v`, counted with multiplicity.
pub fn brute_force_shuffle(u: &Word, v: &Word, d: usize) -> Tensor {
    let n = u.len() + v.len();
    let mut out = Tensor::zero(d, &q());
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut w = Vec::with_capacity(n);
        for pos in 0..n {
            if mask >> pos & 1 == 1 {
                w.push(u.letters()[i]);
                i += 1;
            } else {
                w.push(v.letters()[j]);
                j += 1;
            }
        }
        out = out.checked_add(&Tensor::word(d, &q(), Word::new(w)).unwrap()).unwrap();
    }
    out
}

/// Lyndon test straight from the definition: strictly smaller than every
/// proper rotation.
pub fn is_lyndon_by_rotation(w: &[usize]) -> bool {
    !w.is_empty()
        && (1..w.len()).all(|r| {
            let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
            w < rot.as_slice()
        })
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of Lyndon words of length exactly `n` over `d` letters.
pub fn witt_count(d: usize, n: usize) -> usize {
    let s: i64 = (1..=n)
        .filter(|m| n % m == 0)
        .map(|m| mobius(m) * (d as i64).pow((n / m) as u32))
        .sum();
    (s / n as i64) as usize
}
