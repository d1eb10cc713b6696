mod common;

use common::*;
use num_integer::binomial;
use pathsig::algebra::{MultiPoly, Rational, UniPoly, VariableTable};
use pathsig::lyndon::{lie_basis, lyndon_words};
use pathsig::paths::{poly_path, Path, PathSegment};
use pathsig::signature::{
    adjoint_tensor, adjoint_word, caxis_tensor, caxis_tensor_closed_form, cmon_tensor, cmon_tensor_closed_form,
    matrix_action, phi_map, sig_level, sig_pair, sig_series, sig_word, tensor_exp, tensor_exp_series,
};
use pathsig::words::{Tensor, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn constant(p: &MultiPoly) -> Rational {
    p.as_constant().unwrap()
}

/// `X(a + (b - a) s) - X(a)` for `s ∈ [0, 1]`.
fn restrict(c: &UniPoly, a: &Rational, b: &Rational) -> UniPoly {
    let len = b - a;
    let mut out = vec![Rational::from_integer(0.into()); c.degree().unwrap_or(0) as usize + 1];
    for (&e, coeff) in c.coeffs() {
        let coeff = constant(coeff);
        for j in 0..=e {
            let mut term = coeff.clone() * Rational::from_integer(binomial(e as u64, j as u64).into());
            for _ in 0..e - j {
                term *= a;
            }
            for _ in 0..j {
                term *= &len;
            }
            out[j as usize] += term;
        }
    }
    let coeffs = out.into_iter().map(|c| MultiPoly::constant(&q(), c)).collect();
    UniPoly::from_coeffs(&q(), coeffs).unwrap().without_constant()
}

/// One polynomial segment cut at `t = r` into two.
fn split(s: &PathSegment, r: &Rational) -> Path {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let first = poly_path(s.coords().iter().map(|c| restrict(c, &zero, r)).collect()).unwrap();
    let second = poly_path(s.coords().iter().map(|c| restrict(c, r, &one)).collect()).unwrap();
    first.concat(&second).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signature_is_shuffle_homomorphism(seed in any::<u64>()) {
        let mut g = rng(seed);
        let d = g.gen_range(1..=3);
        let x = random_path(&mut g, d, 3, 3);
        let la = g.gen_range(0..=3);
        let lb = g.gen_range(0..=6 - la);
        let (a, b) = (random_word(&mut g, d, la), random_word(&mut g, d, lb));
        let sh = Tensor::word(d, &q(), a.clone()).unwrap()
            .shuffle(&Tensor::word(d, &q(), b.clone()).unwrap()).unwrap();
        prop_assert_eq!(
            &sig_word(&x, &a).unwrap() * &sig_word(&x, &b).unwrap(),
            sig_pair(&x, &sh).unwrap()
        );
    }

    #[test]
    fn level_one_is_displacement(seed in any::<u64>()) {
        let mut g = rng(seed);
        let d = g.gen_range(1..=3);
        let x = random_path(&mut g, d, 3, 3);
        for i in 0..d {
            let total = x.segments().iter().fold(MultiPoly::zero(&q()), |acc, s| &acc + &s.increment()[i]);
            prop_assert_eq!(sig_word(&x, &Word::letter(i + 1)).unwrap(), total);
        }
    }

    #[test]
    fn chen_matches_single_segment(seed in any::<u64>()) {
        let mut g = rng(seed);
        let d = g.gen_range(1..=3);
        let x = random_path(&mut g, d, 3, 1);
        let r = Rational::new(g.gen_range(1i64..=5).into(), 6.into());
        let cut = split(&x.segments()[0], &r);
        for k in 0..=3 {
            prop_assert_eq!(sig_level(&cut, k), sig_level(&x, k));
        }
    }

    #[test]
    fn chen_series_of_concatenation(seed in any::<u64>()) {
        let mut g = rng(seed);
        let d = g.gen_range(1..=2);
        let x = random_path(&mut g, d, 2, 2);
        let y = random_path(&mut g, d, 2, 2);
        let xy = x.concat(&y).unwrap();
        let k = 4;
        let chen = sig_series(&x, k).concat_truncated(&sig_series(&y, k), k).unwrap();
        prop_assert_eq!(sig_series(&xy, k), chen.clone());
        // the word-by-word route agrees with the tensor route
        for w in Word::all_of_length(d, 3) {
            prop_assert_eq!(sig_word(&xy, &w).unwrap(), chen.coefficient(&w));
        }
    }

    #[test]
    fn linear_equivariance(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (d, e, k) = (g.gen_range(1..=3), g.gen_range(1..=3), g.gen_range(1..=3));
        let x = random_path(&mut g, d, 3, 2);
        let a = random_int_matrix(&mut g, e, d);
        prop_assert_eq!(
            sig_level(&x.linear_image(&a).unwrap(), k),
            matrix_action(&a, &sig_level(&x, k)).unwrap()
        );
        // dual form: pairing with a word of the image
        let w = random_word(&mut g, e, k);
        let pulled = matrix_action(&a.transpose(), &Tensor::word(e, &q(), w.clone()).unwrap()).unwrap();
        prop_assert_eq!(
            sig_word(&x.linear_image(&a).unwrap(), &w).unwrap(),
            sig_pair(&x, &pulled).unwrap()
        );
    }

    #[test]
    fn adjoint_identity(seed in any::<u64>()) {
        let mut g = rng(seed);
        let d = g.gen_range(1..=2);
        let m = g.gen_range(1..=3);
        let vars = VariableTable::new((1..=d).map(|i| format!("x_{i}"))).unwrap();
        let p: Vec<MultiPoly> = (0..m).map(|_| random_poly(&mut g, &vars, 3)).collect();
        let x = random_path(&mut g, d, 2, 2);
        let len = g.gen_range(1..=3);
        let w = random_word(&mut g, m, len);
        prop_assert_eq!(
            sig_word(&x.substitute(&p).unwrap(), &w).unwrap(),
            sig_pair(&x, &adjoint_word(&w, d, &p).unwrap()).unwrap()
        );
    }

    #[test]
    fn adjoint_is_linear(seed in any::<u64>()) {
        let mut g = rng(seed);
        let vars = VariableTable::new(["x_1", "x_2"]).unwrap();
        let p: Vec<MultiPoly> = (0..2).map(|_| random_poly(&mut g, &vars, 2)).collect();
        let t = random_rational_tensor(&mut g, 2, 2, 3);
        let mut sum = Tensor::zero(2, &q());
        for (w, c) in t.terms() {
            sum = sum.checked_add(&adjoint_word(w, 2, &p).unwrap().scale(&constant(c))).unwrap();
        }
        prop_assert_eq!(adjoint_tensor(&t, 2, &p).unwrap(), sum);
    }

    #[test]
    fn exponential_of_lie_element_is_grouplike(seed in any::<u64>()) {
        let mut g = rng(seed);
        let mut l = Tensor::zero(2, &q());
        for w in lyndon_words(2, 3) {
            l = l.checked_add(&lie_basis(&w, 2).unwrap().scale(&small_rational(&mut g))).unwrap();
        }
        let e = tensor_exp_series(&l, 4).unwrap();
        for total in 0..=4 {
            for lu in 0..=total {
                for u in Word::all_of_length(2, lu) {
                    for v in Word::all_of_length(2, total - lu) {
                        let sh = Tensor::word(2, &q(), u.clone()).unwrap()
                            .shuffle(&Tensor::word(2, &q(), v.clone()).unwrap()).unwrap();
                        let rhs = sh.pair_with(|w| Ok(e.coefficient(w))).unwrap();
                        prop_assert_eq!(&e.coefficient(&u) * &e.coefficient(&v), rhs);
                    }
                }
            }
        }
        prop_assert_eq!(tensor_exp(&l, 3).unwrap(), e.level(3));
    }

    #[test]
    fn phi_of_product_is_shuffle(seed in any::<u64>()) {
        let mut g = rng(seed);
        let vars = VariableTable::new(["x_1", "x_2", "x_3"]).unwrap();
        let a = random_poly(&mut g, &vars, 2);
        let b = random_poly(&mut g, &vars, 2);
        prop_assert_eq!(
            phi_map(&(&a * &b)).unwrap(),
            phi_map(&a).unwrap().shuffle(&phi_map(&b).unwrap()).unwrap()
        );
    }
}

#[test]
fn closed_forms_match_integration() {
    for d in 1..=4 {
        for k in 1..=5 {
            assert_eq!(caxis_tensor(d, k), caxis_tensor_closed_form(d, k), "axis d={d} k={k}");
            assert_eq!(cmon_tensor(d, k), cmon_tensor_closed_form(d, k), "monomial d={d} k={k}");
        }
    }
}

#[test]
fn signature_of_axis_path_is_exp_of_letters() {
    // one segment per axis: σ = exp(1)⋯exp(d)
    let mut prod = Tensor::unit(3, &q());
    for i in 1..=3 {
        let e = tensor_exp_series(&Tensor::word(3, &q(), Word::letter(i)).unwrap(), 4).unwrap();
        prod = prod.concat_truncated(&e, 4).unwrap();
    }
    for k in 0..=4 {
        assert_eq!(caxis_tensor(3, k), prod.level(k));
    }
}
