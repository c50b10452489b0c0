mod common;

use braces_core::braces::{borjeson_brace, koszul_brace, BraceFamily};
use braces_core::coalgebra::{
    coderive_nabla, coproduct, diagonal, extend_morphism, extend_morphism_on, pairing, pullback_brace, CoElem,
    CoFlavor, CoTensor,
};
use braces_core::graded::{factorial, int, koszul_sign, unshuffles};
use braces_core::series::{
    c_closed_form, c_from_series, compose, invert, random_invertible, Convention, TruncatedSeries,
};
use braces_core::{Expr, Flavor, Generator, Scalar, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Commutative), Just(Flavor::Noncommutative)]
}

fn coflavor() -> impl Strategy<Value = CoFlavor> {
    prop_oneof![Just(CoFlavor::Symmetric), Just(CoFlavor::Tensor)]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign(odd: bool) -> Scalar {
    if odd {
        int(-1)
    } else {
        int(1)
    }
}

/// A permutation of `0..n` from a shuffled vector.
fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn degrees(n: usize) -> impl Strategy<Value = Vec<i32>> {
    proptest::collection::vec(-2i32..=3, n)
}

fn generators(ds: &[i32]) -> Vec<Generator> {
    ds.iter().enumerate().map(|(i, &d)| Generator::new(i as u32 + 1, d)).collect()
}

proptest! {
    #[test]
    fn normalize_is_idempotent(seed: u64, fl in flavor()) {
        let mut r = rng(seed);
        let d = common::random_degrees(&mut r);
        let x = common::random_expr(&mut r, &d, fl);
        prop_assert_eq!(x.renormalized(), x);
    }

    #[test]
    fn multiply_is_associative(seed: u64, fl in flavor()) {
        let mut r = rng(seed);
        let d = common::random_degrees(&mut r);
        let (x, y, z) = (
            common::random_expr(&mut r, &d, fl),
            common::random_expr(&mut r, &d, fl),
            common::random_expr(&mut r, &d, fl),
        );
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiply_is_graded_commutative(seed: u64) {
        let mut r = rng(seed);
        let d = common::random_degrees(&mut r);
        let fl = Flavor::Commutative;
        let x = common::random_homogeneous(&mut r, &d, fl);
        let y = common::random_homogeneous(&mut r, &d, fl);
        if let (Some(dx), Some(dy)) = (x.degree(), y.degree()) {
            let yx = y.multiply(&x).unwrap().scaled(&sign((dx * dy).rem_euclid(2) == 1));
            prop_assert_eq!(x.multiply(&y).unwrap(), yx);
        }
    }

    #[test]
    fn nabla_squares_to_zero(seed: u64, fl in flavor()) {
        let mut r = rng(seed);
        let d = common::random_degrees(&mut r);
        let x = common::random_expr(&mut r, &d, fl);
        prop_assert!(x.apply_nabla().apply_nabla().is_zero());
        // ∇ raises the degree of every term by one
        for (w, _) in x.apply_nabla().iter() {
            prop_assert!(x.terms().keys().any(|v| v.degree() + 1 == w.degree()));
        }
    }

    #[test]
    fn koszul_sign_is_multiplicative(
        (s, t, parities) in (1usize..=7).prop_flat_map(|n| (permutation(n), permutation(n), proptest::collection::vec(0u8..=1, n)))
    ) {
        // (σ∘τ)[k] = σ[τ[k]]: first reorder by σ, then by τ in the new positions.
        let composed: Vec<usize> = t.iter().map(|&k| s[k]).collect();
        let permuted: Vec<u8> = s.iter().map(|&k| parities[k]).collect();
        let lhs = koszul_sign(&composed, &parities).unwrap();
        let rhs = koszul_sign(&s, &parities).unwrap() * koszul_sign(&t, &permuted).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn brace_outputs_are_homogeneous(ds in (1usize..=5).prop_flat_map(degrees)) {
        let args: Vec<Word> = generators(&ds).into_iter().map(Word::generator).collect();
        let degree = ds.iter().map(|&d| d as i64).sum::<i64>() + 1;
        prop_assert!(koszul_brace(&args).unwrap().is_homogeneous_of(degree));
        prop_assert!(borjeson_brace(&args).unwrap().is_homogeneous_of(degree));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn inversion_round_trips(seed: u64, factorial in any::<bool>()) {
        let conv = if factorial { Convention::Factorial } else { Convention::Plain };
        let f = random_invertible(&mut rng(seed), 12, conv);
        let g = invert(&f).unwrap();
        prop_assert_eq!(invert(&g).unwrap(), f.clone());
        prop_assert!(compose(&f, &g).unwrap().is_identity());
        prop_assert!(compose(&g, &f).unwrap().is_identity());
    }

    #[test]
    fn coderivation_law(seed: u64, co in coflavor()) {
        let mut r = rng(seed);
        let d = common::random_degrees(&mut r);
        let x = common::random_coelem(&mut r, &d, co, 4);
        let mut rhs = CoTensor::zero(co);
        for ((l, rt), c) in coproduct(&x).terms() {
            let lm = CoElem::monomial(l.factors().to_vec(), co);
            let rm = CoElem::monomial(rt.factors().to_vec(), co);
            rhs.add_product(&coderive_nabla(&lm), &rm, c);
            rhs.add_product(&lm, &coderive_nabla(&rm), &(c * sign(l.degree().rem_euclid(2) == 1)));
        }
        prop_assert_eq!(coproduct(&coderive_nabla(&x)), rhs);
        prop_assert!(coderive_nabla(&coderive_nabla(&x)).is_zero());
    }

    #[test]
    fn morphisms_are_comultiplicative(seed: u64, co in coflavor(), ds in (1usize..=5).prop_flat_map(degrees)) {
        let f = random_invertible(&mut rng(seed), 5, co.convention());
        let gens = generators(&ds);
        let x = CoElem::monomial(gens.iter().copied().map(Word::generator).collect(), co);
        let lhs = coproduct(&extend_morphism(&gens, &f, co).unwrap());
        let rhs = coproduct(&x)
            .map_pairs(|l, r| Ok((extend_morphism_on(l.factors(), &f, co)?, extend_morphism_on(r.factors(), &f, co)?, int(1))))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_homogeneous(seed: u64, co in coflavor(), ds in (1usize..=4).prop_flat_map(degrees)) {
        let f = random_invertible(&mut rng(seed), 4, co.convention());
        let out = pullback_brace(&generators(&ds), &f, co).unwrap();
        prop_assert!(out.is_homogeneous_of(ds.iter().map(|&d| d as i64).sum::<i64>() + 1));
    }

    #[test]
    fn generalized_family_matches_pullback(seed: u64, co in coflavor(), ds in (1usize..=4).prop_flat_map(degrees)) {
        let f = random_invertible(&mut rng(seed), 4, co.convention());
        let fam = BraceFamily::generalized_from_series(f.clone(), 4, co.algebra_flavor()).unwrap();
        let gens = generators(&ds);
        let args: Vec<Word> = gens.iter().copied().map(Word::generator).collect();
        prop_assert_eq!(fam.evaluate(&args, co.algebra_flavor()).unwrap(), pullback_brace(&gens, &f, co).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn closed_form_matches_series(seed: u64) {
        let f: TruncatedSeries = random_invertible(&mut rng(seed), 10, Convention::Factorial);
        let g = invert(&f).unwrap();
        let c = c_from_series(&f, &g, 9).unwrap();
        for r in 0..=9 {
            prop_assert_eq!(&c_closed_form(&f, &g, r).unwrap(), c.get(r).unwrap());
        }
    }
}

#[test]
fn pairing_gives_factorials() {
    let a = Generator::new(1, 0);
    for n in 1..=6 {
        let p = pairing(&vec![a; n], &vec![a; n]).unwrap();
        assert_eq!(p, Scalar::from_integer(factorial(n)));
    }
    // an odd generator squares to zero
    let b = Generator::new(1, 1);
    assert_eq!(pairing(&[b, b], &[b, b]).unwrap(), int(0));
}

#[test]
fn diagonals_match_series_coefficients() {
    let a = Generator::new(1, 2);
    for n in 1..=6 {
        let block = vec![Word::generator(a); n];
        let sym = diagonal(a, n, CoFlavor::Symmetric).unwrap();
        assert_eq!(sym.coeff(&block), Scalar::new(1.into(), factorial(n)));
        assert_eq!(diagonal(a, n, CoFlavor::Tensor).unwrap().coeff(&block), int(1));
    }
}

#[test]
fn unshuffle_signs_agree_with_sorting() {
    // Sorting x_σ(1)⋯x_σ(n) back into x_1⋯x_n costs ε(σ).
    let fl = Flavor::Commutative;
    for bits in 0u8..16 {
        let parities: Vec<u8> = (0..4).map(|i| bits >> i & 1).collect();
        let gens: Vec<Expr> = parities
            .iter()
            .enumerate()
            .map(|(i, &p)| Expr::generator(Generator::new(i as u32 + 1, p as i32), fl))
            .collect();
        let sorted = Expr::product(&gens, fl).unwrap();
        for i in 0..=4 {
            for perm in unshuffles(i, 4 - i) {
                let reordered: Vec<Expr> = perm.iter().map(|&k| gens[k].clone()).collect();
                let e = koszul_sign(&perm, &parities).unwrap();
                assert_eq!(Expr::product(&reordered, fl).unwrap(), sorted.scaled(&int(e as i64)));
            }
        }
    }
}
