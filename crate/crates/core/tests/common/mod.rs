#![allow(dead_code)]

use braces_core::coalgebra::{CoElem, CoFlavor};
use braces_core::graded::ratio;
use braces_core::{Atom, Expr, Flavor, Generator, Word};
use rand::Rng;

/// A random atom over generators `a1..a4`, whose degrees are fixed by
/// `degrees`, possibly wrapping a nested `∇`.
fn random_atom<R: Rng>(rng: &mut R, degrees: &[i32; 4], depth: u32) -> Atom {
    if depth > 0 && rng.gen_bool(0.3) {
        let len = rng.gen_range(1..=2);
        let inner = (0..len).map(|_| random_atom(rng, degrees, depth - 1)).collect();
        Atom::Nabla(Word::new(inner))
    } else {
        let i = rng.gen_range(0..4);
        Atom::Gen(Generator::new(i as u32 + 1, degrees[i]))
    }
}

pub fn random_degrees<R: Rng>(rng: &mut R) -> [i32; 4] {
    [0; 4].map(|_| rng.gen_range(-1..=2))
}

pub fn random_word<R: Rng>(rng: &mut R, degrees: &[i32; 4]) -> Word {
    let len = rng.gen_range(1..=3);
    Word::new((0..len).map(|_| random_atom(rng, degrees, 2)).collect())
}

/// A random expression with up to four terms, canonicalized.
pub fn random_expr<R: Rng>(rng: &mut R, degrees: &[i32; 4], flavor: Flavor) -> Expr {
    let terms = rng.gen_range(1..=4);
    let raw: Vec<_> = (0..terms)
        .map(|_| {
            let c = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            (c, random_word(rng, degrees))
        })
        .collect();
    Expr::normalize(raw, flavor)
}

/// A random homogeneous expression: every term has the degree of `template`.
pub fn random_homogeneous<R: Rng>(rng: &mut R, degrees: &[i32; 4], flavor: Flavor) -> Expr {
    let template = random_word(rng, degrees);
    let mut out = Expr::word(template.clone(), flavor);
    for _ in 0..rng.gen_range(0..3) {
        let w = random_word(rng, degrees);
        if w.degree() == template.degree() {
            out.add_scaled(&Expr::word(w, flavor), &ratio(rng.gen_range(-3..=3), 1));
        }
    }
    out
}

/// A random coalgebra element: a few monomials of length up to `max_len`.
pub fn random_coelem<R: Rng>(rng: &mut R, degrees: &[i32; 4], flavor: CoFlavor, max_len: usize) -> CoElem {
    let alg = flavor.algebra_flavor();
    let mut out = CoElem::zero(flavor);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(1..=max_len);
        let factors: Vec<Expr> = (0..len)
            .map(|_| Expr::word(random_word(rng, degrees), alg))
            .collect();
        let c = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=2));
        out.add_scaled(&CoElem::from_factors(&factors, flavor).unwrap(), &c);
    }
    out
}
