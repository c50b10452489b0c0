//! Free graded (non)commutative algebra over an uninterpreted square-zero
//! operator `∇` of degree +1.
//!
//! Elements are finite rational linear combinations of [`Word`]s. A word is a
//! product of [`Atom`]s, and an atom is either a generator or `∇` applied to
//! a canonical word. In the commutative flavor atoms are kept sorted, with the
//! Koszul sign of the sort absorbed into the coefficient; a word with a
//! repeated odd atom is zero.

mod combinatorics;

pub use combinatorics::{
    bell_number, binomial, compositions, factorial, koszul_sign, set_partitions, unshuffles,
};
pub(crate) use combinatorics::{odd_inversions_parity, sign_scalar, sort_graded};

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{contract, Result};

/// Exact rational coefficient.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// A free generator `a_index` of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub index: u32,
    pub degree: i32,
}

impl Generator {
    pub fn new(index: u32, degree: i32) -> Self {
        Generator { index, degree }
    }

    pub fn parity(&self) -> u8 {
        self.degree.rem_euclid(2) as u8
    }
}

/// Whether the ambient algebra is graded commutative or merely associative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Commutative,
    Noncommutative,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Commutative => f.write_str("commutative"),
            Flavor::Noncommutative => f.write_str("noncommutative"),
        }
    }
}

/// A letter of a word: a generator, or `∇` applied to a whole word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Gen(Generator),
    Nabla(Word),
}

impl Atom {
    pub fn degree(&self) -> i64 {
        match self {
            Atom::Gen(g) => g.degree as i64,
            Atom::Nabla(w) => w.degree() + 1,
        }
    }

    pub fn parity(&self) -> u8 {
        self.degree().rem_euclid(2) as u8
    }
}

// Nabla atoms sort before generators so that rendered terms read `∇(..) a b`.
impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Atom::Nabla(a), Atom::Nabla(b)) => a.cmp(b),
            (Atom::Nabla(_), Atom::Gen(_)) => Ordering::Less,
            (Atom::Gen(_), Atom::Nabla(_)) => Ordering::Greater,
            (Atom::Gen(a), Atom::Gen(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A product of atoms. Words order by length first, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Atom>);

impl Word {
    /// Wraps raw atoms without canonicalizing them. Use [`Expr::normalize`]
    /// to bring arbitrary input into canonical form.
    pub fn new(atoms: Vec<Atom>) -> Self {
        Word(atoms)
    }

    pub fn generator(g: Generator) -> Self {
        Word(vec![Atom::Gen(g)])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(Atom::degree).sum()
    }

    pub fn parity(&self) -> u8 {
        self.degree().rem_euclid(2) as u8
    }

    fn is_single_nabla(&self) -> bool {
        matches!(self.0.as_slice(), [Atom::Nabla(_)])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts already-canonical atoms for the commutative flavor.
fn sort_atoms(atoms: &mut [Atom]) -> Option<bool> {
    sort_graded(atoms, Atom::parity)
}

/// Full recursive canonicalization of a raw word.
fn canonical_word(atoms: Vec<Atom>, flavor: Flavor) -> Option<(bool, Word)> {
    let mut negate = false;
    let mut out = Vec::with_capacity(atoms.len());
    for atom in atoms {
        match atom {
            Atom::Gen(g) => out.push(Atom::Gen(g)),
            Atom::Nabla(inner) => {
                let (neg, inner) = canonical_word(inner.0, flavor)?;
                // ∇ of an empty word has no meaning here, ∇∇ = 0.
                if inner.is_empty() || inner.is_single_nabla() {
                    return None;
                }
                negate ^= neg;
                out.push(Atom::Nabla(inner));
            }
        }
    }
    if flavor == Flavor::Commutative {
        negate ^= sort_atoms(&mut out)?;
    }
    Some((negate, Word(out)))
}

/// An exact rational linear combination of canonical words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    flavor: Flavor,
    terms: BTreeMap<Word, Scalar>,
}

impl Expr {
    pub fn zero(flavor: Flavor) -> Self {
        Expr {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(g: Generator, flavor: Flavor) -> Self {
        Self::word(Word::generator(g), flavor)
    }

    /// A single canonical word with coefficient one.
    pub fn word(word: Word, flavor: Flavor) -> Self {
        Self::normalize([(Scalar::one(), word)], flavor)
    }

    /// Brings an arbitrary list of terms into canonical form: nested `∇`
    /// words are canonicalized, `∇∇` vanishes, commutative words are sorted
    /// with their Koszul sign, words with a repeated odd atom vanish, like
    /// words merge and zero coefficients are dropped.
    pub fn normalize<I>(raw: I, flavor: Flavor) -> Self
    where
        I: IntoIterator<Item = (Scalar, Word)>,
    {
        let mut out = Expr::zero(flavor);
        for (coeff, word) in raw {
            if coeff.is_zero() {
                continue;
            }
            if let Some((neg, word)) = canonical_word(word.0, flavor) {
                out.add_canonical(word, if neg { -coeff } else { coeff });
            }
        }
        out
    }

    /// Re-normalizes an existing expression. Idempotent on canonical input.
    pub fn renormalized(&self) -> Self {
        Self::normalize(
            self.terms.iter().map(|(w, c)| (c.clone(), w.clone())),
            self.flavor,
        )
    }

    fn add_canonical(&mut self, word: Word, coeff: Scalar) {
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The common degree of all terms, or `None` for zero or inhomogeneous
    /// expressions.
    pub fn degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(Word::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.terms.keys().all(|w| w.degree() == degree)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Expr::zero(self.flavor);
        }
        Expr {
            flavor: self.flavor,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Expr, c: &Scalar) {
        assert_eq!(self.flavor, other.flavor, "adding expressions of different flavors");
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_canonical(w.clone(), x * c);
        }
    }

    /// Bilinear concatenation followed by normalization.
    pub fn multiply(&self, other: &Expr) -> Result<Expr> {
        if self.flavor != other.flavor {
            return Err(contract(format!(
                "cannot multiply a {} expression by a {} one",
                self.flavor, other.flavor
            )));
        }
        let mut out = Expr::zero(self.flavor);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut atoms = Vec::with_capacity(w1.len() + w2.len());
                atoms.extend_from_slice(&w1.0);
                atoms.extend_from_slice(&w2.0);
                let mut coeff = c1 * c2;
                if self.flavor == Flavor::Commutative {
                    match sort_atoms(&mut atoms) {
                        None => continue,
                        Some(true) => coeff = -coeff,
                        Some(false) => {}
                    }
                }
                out.add_canonical(Word(atoms), coeff);
            }
        }
        Ok(out)
    }

    /// Product of a sequence of same-flavor expressions, left to right.
    pub fn product<'a, I>(factors: I, flavor: Flavor) -> Result<Expr>
    where
        I: IntoIterator<Item = &'a Expr>,
    {
        let mut iter = factors.into_iter();
        let Some(first) = iter.next() else {
            return Err(contract("empty product: the algebra has no unit"));
        };
        if first.flavor != flavor {
            return Err(contract("flavor mismatch in product"));
        }
        iter.try_fold(first.clone(), |acc, e| acc.multiply(e))
    }

    /// The linear operator `∇`: a word becomes the single atom `∇(word)`,
    /// except that `∇(∇(w)) = 0`.
    pub fn apply_nabla(&self) -> Expr {
        let mut out = Expr::zero(self.flavor);
        for (w, c) in &self.terms {
            if w.is_single_nabla() {
                continue;
            }
            out.add_canonical(Word(vec![Atom::Nabla(w.clone())]), c.clone());
        }
        out
    }
}

impl std::ops::Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scaled(&-Scalar::one())
    }
}

/// One parity (degree mod 2) per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityVector(Vec<u8>);

impl ParityVector {
    pub fn new(parities: Vec<u8>) -> Result<Self> {
        if parities.iter().any(|&p| p > 1) {
            return Err(contract("parities must be 0 or 1"));
        }
        Ok(ParityVector(parities))
    }

    pub fn even(n: usize) -> Self {
        ParityVector(vec![0; n])
    }

    /// All `2^n` parity vectors of length `n`, in binary counting order with
    /// the first generator as the most significant bit.
    pub fn all(n: usize) -> impl Iterator<Item = ParityVector> {
        (0u64..1 << n).map(move |bits| {
            ParityVector((0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect())
        })
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generators `a_1, …, a_n` whose degrees equal the parities.
    pub fn generators(&self) -> Vec<Generator> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| Generator::new(i as u32 + 1, p as i32))
            .collect()
    }

    pub fn generator_words(&self) -> Vec<Word> {
        self.generators().into_iter().map(Word::generator).collect()
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32, d: i32) -> Generator {
        Generator::new(i, d)
    }

    fn w(gens: &[Generator]) -> Word {
        Word::new(gens.iter().copied().map(Atom::Gen).collect())
    }

    fn nab(word: Word) -> Atom {
        Atom::Nabla(word)
    }

    #[test]
    fn even_past_odd_keeps_sign() {
        let (a, b) = (g(1, 1), g(2, 0));
        let e = Expr::normalize([(int(1), w(&[b, a]))], Flavor::Commutative);
        assert_eq!(e, Expr::word(w(&[a, b]), Flavor::Commutative));
        assert_eq!(e.coeff(&w(&[a, b])), int(1));
    }

    #[test]
    fn odd_square_vanishes() {
        let a = g(1, 1);
        let e = Expr::normalize([(int(1), w(&[a, a]))], Flavor::Commutative);
        assert!(e.is_zero());
        let even = g(2, 2);
        let e = Expr::normalize([(int(3), w(&[even, even]))], Flavor::Commutative);
        assert_eq!(e.coeff(&w(&[even, even])), int(3));
    }

    #[test]
    fn noncommutative_keeps_order() {
        let (a, b) = (g(1, 1), g(2, 0));
        let e = Expr::normalize([(int(1), w(&[b, a]))], Flavor::Noncommutative);
        assert_eq!(e.coeff(&w(&[b, a])), int(1));
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn multiply_examples() {
        let (a, b, c) = (g(1, 0), g(2, 0), g(3, 0));
        for flavor in [Flavor::Commutative, Flavor::Noncommutative] {
            let ea = Expr::generator(a, flavor);
            let eb = Expr::generator(b, flavor);
            let ec = Expr::generator(c, flavor);
            assert_eq!(ea.multiply(&eb).unwrap(), Expr::word(w(&[a, b]), flavor));
            let lhs = (&ea + &eb).multiply(&ec).unwrap();
            let rhs = &Expr::word(w(&[a, c]), flavor) + &Expr::word(w(&[b, c]), flavor);
            assert_eq!(lhs, rhs);
        }
        let (a, b) = (g(1, 1), g(2, 1));
        let ea = Expr::generator(a, Flavor::Commutative);
        let eb = Expr::generator(b, Flavor::Commutative);
        assert_eq!(
            eb.multiply(&ea).unwrap(),
            -&Expr::word(w(&[a, b]), Flavor::Commutative)
        );
    }

    #[test]
    fn multiply_rejects_flavor_mismatch() {
        let a = g(1, 0);
        let x = Expr::generator(a, Flavor::Commutative);
        let y = Expr::generator(a, Flavor::Noncommutative);
        assert!(matches!(x.multiply(&y), Err(crate::Error::Contract(_))));
    }

    #[test]
    fn nabla_examples() {
        let (a, b) = (g(1, 1), g(2, 0));
        let f = Flavor::Commutative;
        let ea = Expr::generator(a, f);
        let na = ea.apply_nabla();
        assert_eq!(na, Expr::word(Word::new(vec![nab(w(&[a]))]), f));
        assert!(na.apply_nabla().is_zero());
        let x = na.multiply(&Expr::generator(b, f)).unwrap();
        let nx = x.apply_nabla();
        assert_eq!(nx.len(), 1);
        let (word, _) = nx.iter().next().unwrap();
        assert_eq!(word.atoms().len(), 1);
        assert_eq!(nx.degree(), Some(x.degree().unwrap() + 1));
    }

    #[test]
    fn nested_nabla_in_raw_input_is_canonicalized() {
        let (a, b) = (g(1, 1), g(2, 1));
        let f = Flavor::Commutative;
        // ∇(b a) = -∇(a b)
        let raw = Word::new(vec![nab(w(&[b, a]))]);
        let e = Expr::normalize([(int(1), raw)], f);
        assert_eq!(e.coeff(&Word::new(vec![nab(w(&[a, b]))])), int(-1));
        // ∇(∇(a)) = 0
        let raw = Word::new(vec![nab(Word::new(vec![nab(w(&[a]))]))]);
        assert!(Expr::normalize([(int(1), raw)], f).is_zero());
    }

    #[test]
    fn nabla_atoms_sort_first() {
        let a = g(1, 0);
        let word = Word::new(vec![Atom::Gen(g(2, 0)), nab(w(&[a]))]);
        let e = Expr::normalize([(int(1), word)], Flavor::Commutative);
        let (canon, _) = e.iter().next().unwrap();
        assert!(matches!(canon.atoms()[0], Atom::Nabla(_)));
    }

    #[test]
    fn parity_vectors_enumerate() {
        let all: Vec<_> = ParityVector::all(3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[1].as_slice(), &[0, 0, 1]);
        assert!(ParityVector::new(vec![0, 2]).is_err());
    }
}
