//! The symmetric coalgebra `S^c(A)` and the tensor coalgebra `T^c(A)`.
//!
//! A [`Block`] is a monomial `x_1 ⊙ ⋯ ⊙ x_k` (or `x_1 ⊗ ⋯ ⊗ x_k`) whose
//! factors are canonical words of `A`; a [`CoElem`] is a rational linear
//! combination of blocks. Symmetric blocks keep their factors sorted, with the
//! Koszul sign absorbed into the coefficient.
//!
//! The pullback of the linear field `∇` over the formal diffeomorphism given
//! by a series `f` is computed as `ψ̄ ∘ ∇ ∘ φ`: extend `f` to a coalgebra
//! morphism `φ`, apply `∇` as a coderivation, then project with the inverse
//! series `g` as `Σ g_k μ^[k]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{contract, Error, Result};
use crate::graded::{
    compositions, odd_inversions_parity, set_partitions, sign_scalar, sort_graded, unshuffles,
    Expr, Flavor, Generator, Scalar, Word,
};
use crate::series::{invert, Convention, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoFlavor {
    /// `S^c(A)`, over a graded commutative algebra.
    Symmetric,
    /// `T^c(A)`, over an associative algebra.
    Tensor,
}

impl CoFlavor {
    pub fn algebra_flavor(self) -> Flavor {
        match self {
            CoFlavor::Symmetric => Flavor::Commutative,
            CoFlavor::Tensor => Flavor::Noncommutative,
        }
    }

    /// The series convention this side reads coefficients in.
    pub fn convention(self) -> Convention {
        match self {
            CoFlavor::Symmetric => Convention::Factorial,
            CoFlavor::Tensor => Convention::Plain,
        }
    }

    pub fn for_algebra(flavor: Flavor) -> Self {
        match flavor {
            Flavor::Commutative => CoFlavor::Symmetric,
            Flavor::Noncommutative => CoFlavor::Tensor,
        }
    }
}

/// The factors of a coalgebra monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<Word>);

impl Block {
    pub fn factors(&self) -> &[Word] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(Word::degree).sum()
    }

    fn parities(&self) -> Vec<u8> {
        self.0.iter().map(Word::parity).collect()
    }
}

/// Canonical form of a raw block; `None` if it vanishes.
fn canonical_block(mut factors: Vec<Word>, flavor: CoFlavor) -> Option<(bool, Block)> {
    let negate = match flavor {
        CoFlavor::Symmetric => sort_graded(&mut factors, Word::parity)?,
        CoFlavor::Tensor => false,
    };
    Some((negate, Block(factors)))
}

fn add_entry<K: Ord>(terms: &mut BTreeMap<K, Scalar>, key: K, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// An element of `S^c(A)` or `T^c(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoElem {
    flavor: CoFlavor,
    terms: BTreeMap<Block, Scalar>,
}

impl CoElem {
    pub fn zero(flavor: CoFlavor) -> Self {
        CoElem {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    /// A single monomial with the given factors (canonicalized).
    pub fn monomial(factors: Vec<Word>, flavor: CoFlavor) -> Self {
        let mut out = CoElem::zero(flavor);
        out.add_block(factors, Scalar::one());
        out
    }

    /// `x_1 ⊙ ⋯ ⊙ x_k` for expressions, expanded multilinearly.
    pub fn from_factors(factors: &[Expr], flavor: CoFlavor) -> Result<Self> {
        if factors.iter().any(|e| e.flavor() != flavor.algebra_flavor()) {
            return Err(contract("factor flavor does not match the coalgebra"));
        }
        let mut out = CoElem::zero(flavor);
        let mut stack: Vec<Word> = Vec::with_capacity(factors.len());
        fn rec(
            factors: &[Expr],
            stack: &mut Vec<Word>,
            coeff: Scalar,
            out: &mut CoElem,
        ) {
            let Some((first, rest)) = factors.split_first() else {
                out.add_block(stack.clone(), coeff);
                return;
            };
            for (w, c) in first.iter() {
                stack.push(w.clone());
                rec(rest, stack, &coeff * c, out);
                stack.pop();
            }
        }
        rec(factors, &mut stack, Scalar::one(), &mut out);
        Ok(out)
    }

    fn add_block(&mut self, factors: Vec<Word>, coeff: Scalar) {
        if let Some((neg, block)) = canonical_block(factors, self.flavor) {
            add_entry(&mut self.terms, block, if neg { -coeff } else { coeff });
        }
    }

    pub fn flavor(&self) -> CoFlavor {
        self.flavor
    }

    pub fn terms(&self) -> &BTreeMap<Block, Scalar> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Block, &Scalar)> {
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

    pub fn coeff(&self, factors: &[Word]) -> Scalar {
        match canonical_block(factors.to_vec(), self.flavor) {
            None => Scalar::zero(),
            Some((neg, block)) => {
                let c = self.terms.get(&block).cloned().unwrap_or_else(Scalar::zero);
                if neg {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &CoElem, c: &Scalar) {
        assert_eq!(self.flavor, other.flavor, "adding coalgebra elements of different flavors");
        for (b, x) in &other.terms {
            add_entry(&mut self.terms, b.clone(), x * c);
        }
    }
}

/// All splittings of a block under the deconcatenation coproduct: for the
/// symmetric flavor every `(j, n-j)`-unshuffle with its Koszul sign, for the
/// tensor flavor the `n-1` contiguous cuts.
pub fn deconcatenate(block: &Block, flavor: CoFlavor) -> Vec<(Block, Block, Scalar)> {
    let n = block.len();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    match flavor {
        CoFlavor::Symmetric => {
            let parities = block.parities();
            for j in 1..n {
                for perm in unshuffles(j, n - j) {
                    let sign = sign_scalar(odd_inversions_parity(&perm, &parities));
                    let left = perm[..j].iter().map(|&i| block.0[i].clone()).collect();
                    let right = perm[j..].iter().map(|&i| block.0[i].clone()).collect();
                    out.push((Block(left), Block(right), sign));
                }
            }
        }
        CoFlavor::Tensor => {
            for j in 1..n {
                out.push((
                    Block(block.0[..j].to_vec()),
                    Block(block.0[j..].to_vec()),
                    Scalar::one(),
                ));
            }
        }
    }
    out
}

/// An element of `C ⊗ C` for a coalgebra `C` of either flavor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoTensor {
    flavor: CoFlavor,
    terms: BTreeMap<(Block, Block), Scalar>,
}

impl CoTensor {
    pub fn zero(flavor: CoFlavor) -> Self {
        CoTensor {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Block, Block), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c * (x ⊗ y)`.
    pub fn add_product(&mut self, x: &CoElem, y: &CoElem, c: &Scalar) {
        for (bx, cx) in x.iter() {
            for (by, cy) in y.iter() {
                add_entry(
                    &mut self.terms,
                    (bx.clone(), by.clone()),
                    c * cx * cy,
                );
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CoTensor, c: &Scalar) {
        for (k, x) in &other.terms {
            add_entry(&mut self.terms, k.clone(), x * c);
        }
    }

    /// Applies `left ⊗ right` with an extra sign per term, all bilinearly.
    pub fn map_pairs<F>(&self, mut f: F) -> Result<CoTensor>
    where
        F: FnMut(&Block, &Block) -> Result<(CoElem, CoElem, Scalar)>,
    {
        let mut out = CoTensor::zero(self.flavor);
        for ((l, r), c) in &self.terms {
            let (x, y, s) = f(l, r)?;
            out.add_product(&x, &y, &(c * s));
        }
        Ok(out)
    }
}

/// The deconcatenation coproduct, extended linearly.
pub fn coproduct(x: &CoElem) -> CoTensor {
    let mut out = CoTensor::zero(x.flavor);
    for (block, c) in x.iter() {
        for (l, r, s) in deconcatenate(block, x.flavor) {
            let left = CoElem::monomial(l.0, x.flavor);
            let right = CoElem::monomial(r.0, x.flavor);
            out.add_product(&left, &right, &(c * s));
        }
    }
    out
}

fn check_convention(f: &TruncatedSeries, flavor: CoFlavor) -> Result<()> {
    if f.convention() != flavor.convention() {
        return Err(contract(format!(
            "the {:?} side reads series in the {} convention, got {}",
            flavor,
            flavor.convention(),
            f.convention()
        )));
    }
    Ok(())
}

fn product_of(factors: &[Word], indices: &[usize], flavor: Flavor) -> Result<Expr> {
    let exprs: Vec<Expr> = indices
        .iter()
        .map(|&i| Expr::word(factors[i].clone(), flavor))
        .collect();
    Expr::product(&exprs, flavor)
}

/// The coalgebra morphism `φ` with linear part `f`, evaluated on the
/// monomial whose factors are `args` (elements of `A`).
///
/// Symmetric: a sum over set partitions `{B_1, …, B_k}` of the arguments of
/// `f_{|B_1|}⋯f_{|B_k|} · ε · a_{B_1} ⊙ ⋯ ⊙ a_{B_k}`, where `ε` is the Koszul
/// sign of listing the blocks in order and each `a_B` multiplies its elements
/// in increasing order. Tensor: a sum over compositions of `n` with
/// contiguous products and no signs.
pub fn extend_morphism_on(args: &[Word], f: &TruncatedSeries, flavor: CoFlavor) -> Result<CoElem> {
    let n = args.len();
    if n == 0 {
        return Err(contract("extend_morphism needs at least one argument"));
    }
    check_convention(f, flavor)?;
    if n > f.order() {
        return Err(Error::InsufficientOrder {
            needed: n,
            available: f.order(),
        });
    }
    let alg = flavor.algebra_flavor();
    let mut out = CoElem::zero(flavor);
    match flavor {
        CoFlavor::Symmetric => {
            let parities: Vec<u8> = args.iter().map(Word::parity).collect();
            for partition in set_partitions(n) {
                let coeff: Scalar = partition.iter().map(|b| f.coeff(b.len())).product();
                if coeff.is_zero() {
                    continue;
                }
                let perm: Vec<usize> = partition.iter().flatten().copied().collect();
                let sign = sign_scalar(odd_inversions_parity(&perm, &parities));
                let factors = partition
                    .iter()
                    .map(|b| product_of(args, b, alg))
                    .collect::<Result<Vec<_>>>()?;
                out.add_scaled(&CoElem::from_factors(&factors, flavor)?, &(coeff * sign));
            }
        }
        CoFlavor::Tensor => {
            for parts in compositions(n) {
                let coeff: Scalar = parts.iter().map(|&i| f.coeff(i)).product();
                if coeff.is_zero() {
                    continue;
                }
                let mut start = 0;
                let mut factors = Vec::with_capacity(parts.len());
                for &len in &parts {
                    let idx: Vec<usize> = (start..start + len).collect();
                    factors.push(product_of(args, &idx, alg)?);
                    start += len;
                }
                out.add_scaled(&CoElem::from_factors(&factors, flavor)?, &coeff);
            }
        }
    }
    Ok(out)
}

/// [`extend_morphism_on`] for free generators.
pub fn extend_morphism(
    generators: &[Generator],
    f: &TruncatedSeries,
    flavor: CoFlavor,
) -> Result<CoElem> {
    let args: Vec<Word> = generators.iter().copied().map(Word::generator).collect();
    extend_morphism_on(&args, f, flavor)
}

/// `φ` applied linearly to every monomial of `x`.
pub fn apply_morphism(x: &CoElem, f: &TruncatedSeries) -> Result<CoElem> {
    let mut out = CoElem::zero(x.flavor);
    for (block, c) in x.iter() {
        out.add_scaled(&extend_morphism_on(block.factors(), f, x.flavor)?, c);
    }
    Ok(out)
}

/// `∇` extended to a coderivation:
/// `x_1 ⋯ x_k ↦ Σ_i (-1)^{|x_1|+⋯+|x_{i-1}|} x_1 ⋯ ∇(x_i) ⋯ x_k`.
pub fn coderive_nabla(x: &CoElem) -> CoElem {
    let alg = x.flavor.algebra_flavor();
    let mut out = CoElem::zero(x.flavor);
    for (block, c) in x.iter() {
        let mut prefix_parity = 0u8;
        for (i, factor) in block.factors().iter().enumerate() {
            let image = Expr::word(factor.clone(), alg).apply_nabla();
            for (w, wc) in image.iter() {
                let mut factors = block.factors().to_vec();
                factors[i] = w.clone();
                let mut coeff = c * wc;
                if prefix_parity == 1 {
                    coeff = -coeff;
                }
                out.add_block(factors, coeff);
            }
            prefix_parity ^= factor.parity();
        }
    }
    out
}

/// The series-weighted projection `Σ g_k μ^[k]`: a monomial of length `k`
/// maps to `g_k` times the product of its factors.
pub fn project_series(x: &CoElem, g: &TruncatedSeries) -> Result<Expr> {
    check_convention(g, x.flavor)?;
    let alg = x.flavor.algebra_flavor();
    let mut out = Expr::zero(alg);
    for (block, c) in x.iter() {
        let k = block.len();
        if k > g.order() {
            return Err(Error::InsufficientOrder {
                needed: k,
                available: g.order(),
            });
        }
        let gk = g.coeff(k);
        if gk.is_zero() {
            continue;
        }
        let idx: Vec<usize> = (0..k).collect();
        let prod = product_of(block.factors(), &idx, alg)?;
        out.add_scaled(&prod, &(gk * c));
    }
    Ok(out)
}

/// The pullback `ψ̄ ∘ ∇ ∘ φ` of `∇` over the diffeomorphism with Taylor
/// coefficients `f`, evaluated on `args`.
pub fn pullback_brace_on(args: &[Word], f: &TruncatedSeries, flavor: CoFlavor) -> Result<Expr> {
    let g = invert(f)?;
    let phi = extend_morphism_on(args, f, flavor)?;
    project_series(&coderive_nabla(&phi), &g)
}

/// [`pullback_brace_on`] for free generators.
pub fn pullback_brace(
    generators: &[Generator],
    f: &TruncatedSeries,
    flavor: CoFlavor,
) -> Result<Expr> {
    let args: Vec<Word> = generators.iter().copied().map(Word::generator).collect();
    pullback_brace_on(&args, f, flavor)
}

/// The graded pairing `⟨x_1 ⊙ ⋯ ⊙ x_n | a_1 ⊙ ⋯ ⊙ a_n⟩`, where `x_i` is the
/// dual basis vector of `functionals[i]`:
/// `Σ_σ ε(ρ) Π_i x_i(a_σ(i))` with `ρ` the interleaving
/// `x_1, …, x_n, a_1, …, a_n ↦ x_1, a_σ(1), …, x_n, a_σ(n)`.
pub fn pairing(functionals: &[Generator], elements: &[Generator]) -> Result<Scalar> {
    let n = functionals.len();
    if elements.len() != n {
        return Err(contract(format!(
            "pairing {n} functionals with {} elements",
            elements.len()
        )));
    }
    // A dual vector has degree -|a|, hence the same parity.
    let parities: Vec<u8> = functionals
        .iter()
        .chain(elements)
        .map(Generator::parity)
        .collect();
    let mut total = Scalar::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(
        pos: usize,
        functionals: &[Generator],
        elements: &[Generator],
        parities: &[u8],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        total: &mut Scalar,
    ) {
        let n = functionals.len();
        if pos == n {
            let rho: Vec<usize> = (0..n).flat_map(|i| [i, n + perm[i]]).collect();
            *total += sign_scalar(odd_inversions_parity(&rho, parities));
            return;
        }
        for j in 0..n {
            if used[j] || elements[j].index != functionals[pos].index {
                continue;
            }
            used[j] = true;
            perm[pos] = j;
            rec(pos + 1, functionals, elements, parities, perm, used, total);
            used[j] = false;
        }
    }
    rec(0, functionals, elements, &parities, &mut perm, &mut used, &mut total);
    Ok(total)
}

/// The diagonal `Δ^(n)(a)`: `(1/n!) a ⊙ ⋯ ⊙ a` on the symmetric side and
/// `a ⊗ ⋯ ⊗ a` on the tensor side. An odd `a` gives zero on the symmetric
/// side for `n ≥ 2`.
pub fn diagonal(a: Generator, n: usize, flavor: CoFlavor) -> Result<CoElem> {
    if n == 0 {
        return Err(contract("the diagonal needs n >= 1"));
    }
    let mut out = CoElem::zero(flavor);
    let coeff = match flavor {
        CoFlavor::Symmetric => Scalar::from_integer(crate::graded::factorial(n)).recip(),
        CoFlavor::Tensor => Scalar::one(),
    };
    out.add_block(vec![Word::generator(a); n], coeff);
    Ok(out)
}
