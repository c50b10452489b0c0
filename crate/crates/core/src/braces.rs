//! Closed-form brace families.
//!
//! Every family here is computed directly from its defining formula, without
//! going through the coalgebra pipeline, so that the two can be compared.
//!
//! Sign conventions: permuting arguments costs the Koszul sign `ε(σ)`, and
//! moving the degree +1 operator `∇` past an element `x` costs `(-1)^{|x|}`.
//!
//! The generalized symmetric formula weights the term whose `∇` window holds
//! `i` of the `n` arguments by `c_{n-i} f_i`, with `c_0 = g_1`. This is the
//! index that reproduces the pullback; the variant `c_{n-i+1}` does not.

use num_traits::{One, Zero};

use crate::error::{contract, Error, Result};
use crate::graded::{
    odd_inversions_parity, sign_scalar, unshuffles, Expr, Flavor, Scalar, Word,
};
use crate::series::{
    c_from_series, c_table_from_series, invert, CoefficientTable, CoefficientVector, Convention,
    TruncatedSeries,
};

/// Product of the selected arguments, in the given order.
fn product(args: &[Word], indices: &[usize], flavor: Flavor) -> Expr {
    let exprs: Vec<Expr> = indices
        .iter()
        .map(|&i| Expr::word(args[i].clone(), flavor))
        .collect();
    Expr::product(&exprs, flavor).expect("non-empty product of same-flavor factors")
}

/// `left · ∇(window) · right`, any of `left`/`right` possibly empty.
fn nabla_term(args: &[Word], left: &[usize], window: &[usize], right: &[usize], flavor: Flavor) -> Expr {
    let mut out = product(args, window, flavor).apply_nabla();
    if !left.is_empty() {
        out = product(args, left, flavor).multiply(&out).expect("same flavor");
    }
    if !right.is_empty() {
        out = out.multiply(&product(args, right, flavor)).expect("same flavor");
    }
    out
}

fn parity_of(args: &[Word], indices: impl IntoIterator<Item = usize>) -> bool {
    indices.into_iter().map(|i| args[i].parity()).sum::<u8>() % 2 == 1
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Usage("braces need at least one argument".into()));
    }
    Ok(())
}

fn sum(terms: &[Expr], flavor: Flavor) -> Expr {
    let mut out = Expr::zero(flavor);
    for t in terms {
        out.add_scaled(t, &Scalar::one());
    }
    out
}

/// The `2^n - 1` signed terms of `Φ_n`, ordered by window size `i` from `n`
/// down to 1 and then by unshuffle.
pub fn koszul_terms(args: &[Word]) -> Result<Vec<Expr>> {
    let n = args.len();
    check_arity(n)?;
    let flavor = Flavor::Commutative;
    let parities: Vec<u8> = args.iter().map(Word::parity).collect();
    let mut terms = Vec::with_capacity((1 << n) - 1);
    for i in (1..=n).rev() {
        for perm in unshuffles(i, n - i) {
            let negative = ((n - i) % 2 == 1) ^ odd_inversions_parity(&perm, &parities);
            let term = nabla_term(args, &[], &perm[..i], &perm[i..], flavor);
            terms.push(term.scaled(&sign_scalar(negative)));
        }
    }
    Ok(terms)
}

/// The Koszul brace
/// `Φ_n(a_1..a_n) = Σ_i (-1)^{n-i} Σ_σ ε(σ) ∇(a_σ(1)⋯a_σ(i)) a_σ(i+1)⋯a_σ(n)`
/// over `(i, n-i)`-unshuffles.
pub fn koszul_brace(args: &[Word]) -> Result<Expr> {
    Ok(sum(&koszul_terms(args)?, Flavor::Commutative))
}

/// The terms of Börjeson's `b_n`: one for `n = 1`, three for `n = 2`, four
/// for `n ≥ 3`.
pub fn borjeson_terms(args: &[Word]) -> Result<Vec<Expr>> {
    let n = args.len();
    check_arity(n)?;
    let flavor = Flavor::Noncommutative;
    let all: Vec<usize> = (0..n).collect();
    let mut terms = vec![nabla_term(args, &[], &all, &[], flavor)];
    if n == 1 {
        return Ok(terms);
    }
    let first_odd = args[0].parity() == 1;
    terms.push(-&nabla_term(args, &[], &all[..n - 1], &[n - 1], flavor));
    terms.push(nabla_term(args, &[0], &all[1..], &[], flavor).scaled(&sign_scalar(!first_odd)));
    if n >= 3 {
        terms.push(
            nabla_term(args, &[0], &all[1..n - 1], &[n - 1], flavor)
                .scaled(&sign_scalar(first_odd)),
        );
    }
    Ok(terms)
}

/// Börjeson's brace
/// `b_n = ∇(a_1⋯a_n) - ∇(a_1⋯a_{n-1})a_n - (-1)^{|a_1|}a_1∇(a_2⋯a_n)
///  + (-1)^{|a_1|}a_1∇(a_2⋯a_{n-1})a_n`.
pub fn borjeson_brace(args: &[Word]) -> Result<Expr> {
    Ok(sum(&borjeson_terms(args)?, Flavor::Noncommutative))
}

/// Coefficient data of a generalized brace: the one-index vector `c_r` on
/// the symmetric side, the two-sided table `C(p, s)` on the tensor side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BraceCoefficients {
    Symmetric(CoefficientVector),
    Tensor(CoefficientTable),
}

impl BraceCoefficients {
    pub fn flavor(&self) -> Flavor {
        match self {
            BraceCoefficients::Symmetric(_) => Flavor::Commutative,
            BraceCoefficients::Tensor(_) => Flavor::Noncommutative,
        }
    }

    /// Coefficients for the series `f` (in the convention its side reads),
    /// good up to `max_arity` arguments.
    pub fn from_series(f: &TruncatedSeries, max_arity: usize, flavor: Flavor) -> Result<Self> {
        if max_arity == 0 {
            return Err(Error::Usage("max arity must be at least 1".into()));
        }
        let g = invert(f)?;
        Ok(match flavor {
            Flavor::Commutative => BraceCoefficients::Symmetric(c_from_series(f, &g, max_arity - 1)?),
            Flavor::Noncommutative => {
                BraceCoefficients::Tensor(c_table_from_series(f, &g, max_arity - 1)?)
            }
        })
    }
}

/// The generalized brace attached to a formal diffeomorphism with Taylor
/// coefficients `f`.
///
/// Symmetric (`f` in factorial convention):
/// `Σ_i Σ_σ c_{n-i} f_i ε(σ) ∇(a_σ(1)⋯a_σ(i)) a_σ(i+1)⋯a_σ(n)`.
///
/// Tensor (`f` in plain convention): a sum over contiguous windows
/// `a_1⋯a_p ∇(a_{p+1}⋯a_{p+i}) a_{p+i+1}⋯a_n` weighted by
/// `C(p, s) f_i (-1)^{|a_1|+⋯+|a_p|}` with `s = n - p - i`.
pub fn generalized_brace(args: &[Word], f: &TruncatedSeries, coeffs: &BraceCoefficients) -> Result<Expr> {
    let n = args.len();
    check_arity(n)?;
    if n > f.order() {
        return Err(Error::InsufficientOrder {
            needed: n,
            available: f.order(),
        });
    }
    match coeffs {
        BraceCoefficients::Symmetric(c) => {
            if f.convention() != Convention::Factorial {
                return Err(contract("the symmetric generalized brace reads f in the factorial convention"));
            }
            let Some(_) = c.get(n - 1) else {
                return Err(Error::InsufficientOrder {
                    needed: n,
                    available: c.values().len(),
                });
            };
            let flavor = Flavor::Commutative;
            let parities: Vec<u8> = args.iter().map(Word::parity).collect();
            let mut out = Expr::zero(flavor);
            for i in 1..=n {
                let weight = &c.values()[n - i] * f.coeff(i);
                if weight.is_zero() {
                    continue;
                }
                for perm in unshuffles(i, n - i) {
                    let term = nabla_term(args, &[], &perm[..i], &perm[i..], flavor);
                    let sign = sign_scalar(odd_inversions_parity(&perm, &parities));
                    out.add_scaled(&term, &(&weight * sign));
                }
            }
            Ok(out)
        }
        BraceCoefficients::Tensor(table) => {
            if f.convention() != Convention::Plain {
                return Err(contract("the tensor generalized brace reads f in the plain convention"));
            }
            if table.max_total() + 1 < n {
                return Err(Error::InsufficientOrder {
                    needed: n,
                    available: table.max_total() + 1,
                });
            }
            let flavor = Flavor::Noncommutative;
            let mut out = Expr::zero(flavor);
            for p in 0..n {
                for i in 1..=n - p {
                    let s = n - p - i;
                    let weight = table.get(p, s).expect("within table bounds") * f.coeff(i);
                    if weight.is_zero() {
                        continue;
                    }
                    let left: Vec<usize> = (0..p).collect();
                    let window: Vec<usize> = (p..p + i).collect();
                    let right: Vec<usize> = (p + i..n).collect();
                    let term = nabla_term(args, &left, &window, &right, flavor);
                    let sign = sign_scalar(parity_of(args, 0..p));
                    out.add_scaled(&term, &(weight * sign));
                }
            }
            Ok(out)
        }
    }
}

/// Which brace family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraceKind {
    Koszul,
    Borjeson,
    /// `(∇, 0, 0, …)`, usable on either side.
    Trivial,
    Generalized {
        f: TruncatedSeries,
        coeffs: BraceCoefficients,
    },
}

/// A deliberate corruption of one brace, for checking that the homotopy
/// checkers reject wrong structures. Term indices follow [`koszul_terms`]
/// and [`borjeson_terms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    FlipKoszulTerm { arity: usize, term: usize },
    FlipBorjesonTerm { arity: usize, term: usize },
    DropBorjesonTerm { arity: usize, term: usize },
}

impl Mutation {
    /// Number of terms of the brace a mutation at `arity` can address.
    fn term_count(kind: &BraceKind, arity: usize) -> usize {
        match kind {
            BraceKind::Koszul => (1usize << arity) - 1,
            BraceKind::Borjeson => match arity {
                1 => 1,
                2 => 3,
                _ => 4,
            },
            _ => 0,
        }
    }
}

/// A brace family `λ = (λ_1, λ_2, …)`, optionally mutated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceFamily {
    kind: BraceKind,
    mutation: Option<Mutation>,
}

impl BraceFamily {
    pub fn koszul() -> Self {
        BraceFamily {
            kind: BraceKind::Koszul,
            mutation: None,
        }
    }

    pub fn borjeson() -> Self {
        BraceFamily {
            kind: BraceKind::Borjeson,
            mutation: None,
        }
    }

    pub fn trivial() -> Self {
        BraceFamily {
            kind: BraceKind::Trivial,
            mutation: None,
        }
    }

    pub fn generalized(f: TruncatedSeries, coeffs: BraceCoefficients) -> Result<Self> {
        let wanted = match coeffs.flavor() {
            Flavor::Commutative => Convention::Factorial,
            Flavor::Noncommutative => Convention::Plain,
        };
        if f.convention() != wanted {
            return Err(contract(format!(
                "a {} generalized family reads f in the {wanted} convention",
                coeffs.flavor()
            )));
        }
        Ok(BraceFamily {
            kind: BraceKind::Generalized { f, coeffs },
            mutation: None,
        })
    }

    /// The generalized family of `f`, with coefficients computed from the
    /// series, valid up to `max_arity` arguments.
    pub fn generalized_from_series(f: TruncatedSeries, max_arity: usize, flavor: Flavor) -> Result<Self> {
        let coeffs = BraceCoefficients::from_series(&f, max_arity, flavor)?;
        Self::generalized(f, coeffs)
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Result<Self> {
        let (arity, term) = match (&self.kind, mutation) {
            (BraceKind::Koszul, Mutation::FlipKoszulTerm { arity, term }) => (arity, term),
            (
                BraceKind::Borjeson,
                Mutation::FlipBorjesonTerm { arity, term } | Mutation::DropBorjesonTerm { arity, term },
            ) => (arity, term),
            _ => return Err(contract("mutation does not apply to this brace family")),
        };
        if arity == 0 || term >= Mutation::term_count(&self.kind, arity) {
            return Err(contract(format!("no term {term} in the arity {arity} brace")));
        }
        self.mutation = Some(mutation);
        Ok(self)
    }

    pub fn kind(&self) -> &BraceKind {
        &self.kind
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    /// The algebra flavor the family lives on; `None` for the trivial family,
    /// which makes sense on both.
    pub fn flavor(&self) -> Option<Flavor> {
        match &self.kind {
            BraceKind::Koszul => Some(Flavor::Commutative),
            BraceKind::Borjeson => Some(Flavor::Noncommutative),
            BraceKind::Trivial => None,
            BraceKind::Generalized { coeffs, .. } => Some(coeffs.flavor()),
        }
    }

    pub fn name(&self) -> &'static str {
        match &self.kind {
            BraceKind::Koszul => "koszul",
            BraceKind::Borjeson => "borjeson",
            BraceKind::Trivial => "trivial",
            BraceKind::Generalized { .. } => "generalized",
        }
    }

    /// `λ_k(args)` with `k = args.len()`, arguments being words of `flavor`.
    pub fn evaluate(&self, args: &[Word], flavor: Flavor) -> Result<Expr> {
        let n = args.len();
        check_arity(n)?;
        if let Some(own) = self.flavor() {
            if own != flavor {
                return Err(contract(format!(
                    "the {} family lives on {own} algebras, not {flavor}",
                    self.name()
                )));
            }
        }
        match &self.kind {
            BraceKind::Koszul => {
                let mut terms = koszul_terms(args)?;
                if let Some(Mutation::FlipKoszulTerm { arity, term }) = self.mutation {
                    if arity == n {
                        terms[term] = -&terms[term];
                    }
                }
                Ok(sum(&terms, flavor))
            }
            BraceKind::Borjeson => {
                let mut terms = borjeson_terms(args)?;
                match self.mutation {
                    Some(Mutation::FlipBorjesonTerm { arity, term }) if arity == n => {
                        terms[term] = -&terms[term];
                    }
                    Some(Mutation::DropBorjesonTerm { arity, term }) if arity == n => {
                        terms[term] = Expr::zero(flavor);
                    }
                    _ => {}
                }
                Ok(sum(&terms, flavor))
            }
            BraceKind::Trivial => Ok(if n == 1 {
                Expr::word(args[0].clone(), flavor).apply_nabla()
            } else {
                Expr::zero(flavor)
            }),
            BraceKind::Generalized { f, coeffs } => generalized_brace(args, f, coeffs),
        }
    }

    /// `λ_k` extended multilinearly to expression arguments.
    pub fn evaluate_exprs(&self, args: &[Expr], flavor: Flavor) -> Result<Expr> {
        if args.iter().any(|a| a.flavor() != flavor) {
            return Err(contract("argument flavor mismatch"));
        }
        let mut out = Expr::zero(flavor);
        let mut stack = Vec::with_capacity(args.len());
        self.expand(args, &mut stack, Scalar::one(), flavor, &mut out)?;
        Ok(out)
    }

    fn expand(
        &self,
        args: &[Expr],
        stack: &mut Vec<Word>,
        coeff: Scalar,
        flavor: Flavor,
        out: &mut Expr,
    ) -> Result<()> {
        let Some((first, rest)) = args.split_first() else {
            let value = self.evaluate(stack, flavor)?;
            out.add_scaled(&value, &coeff);
            return Ok(());
        };
        for (w, c) in first.iter() {
            stack.push(w.clone());
            self.expand(rest, stack, &coeff * c, flavor, out)?;
            stack.pop();
        }
        Ok(())
    }
}
