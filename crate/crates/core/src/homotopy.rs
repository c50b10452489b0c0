//! Symbolic verification of the L∞ and A∞ relations for a brace family,
//! exhaustively over the parities of the arguments.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::braces::BraceFamily;
use crate::error::{contract, Result};
use crate::graded::{odd_inversions_parity, sign_scalar, unshuffles, Expr, Flavor, ParityVector, Scalar, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub arity: usize,
    pub parities: ParityVector,
    pub residual: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked_arities: Vec<usize>,
    pub parity_vectors_checked: usize,
    pub first_failure: Option<Failure>,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        if self.first_failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// The individual summands `ε(σ) λ_j(λ_i(a_σ(1..i)), a_σ(i+1..n))` of the
/// L∞ relation, before they are added up.
pub fn l_infinity_summands(family: &BraceFamily, args: &[Word]) -> Result<Vec<Expr>> {
    let flavor = Flavor::Commutative;
    let n = args.len();
    let parities: Vec<u8> = args.iter().map(Word::parity).collect();
    let mut out = Vec::new();
    for i in 1..=n {
        for perm in unshuffles(i, n - i) {
            let inner_args: Vec<Word> = perm[..i].iter().map(|&k| args[k].clone()).collect();
            let inner = family.evaluate(&inner_args, flavor)?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_args = vec![inner];
            outer_args.extend(perm[i..].iter().map(|&k| Expr::word(args[k].clone(), flavor)));
            let value = family.evaluate_exprs(&outer_args, flavor)?;
            out.push(value.scaled(&sign_scalar(odd_inversions_parity(&perm, &parities))));
        }
    }
    Ok(out)
}

/// The summands `(-1)^{|a_1..a_{i-1}|} m_u(a_1..a_{i-1}, m_v(a_i..a_{i+v-1}), ..)`
/// of the A∞ relation.
pub fn a_infinity_summands(family: &BraceFamily, args: &[Word]) -> Result<Vec<Expr>> {
    let flavor = Flavor::Noncommutative;
    let n = args.len();
    let mut out = Vec::new();
    for v in 1..=n {
        let u = n + 1 - v;
        for i in 1..=u {
            let inner = family.evaluate(&args[i - 1..i - 1 + v], flavor)?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_args: Vec<Expr> = args[..i - 1]
                .iter()
                .map(|w| Expr::word(w.clone(), flavor))
                .collect();
            outer_args.push(inner);
            outer_args.extend(args[i - 1 + v..].iter().map(|w| Expr::word(w.clone(), flavor)));
            let value = family.evaluate_exprs(&outer_args, flavor)?;
            let prefix_odd = args[..i - 1].iter().map(Word::parity).sum::<u8>() % 2 == 1;
            out.push(value.scaled(&sign_scalar(prefix_odd)));
        }
    }
    Ok(out)
}

fn total(summands: Vec<Expr>, flavor: Flavor) -> Expr {
    let mut out = Expr::zero(flavor);
    for s in &summands {
        out.add_scaled(s, &Scalar::one());
    }
    out
}

pub fn l_infinity_residual(family: &BraceFamily, args: &[Word]) -> Result<Expr> {
    Ok(total(l_infinity_summands(family, args)?, Flavor::Commutative))
}

pub fn a_infinity_residual(family: &BraceFamily, args: &[Word]) -> Result<Expr> {
    Ok(total(a_infinity_summands(family, args)?, Flavor::Noncommutative))
}

type Residual = fn(&BraceFamily, &[Word]) -> Result<Expr>;

fn sweep(family: &BraceFamily, n_max: usize, flavor: Flavor, residual: Residual) -> Result<VerificationReport> {
    if family.flavor().is_some_and(|f| f != flavor) {
        return Err(contract(format!(
            "the {} family does not produce {flavor} expressions",
            family.name()
        )));
    }
    let mut report = VerificationReport {
        checked_arities: Vec::new(),
        parity_vectors_checked: 0,
        first_failure: None,
    };
    for n in 1..=n_max {
        let vectors: Vec<ParityVector> = ParityVector::all(n).collect();
        // Collected in enumeration order, so the first failure is the same
        // regardless of scheduling.
        let results: Vec<Result<Expr>> = vectors
            .par_iter()
            .map(|pv| residual(family, &pv.generator_words()))
            .collect();
        report.checked_arities.push(n);
        report.parity_vectors_checked += vectors.len();
        for (pv, r) in vectors.into_iter().zip(results) {
            let r = r?;
            if !r.is_zero() {
                report.first_failure = Some(Failure {
                    arity: n,
                    parities: pv,
                    residual: r,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Checks `Σ_{i+j=n+1} Σ_σ ε(σ) λ_j(λ_i(..), ..) = 0` for every arity up to
/// `n_max` and every parity vector, stopping at the first arity that fails.
pub fn check_l_infinity(family: &BraceFamily, n_max: usize) -> Result<VerificationReport> {
    sweep(family, n_max, Flavor::Commutative, l_infinity_residual)
}

/// Checks `Σ_{u+v=n+1} Σ_i ± m_u(.., m_v(..), ..) = 0` in the same way.
pub fn check_a_infinity(family: &BraceFamily, n_max: usize) -> Result<VerificationReport> {
    sweep(family, n_max, Flavor::Noncommutative, a_infinity_residual)
}
