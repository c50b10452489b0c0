//! Signs and enumerations: Koszul signs, unshuffles, compositions, set partitions.

use num_bigint::BigInt;
use num_traits::One;

use super::Scalar;
use crate::error::{contract, Result};

/// Whether the Koszul sign of `perm` is negative. `perm[k]` is the original
/// position of the symbol that ends up at position `k`.
pub(crate) fn odd_inversions_parity(perm: &[usize], parities: &[u8]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        if parities[perm[i]] == 0 {
            continue;
        }
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && parities[perm[j]] == 1 {
                odd = !odd;
            }
        }
    }
    odd
}

/// Sorts graded items, returning `None` when an odd item repeats (the
/// product vanishes) and otherwise whether the Koszul sign of the sort is
/// negative.
pub(crate) fn sort_graded<T: Ord>(items: &mut [T], parity: impl Fn(&T) -> u8) -> Option<bool> {
    let parities: Vec<u8> = items.iter().map(&parity).collect();
    let mut odd = false;
    for i in 0..items.len() {
        if parities[i] == 0 {
            continue;
        }
        for j in i + 1..items.len() {
            if parities[j] == 1 && items[i] > items[j] {
                odd = !odd;
            }
        }
    }
    items.sort();
    let repeated_odd = items
        .windows(2)
        .any(|w| w[0] == w[1] && parity(&w[0]) == 1);
    (!repeated_odd).then_some(odd)
}

pub(crate) fn sign_scalar(negative: bool) -> Scalar {
    if negative {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// The Koszul sign `ε(σ; ν_1, …, ν_n)` defined by
/// `ν_1 ∧ ⋯ ∧ ν_n = ε · ν_σ(1) ∧ ⋯ ∧ ν_σ(n)` in the free graded commutative
/// algebra. Permutations are zero-based: `perm[k] = σ(k+1) - 1`.
pub fn koszul_sign(perm: &[usize], parities: &[u8]) -> Result<i32> {
    if perm.len() != parities.len() {
        return Err(contract(format!(
            "permutation of length {} with {} parities",
            perm.len(),
            parities.len()
        )));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(contract(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(if odd_inversions_parity(perm, parities) { -1 } else { 1 })
}

/// All `(u, v)`-unshuffles in lexicographic order, zero-based.
pub fn unshuffles(u: usize, v: usize) -> Vec<Vec<usize>> {
    let n = u + v;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(u);
    fn rec(start: usize, n: usize, u: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == u {
            let mut perm = chosen.clone();
            perm.extend((0..n).filter(|x| !chosen.contains(x)));
            out.push(perm);
            return;
        }
        for x in start..n {
            if n - x < u - chosen.len() {
                break;
            }
            chosen.push(x);
            rec(x + 1, n, u, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, u, &mut chosen, &mut out);
    out
}

/// All ordered tuples of positive integers summing to `r`, shortest first,
/// lexicographic within a length. `r = 0` gives the single empty tuple.
pub fn compositions(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    // Cut points of 1..r-1 encoded as bits.
    let mut out: Vec<Vec<usize>> = (0u64..1 << (r - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut last = 0;
            for cut in 1..r {
                if mask >> (cut - 1) & 1 == 1 {
                    parts.push(cut - last);
                    last = cut;
                }
            }
            parts.push(r - last);
            parts
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All set partitions of `{0, …, n-1}`: blocks sorted internally and ordered
/// by their minimal element. Generated from restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(pos: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = labels.len();
        if pos == n {
            let blocks = if n == 0 { 0 } else { max + 1 };
            let mut parts = vec![Vec::new(); blocks];
            for (i, &l) in labels.iter().enumerate() {
                parts[l].push(i);
            }
            out.push(parts);
            return;
        }
        let limit = if pos == 0 { 0 } else { max + 1 };
        for l in 0..=limit {
            labels[pos] = l;
            rec(pos + 1, max.max(l), labels, out);
        }
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Bell numbers via the Bell triangle.
pub fn bell_number(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}
