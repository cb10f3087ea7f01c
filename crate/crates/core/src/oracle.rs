//! Independent reference implementations used to cross-check the fast paths.
//!
//! Nothing in here shares code with the closed-form product or the sparse
//! polynomial power: `rewrite_mul` normalizes words letter by letter with the
//! defining relation, `matrix_rep` represents elements as operators on a
//! truncated polynomial space, and `dense_pow_tcount` expands univariate
//! powers by dense integer convolution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::terms::{Exp, TermMap};
use crate::weyl::WeylElement;

/// Multiplies two elements by brute-force word rewriting: every adjacent `YX`
/// pair is replaced by `XY` plus the word with the pair deleted, until all
/// words are normally ordered.
pub fn rewrite_mul(p: &WeylElement, q: &WeylElement) -> WeylElement {
    let mut cache: BTreeMap<(u32, u32), WeylElement> = BTreeMap::new();
    let mut out = TermMap::new();
    for (a, b, ca) in p.terms() {
        for (c, d, cb) in q.terms() {
            // Only the middle Y^b X^c block needs rewriting; the outer X^a
            // and Y^d just shift the exponents.
            let mid = cache
                .entry((b, c))
                .or_insert_with(|| rewrite_word(b, c))
                .clone();
            for (m, n, cw) in mid.terms() {
                out.add_term(
                    Exp {
                        i: a + m,
                        j: n + d,
                    },
                    ca * cb * cw,
                );
            }
        }
    }
    WeylElement(out)
}

/// Normal form of the word `Y^b X^c` by iterated rewriting of `YX`.
fn rewrite_word(b: u32, c: u32) -> WeylElement {
    // false = X, true = Y
    let word: Vec<bool> = std::iter::repeat(true)
        .take(b as usize)
        .chain(std::iter::repeat(false).take(c as usize))
        .collect();
    let mut agenda: BTreeMap<Vec<bool>, Scalar> = BTreeMap::new();
    agenda.insert(word, Scalar::one());
    let mut done = TermMap::new();
    while let Some(w) = agenda.keys().next().cloned() {
        let coeff = agenda.remove(&w).unwrap();
        match w.windows(2).position(|pair| pair[0] && !pair[1]) {
            None => {
                let xs = w.iter().filter(|&&l| !l).count() as u32;
                let ys = w.iter().filter(|&&l| l).count() as u32;
                done.add_term(Exp { i: xs, j: ys }, coeff);
            }
            Some(k) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                let mut deleted = w.clone();
                deleted.drain(k..k + 2);
                for next in [swapped, deleted] {
                    let sum = match agenda.get(&next) {
                        Some(v) => v + &coeff,
                        None => coeff.clone(),
                    };
                    if sum.is_zero() {
                        agenda.remove(&next);
                    } else {
                        agenda.insert(next, sum);
                    }
                }
            }
        }
    }
    WeylElement(done)
}

/// Dense square matrix of exact rationals, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Scalar>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Scalar) {
        self.data[row * self.n + col] = v;
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: Scalar) {
        let slot = &mut self.data[row * self.n + col];
        *slot = &*slot + &v;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let mut out = RatMatrix::zero(self.n);
        for r in 0..self.n {
            for k in 0..self.n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..self.n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.add_to(r, c, a * b);
                    }
                }
            }
        }
        out
    }

    /// Column-wise equality on the first `cols` columns.
    pub fn eq_on_columns(&self, other: &RatMatrix, cols: usize) -> bool {
        if self.n != other.n {
            return false;
        }
        for c in 0..cols.min(self.n) {
            for r in 0..self.n {
                if self.get(r, c) != other.get(r, c) {
                    return false;
                }
            }
        }
        true
    }
}

/// The operator of `p` on polynomials in one variable `t` of degree at most
/// `max_deg`, with `X` acting as multiplication by `t` (truncated) and `Y`
/// as `d/dt`. Column `m` is the image of `t^m` in the monomial basis.
///
/// Representation is exact below the truncation: for inputs of degree at most
/// `max_deg - deg_x(p) - deg_x(q)` the matrix of a product equals the product
/// of the matrices.
pub fn matrix_rep(p: &WeylElement, max_deg: u32) -> RatMatrix {
    let n = max_deg as usize + 1;
    let mut out = RatMatrix::zero(n);
    for (a, b, c) in p.terms() {
        for m in b..=max_deg {
            // X^a Y^b t^m = m (m-1) ... (m-b+1) t^{m-b+a}
            let target = m - b + a;
            if target > max_deg {
                continue;
            }
            let mut falling = BigInt::one();
            for s in 0..b {
                falling *= BigInt::from(m - s);
            }
            out.add_to(
                target as usize,
                m as usize,
                c * Scalar::from_integer(falling),
            );
        }
    }
    out
}

/// Largest `X`-degree of an element; 0 for the zero element.
pub fn x_degree(p: &WeylElement) -> u32 {
    p.terms().map(|(i, _, _)| i).max().unwrap_or(0)
}

/// Term counts of `f^1, ..., f^max_k` for an integer-coefficient sparse
/// polynomial `f`, by incremental dense `i64` convolution. Coefficient growth
/// must stay within `i64`; callers keep inputs small.
pub fn dense_power_tcounts(support: &[u32], coeffs: &[i64], max_k: u32) -> Vec<usize> {
    assert_eq!(support.len(), coeffs.len());
    let deg = support.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = Vec::with_capacity(max_k as usize);
    let mut acc = vec![0i64; 1];
    acc[0] = 1;
    let mut cur_deg = 0usize;
    for _ in 0..max_k {
        let mut next = vec![0i64; cur_deg + deg + 1];
        for (idx, v) in acc[..=cur_deg].iter().enumerate() {
            if *v == 0 {
                continue;
            }
            for (&e, &c) in support.iter().zip(coeffs) {
                next[idx + e as usize] += v * c;
            }
        }
        cur_deg += deg;
        acc = next;
        counts.push(acc.iter().filter(|v| **v != 0).count());
    }
    counts
}

/// Number of nonzero terms of `f^k`; see [`dense_power_tcounts`].
pub fn dense_pow_tcount(support: &[u32], coeffs: &[i64], k: u32) -> usize {
    if k == 0 {
        return 1;
    }
    *dense_power_tcounts(support, coeffs, k).last().unwrap()
}
