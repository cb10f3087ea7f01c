//! Shared sparse term storage for `WeylElement` and `CommPoly`.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::Zero;

use crate::scalar::Scalar;

/// Exponent pair `(i, j)` of a normal-form monomial `X^i Y^j` (or `x^i y^j`).
///
/// The canonical term order is lexicographic by `(i + j, i)`, which determines
/// the pair uniquely and keeps all renderings and iterations deterministic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Exp {
    pub i: u32,
    pub j: u32,
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = (u64::from(self.i) + u64::from(self.j), self.i);
        let b = (u64::from(other.i) + u64::from(other.j), other.i);
        a.cmp(&b)
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite association from exponent pairs to nonzero scalars.
/// The zero element is the empty map; no stored coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub(crate) struct TermMap {
    terms: BTreeMap<Exp, Scalar>,
}

impl TermMap {
    pub fn new() -> Self {
        TermMap::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, e: Exp) -> Option<&Scalar> {
        self.terms.get(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Exp, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Adds `c` to the coefficient at `e`, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exp, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn single(e: Exp, c: Scalar) -> Self {
        let mut m = TermMap::new();
        m.add_term(e, c);
        m
    }

    pub fn add(&self, other: &TermMap) -> TermMap {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> TermMap {
        let mut out = TermMap::new();
        for (e, c) in self.iter() {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TermMap) -> TermMap {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> TermMap {
        let mut out = TermMap::new();
        if s.is_zero() {
            return out;
        }
        for (e, c) in self.iter() {
            out.add_term(e, c * s);
        }
        out
    }
}

/// Renders a term map in the canonical order, e.g. `X + 2*X^2*Y^3 - 1/2`.
pub(crate) fn render(map: &TermMap, xname: &str, yname: &str) -> String {
    use num_traits::One;

    if map.is_zero() {
        return "0".to_string();
    }
    let one = Scalar::one();
    let mut out = String::new();
    for (idx, (e, c)) in map.iter().enumerate() {
        let negative = c < &Scalar::zero();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let abs = if negative { -c.clone() } else { c.clone() };
        let mut factors: Vec<String> = Vec::new();
        if e.i == 0 && e.j == 0 {
            factors.push(abs.to_string());
        } else {
            if abs != one {
                factors.push(abs.to_string());
            }
            if e.i == 1 {
                factors.push(xname.to_string());
            } else if e.i > 1 {
                factors.push(format!("{}^{}", xname, e.i));
            }
            if e.j == 1 {
                factors.push(yname.to_string());
            } else if e.j > 1 {
                factors.push(format!("{}^{}", yname, e.j));
            }
        }
        let _ = write!(out, "{}", factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn e(i: u32, j: u32) -> Exp {
        Exp { i, j }
    }

    #[test]
    fn canonical_order_is_graded_then_by_x_exponent() {
        let mut m = TermMap::new();
        m.add_term(e(3, 6), rat(1));
        m.add_term(e(1, 0), rat(1));
        m.add_term(e(2, 3), rat(2));
        let order: Vec<_> = m.iter().map(|(x, _)| (x.i, x.j)).collect();
        assert_eq!(order, vec![(1, 0), (2, 3), (3, 6)]);
    }

    #[test]
    fn cancelling_terms_are_removed() {
        let mut m = TermMap::new();
        m.add_term(e(1, 1), ratio(1, 2));
        m.add_term(e(1, 1), ratio(-1, 2));
        assert!(m.is_zero());
    }

    #[test]
    fn rendering_examples() {
        let mut m = TermMap::new();
        m.add_term(e(1, 0), rat(1));
        m.add_term(e(2, 3), rat(2));
        m.add_term(e(3, 6), rat(1));
        assert_eq!(render(&m, "X", "Y"), "X + 2*X^2*Y^3 + X^3*Y^6");

        let mut n = TermMap::new();
        n.add_term(e(0, 0), rat(-1));
        n.add_term(e(1, 1), rat(-1));
        assert_eq!(render(&n, "X", "Y"), "-1 - X*Y");

        let mut k = TermMap::new();
        k.add_term(e(2, 0), ratio(3, 2));
        assert_eq!(render(&k, "X", "Y"), "3/2*X^2");

        assert_eq!(render(&TermMap::new(), "X", "Y"), "0");
    }
}
