//! Normal-form elements of the first Weyl algebra and their commutative shadows.
//!
//! A `WeylElement` is a finite sum `sum a_ij X^i Y^j` stored in normal form
//! (all `X` powers to the left). Multiplication rewrites products back into
//! that basis via the closed-form normal-ordering coefficients
//! `X^a Y^b * X^c Y^d = sum_k k! C(b,k) C(c,k) X^{a+c-k} Y^{b+d-k}`,
//! which agrees with iterated rewriting of `YX` into `XY + 1`
//! (see [`crate::oracle::rewrite_mul`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{rat, ratio, Scalar};
use crate::terms::{render, Exp, TermMap};

/// An element of the first Weyl algebra in normal form.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct WeylElement(pub(crate) TermMap);

/// An element of the commutative polynomial ring `K[x,y]`, the image of the
/// basis exchange `psi`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct CommPoly(pub(crate) TermMap);

macro_rules! common_element_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn zero() -> Self {
                $ty(TermMap::new())
            }

            pub fn one() -> Self {
                Self::monomial(0, 0, Scalar::one())
            }

            pub fn monomial(i: u32, j: u32, c: Scalar) -> Self {
                $ty(TermMap::single(Exp { i, j }, c))
            }

            /// Builds an element from `(i, j, coefficient)` triples.
            pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
                let mut map = TermMap::new();
                for &(i, j, c) in terms {
                    map.add_term(Exp { i, j }, rat(c));
                }
                $ty(map)
            }

            /// Like [`Self::from_terms`] with fractional coefficients `num/den`.
            pub fn from_terms_frac(terms: &[(u32, u32, i64, i64)]) -> Self {
                let mut map = TermMap::new();
                for &(i, j, n, d) in terms {
                    map.add_term(Exp { i, j }, ratio(n, d));
                }
                $ty(map)
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn is_one(&self) -> bool {
                self == &Self::one()
            }

            pub fn num_terms(&self) -> usize {
                self.0.len()
            }

            /// True when the support is a single point.
            pub fn is_monomial(&self) -> bool {
                self.0.len() == 1
            }

            /// Terms in the canonical order, as `(i, j, coefficient)`.
            pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> {
                self.0.iter().map(|(e, c)| (e.i, e.j, c))
            }

            pub fn coeff(&self, i: u32, j: u32) -> Option<&Scalar> {
                self.0.get(Exp { i, j })
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                $ty(self.0.scale(s))
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty(self.0.add(&rhs.0))
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty(self.0.sub(&rhs.0))
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(self.0.neg())
            }
        }
    };
}

common_element_impl!(WeylElement);
common_element_impl!(CommPoly);

impl WeylElement {
    pub fn x() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    /// Normal-form product.
    ///
    /// Bilinear and associative; on basis monomials it expands
    /// `X^a Y^b * X^c Y^d = sum_k k! C(b,k) C(c,k) X^{a+c-k} Y^{b+d-k}`,
    /// with the coefficient carried incrementally as an exact integer.
    pub fn normal_mul(&self, other: &WeylElement) -> WeylElement {
        let mut out = TermMap::new();
        for (ea, ca) in self.0.iter() {
            for (eb, cb) in other.0.iter() {
                let base = ca * cb;
                let (a, b, c, d) = (ea.i, ea.j, eb.i, eb.j);
                out.add_term(Exp { i: a + c, j: b + d }, base.clone());
                let mut coef = BigInt::one();
                for k in 1..=b.min(c) {
                    // k! C(b,k) C(c,k) grows by (b-k+1)(c-k+1)/k at each step;
                    // the division is exact.
                    coef = coef * BigInt::from(b - k + 1) * BigInt::from(c - k + 1)
                        / BigInt::from(k);
                    out.add_term(
                        Exp {
                            i: a + c - k,
                            j: b + d - k,
                        },
                        &base * Scalar::from_integer(coef.clone()),
                    );
                }
            }
        }
        WeylElement(out)
    }

    /// Commutator `[P, Q] = PQ - QP` in normal form.
    pub fn bracket(&self, other: &WeylElement) -> WeylElement {
        &self.normal_mul(other) - &other.normal_mul(self)
    }

    /// `k`-fold normal product; `pow(0)` is the identity.
    pub fn pow(&self, k: u32) -> WeylElement {
        let mut out = WeylElement::one();
        for _ in 0..k {
            out = out.normal_mul(self);
        }
        out
    }

    /// The coefficient-preserving basis exchange `X^i Y^j -> x^i y^j`.
    pub fn psi(&self) -> CommPoly {
        CommPoly(self.0.clone())
    }

    /// Image under the automorphism `X -> Y`, `Y -> -X`, renormalized.
    pub fn rotated(&self) -> WeylElement {
        let mut out = WeylElement::zero();
        for (e, c) in self.0.iter() {
            // X^i Y^j maps to Y^i (-X)^j = (-1)^j Y^i X^j, then normal-ordered.
            let sign = if e.j % 2 == 0 { c.clone() } else { -c.clone() };
            let word = WeylElement::monomial(0, e.i, Scalar::one())
                .normal_mul(&WeylElement::monomial(e.j, 0, Scalar::one()));
            out = &out + &word.scale(&sign);
        }
        out
    }

    /// Image under the automorphism `X -> X`, `Y -> Y + mu X^sigma`,
    /// renormalized. Requires `sigma >= 1`.
    pub fn sheared(&self, mu: &Scalar, sigma: u32) -> Result<WeylElement> {
        if sigma == 0 {
            return Err(Error::ZeroShearExponent);
        }
        let image_y = &WeylElement::y() + &WeylElement::monomial(sigma, 0, mu.clone());
        // Cache (Y + mu X^sigma)^j up to the largest j that occurs.
        let mut powers: Vec<WeylElement> = vec![WeylElement::one()];
        let mut out = WeylElement::zero();
        for (e, c) in self.0.iter() {
            while powers.len() <= e.j as usize {
                let next = powers.last().unwrap().normal_mul(&image_y);
                powers.push(next);
            }
            let term = WeylElement::monomial(e.i, 0, c.clone())
                .normal_mul(&powers[e.j as usize]);
            out = &out + &term;
        }
        Ok(out)
    }

    /// The number of nonzero homogeneous components of the Z-grading by
    /// `i - j`; the zero element has mass 0.
    pub fn mass(&self) -> usize {
        let mut levels: std::collections::BTreeSet<i64> = Default::default();
        for (e, _) in self.0.iter() {
            levels.insert(i64::from(e.i) - i64::from(e.j));
        }
        levels.len()
    }

    /// Partition of the terms by the grading level `i - j`, highest level
    /// first. Concatenating the components reconstructs the element.
    pub fn graded_components(&self) -> Vec<(i64, WeylElement)> {
        let mut by_level: std::collections::BTreeMap<i64, TermMap> = Default::default();
        for (e, c) in self.0.iter() {
            by_level
                .entry(i64::from(e.i) - i64::from(e.j))
                .or_default()
                .add_term(e, c.clone());
        }
        by_level
            .into_iter()
            .rev()
            .map(|(lvl, map)| (lvl, WeylElement(map)))
            .collect()
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.normal_mul(rhs)
    }
}

impl CommPoly {
    /// Commutative product.
    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = TermMap::new();
        for (ea, ca) in self.0.iter() {
            for (eb, cb) in other.0.iter() {
                out.add_term(
                    Exp {
                        i: ea.i + eb.i,
                        j: ea.j + eb.j,
                    },
                    ca * cb,
                );
            }
        }
        CommPoly(out)
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut out = CommPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Inverse of the basis exchange: `x^i y^j -> X^i Y^j`.
    pub fn psi_inv(&self) -> WeylElement {
        WeylElement(self.0.clone())
    }
}

impl Mul for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        CommPoly::mul(self, rhs)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.0, "X", "Y"))
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.0, "x", "y"))
    }
}
