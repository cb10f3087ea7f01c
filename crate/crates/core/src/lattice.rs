//! Lattice points and primitive directions.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A point of the exponent lattice.
///
/// Support points have nonnegative coordinates, but differences and endpoint
/// formulas produce signed intermediates, so both coordinates are signed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const fn new(i: i64, j: i64) -> Self {
        LatticePoint { i, j }
    }

    pub fn cross(self, other: Self) -> i64 {
        self.i * other.j - self.j * other.i
    }

    pub fn is_origin(self) -> bool {
        self.i == 0 && self.j == 0
    }

    /// Alignment `A ~ B`: both nonzero and equal up to a nonzero rational scale.
    pub fn aligned(self, other: Self) -> bool {
        !self.is_origin() && !other.is_origin() && self.cross(other) == 0
    }

    pub fn sub(self, other: Self) -> Self {
        LatticePoint::new(self.i - other.i, self.j - other.j)
    }

    pub fn add(self, other: Self) -> Self {
        LatticePoint::new(self.i + other.i, self.j + other.j)
    }

    pub fn scaled(self, n: i64) -> Self {
        LatticePoint::new(self.i * n, self.j * n)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A primitive lattice direction: an integer pair with `gcd(rho, sigma) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Direction {
    rho: i64,
    sigma: i64,
}

impl Direction {
    /// Rejects non-coprime pairs (in particular `(0, 0)`) instead of reducing
    /// them silently.
    pub fn new(rho: i64, sigma: i64) -> Result<Self> {
        if rho.gcd(&sigma) != 1 {
            return Err(Error::NotCoprime(rho, sigma));
        }
        Ok(Direction { rho, sigma })
    }

    /// In-crate constructor for pairs that are coprime by construction.
    pub(crate) const fn raw(rho: i64, sigma: i64) -> Self {
        Direction { rho, sigma }
    }

    pub fn rho(self) -> i64 {
        self.rho
    }

    pub fn sigma(self) -> i64 {
        self.sigma
    }

    pub fn cross(self, other: Self) -> i64 {
        self.rho * other.sigma - self.sigma * other.rho
    }

    /// Membership in the open half of directions with `rho + sigma > 0`.
    pub fn is_positive(self) -> bool {
        self.rho + self.sigma > 0
    }

    pub fn antipode(self) -> Self {
        Direction {
            rho: -self.rho,
            sigma: -self.sigma,
        }
    }

    /// Counterclockwise order: `d < e` iff `d x e > 0`.
    ///
    /// Only defined within an interval that does not contain a direction
    /// together with its opposite; comparing antipodal directions is refused.
    pub fn cmp_ccw(self, other: Self) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        if self == other.antipode() {
            return Err(Error::UndefinedOrder(self, other));
        }
        Ok(if self.cross(other) > 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        })
    }

    /// The order on the closed interval from `(1,-1)` to `(-1,1)`: those two
    /// endpoints compare as smallest and largest, everything else by the
    /// counterclockwise rule. Both arguments must satisfy `rho + sigma >= 0`.
    pub fn cmp_closed_nonneg(self, other: Self) -> Result<Ordering> {
        if self.rho + self.sigma < 0 || other.rho + other.sigma < 0 {
            return Err(Error::UndefinedOrder(self, other));
        }
        let lo = Direction::raw(1, -1);
        let hi = Direction::raw(-1, 1);
        if self == lo && other == hi {
            return Ok(Ordering::Less);
        }
        if self == hi && other == lo {
            return Ok(Ordering::Greater);
        }
        self.cmp_ccw(other)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rho, self.sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(r: i64, s: i64) -> Direction {
        Direction::new(r, s).unwrap()
    }

    #[test]
    fn rejects_non_coprime_pairs() {
        assert_eq!(Direction::new(2, 4), Err(Error::NotCoprime(2, 4)));
        assert_eq!(Direction::new(0, 0), Err(Error::NotCoprime(0, 0)));
        assert!(Direction::new(0, 1).is_ok());
        assert!(Direction::new(3, -1).is_ok());
    }

    #[test]
    fn ccw_order_within_an_interval() {
        assert_eq!(d(1, -1).cmp_ccw(d(1, 1)), Ok(Ordering::Less));
        assert_eq!(d(1, 1).cmp_ccw(d(0, 1)), Ok(Ordering::Less));
        assert_eq!(d(0, 1).cmp_ccw(d(1, 0)), Ok(Ordering::Greater));
        assert_eq!(d(1, 0).cmp_ccw(d(1, 0)), Ok(Ordering::Equal));
    }

    #[test]
    fn antipodal_comparison_is_refused() {
        assert!(d(1, 1).cmp_ccw(d(-1, -1)).is_err());
    }

    #[test]
    fn closed_interval_orders_its_endpoints() {
        assert_eq!(d(1, -1).cmp_closed_nonneg(d(-1, 1)), Ok(Ordering::Less));
        assert_eq!(d(-1, 1).cmp_closed_nonneg(d(1, -1)), Ok(Ordering::Greater));
        assert_eq!(d(1, -1).cmp_closed_nonneg(d(3, -1)), Ok(Ordering::Less));
        assert_eq!(d(3, -1).cmp_closed_nonneg(d(-1, 1)), Ok(Ordering::Less));
        assert!(d(1, -2).cmp_closed_nonneg(d(0, 1)).is_err());
    }

    #[test]
    fn alignment_needs_both_points_nonzero() {
        let a = LatticePoint::new(1, 0);
        let b = LatticePoint::new(2, 0);
        let o = LatticePoint::new(0, 0);
        assert!(a.aligned(b));
        assert!(!a.aligned(LatticePoint::new(0, 2)));
        assert!(!o.aligned(b));
        assert!(!a.aligned(o));
    }
}
