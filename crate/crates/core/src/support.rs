//! Valuations, leading terms, Newton polygons and the derived support data.
//!
//! Everything here reads an element only through its support and coefficients,
//! so the same functions serve `WeylElement` and `CommPoly` (the leading term
//! of a Weyl element is defined through the basis exchange, which preserves
//! coefficients).

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::{Direction, LatticePoint};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use crate::weyl::{CommPoly, WeylElement};

/// Value of a direction valuation: an integer, or the sentinel for the zero
/// element. The sentinel never mixes with integer arithmetic; it only
/// participates in comparisons.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Valuation {
    NegInfinity,
    Finite(i64),
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::NegInfinity => None,
            Valuation::Finite(v) => Some(v),
        }
    }

    pub fn expect_finite(self) -> Result<i64> {
        self.finite().ok_or(Error::ZeroElement)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::NegInfinity => write!(f, "-infinity"),
            Valuation::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Read-only view of a support with coefficients.
pub trait HasSupport {
    fn support(&self) -> Vec<LatticePoint>;
    fn term_at(&self, p: LatticePoint) -> Option<&Scalar>;
}

impl HasSupport for WeylElement {
    fn support(&self) -> Vec<LatticePoint> {
        self.terms()
            .map(|(i, j, _)| LatticePoint::new(i64::from(i), i64::from(j)))
            .collect()
    }

    fn term_at(&self, p: LatticePoint) -> Option<&Scalar> {
        if p.i < 0 || p.j < 0 {
            return None;
        }
        self.coeff(p.i as u32, p.j as u32)
    }
}

impl HasSupport for CommPoly {
    fn support(&self) -> Vec<LatticePoint> {
        self.terms()
            .map(|(i, j, _)| LatticePoint::new(i64::from(i), i64::from(j)))
            .collect()
    }

    fn term_at(&self, p: LatticePoint) -> Option<&Scalar> {
        if p.i < 0 || p.j < 0 {
            return None;
        }
        self.coeff(p.i as u32, p.j as u32)
    }
}

fn value(d: Direction, p: LatticePoint) -> i64 {
    d.rho() * p.i + d.sigma() * p.j
}

/// `v_{rho,sigma}`: maximum of `rho*i + sigma*j` over the support;
/// `-infinity` exactly for the zero element.
pub fn valuation<S: HasSupport + ?Sized>(p: &S, d: Direction) -> Valuation {
    p.support()
        .iter()
        .map(|pt| value(d, *pt))
        .max()
        .map_or(Valuation::NegInfinity, Valuation::Finite)
}

/// The sub-sum of terms attaining the valuation, as a commutative polynomial.
pub fn leading<S: HasSupport + ?Sized>(p: &S, d: Direction) -> Result<CommPoly> {
    let pts = p.support();
    let vmax = pts
        .iter()
        .map(|pt| value(d, *pt))
        .max()
        .ok_or(Error::ZeroElement)?;
    let mut out = CommPoly::zero();
    for pt in pts {
        if value(d, pt) == vmax {
            let c = p.term_at(pt).expect("support point has a coefficient");
            out = &out + &CommPoly::monomial(pt.i as u32, pt.j as u32, c.clone());
        }
    }
    Ok(out)
}

/// True when all support points share one `(rho,sigma)` value. Vacuously true
/// for the zero element.
pub fn is_homogeneous<S: HasSupport + ?Sized>(p: &S, d: Direction) -> bool {
    let pts = p.support();
    pts.windows(2)
        .all(|w| value(d, w[0]) == value(d, w[1]))
}

/// The Newton polygon: extreme points of the convex hull of the support, in
/// counterclockwise order starting at the lexicographically smallest vertex.
/// Degenerate supports give a single point or a two-vertex segment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    vertices: Vec<LatticePoint>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }
}

fn cross3(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    a.sub(o).cross(b.sub(o))
}

/// Convex hull by Andrew's monotone chain, strict turns only, so no three
/// output vertices are collinear.
pub fn newton_polygon<S: HasSupport + ?Sized>(p: &S) -> Result<NewtonPolygon> {
    let mut pts = p.support();
    if pts.is_empty() {
        return Err(Error::ZeroElement);
    }
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(NewtonPolygon { vertices: pts });
    }
    let chain = |iter: &mut dyn Iterator<Item = LatticePoint>| {
        let mut hull: Vec<LatticePoint> = Vec::new();
        for pt in iter {
            while hull.len() >= 2 && cross3(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
                hull.pop();
            }
            hull.push(pt);
        }
        hull
    };
    let lower = chain(&mut pts.iter().copied());
    let upper = chain(&mut pts.iter().rev().copied());
    let mut vertices = Vec::with_capacity(lower.len() + upper.len() - 2);
    vertices.extend_from_slice(&lower[..lower.len() - 1]);
    vertices.extend_from_slice(&upper[..upper.len() - 1]);
    Ok(NewtonPolygon { vertices })
}

fn primitive_normal(a: LatticePoint, b: LatticePoint) -> Direction {
    let d = b.sub(a);
    // Outward normal of a counterclockwise edge: rotate the edge vector
    // clockwise by a quarter turn.
    let g = d.i.gcd(&d.j);
    Direction::raw(d.j / g, -d.i / g)
}

/// Class of `e` in the counterclockwise sweep starting just after `base`:
/// 0 at `base` itself, then the open half turn, the antipode, the rest.
fn ccw_class(base: Direction, e: Direction) -> u8 {
    if e == base {
        0
    } else if base.cross(e) > 0 {
        1
    } else if e == base.antipode() {
        2
    } else {
        3
    }
}

fn ccw_order(base: Direction, a: Direction, b: Direction) -> Ordering {
    let (ca, cb) = (ccw_class(base, a), ccw_class(base, b));
    if ca != cb {
        return ca.cmp(&cb);
    }
    if a == b {
        return Ordering::Equal;
    }
    // Within an open half turn the cross product orders totally.
    if a.cross(b) > 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Clockwise counterpart of [`ccw_order`], sweeping from `base` the other way.
fn cw_order(base: Direction, a: Direction, b: Direction) -> Ordering {
    let class = |e: Direction| -> u8 {
        if e == base {
            0
        } else if base.cross(e) < 0 {
            1
        } else if e == base.antipode() {
            2
        } else {
            3
        }
    };
    let (ca, cb) = (class(a), class(b));
    if ca != cb {
        return ca.cmp(&cb);
    }
    if a == b {
        return Ordering::Equal;
    }
    if a.cross(b) < 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// The edge directions of the Newton polygon: exactly the primitive outward
/// normals of its edges, counterclockwise starting from `(1, -1)`.
/// Empty for a monomial.
pub fn dir_set<S: HasSupport + ?Sized>(p: &S) -> Result<Vec<Direction>> {
    let poly = newton_polygon(p)?;
    let v = poly.vertices();
    if v.len() == 1 {
        return Ok(Vec::new());
    }
    let m = v.len();
    let mut dirs: Vec<Direction> = (0..m)
        .map(|k| primitive_normal(v[k], v[(k + 1) % m]))
        .collect();
    let base = Direction::raw(1, -1);
    dirs.sort_by(|a, b| ccw_order(base, *a, *b));
    Ok(dirs)
}

/// `(Succ, Pred)`: the first edge direction strictly after `d` running
/// counterclockwise, and strictly before `d` running clockwise. `d` itself is
/// never returned even when it is an edge direction.
pub fn succ_pred<S: HasSupport + ?Sized>(
    p: &S,
    d: Direction,
) -> Result<(Direction, Direction)> {
    let dirs = dir_set(p)?;
    if dirs.is_empty() {
        return Err(Error::MonomialInput);
    }
    let succ = dirs
        .iter()
        .copied()
        .filter(|e| *e != d)
        .min_by(|a, b| ccw_order(d, *a, *b))
        .expect("a non-monomial has at least two edge directions");
    let pred = dirs
        .iter()
        .copied()
        .filter(|e| *e != d)
        .min_by(|a, b| cw_order(d, *a, *b))
        .expect("a non-monomial has at least two edge directions");
    Ok((succ, pred))
}

fn single_support_point(p: &CommPoly) -> Result<LatticePoint> {
    let pts = p.support();
    if pts.len() != 1 {
        return Err(Error::InvariantBreach(format!(
            "expected a single support point, found {}",
            pts.len()
        )));
    }
    Ok(pts[0])
}

/// First and last point of the leading face met when traversing the boundary
/// of the Newton polygon counterclockwise.
///
/// For `rho + sigma > 0` these are the supports of the `(1,-1)`- and
/// `(-1,1)`-leading terms of the `(rho,sigma)`-leading term; other directions
/// fall back to the geometric boundary walk.
pub fn st_en<S: HasSupport + ?Sized>(
    p: &S,
    d: Direction,
) -> Result<(LatticePoint, LatticePoint)> {
    if d.is_positive() {
        let face = leading(p, d)?;
        let st = single_support_point(&leading(&face, Direction::raw(1, -1))?)?;
        let en = single_support_point(&leading(&face, Direction::raw(-1, 1))?)?;
        Ok((st, en))
    } else {
        st_en_by_walk(p, d)
    }
}

/// `st`/`en` by walking the hull boundary; valid for every direction.
pub fn st_en_by_walk<S: HasSupport + ?Sized>(
    p: &S,
    d: Direction,
) -> Result<(LatticePoint, LatticePoint)> {
    let poly = newton_polygon(p)?;
    let v = poly.vertices();
    if v.len() == 1 {
        return Ok((v[0], v[0]));
    }
    let vals: Vec<i64> = v.iter().map(|pt| value(d, *pt)).collect();
    let vmax = *vals.iter().max().unwrap();
    let attains: Vec<usize> = (0..v.len()).filter(|&k| vals[k] == vmax).collect();
    if attains.len() == 1 {
        let pt = v[attains[0]];
        return Ok((pt, pt));
    }
    if v.len() == 2 {
        // Degenerate segment: both endpoints attain and the boundary has no
        // interior to orient the walk, so the edge is traversed in the
        // direction (-sigma, rho), keeping the outward normal on the right.
        let t = |pt: LatticePoint| -d.sigma() * pt.i + d.rho() * pt.j;
        let (a, b) = (v[0], v[1]);
        return Ok(if t(a) <= t(b) { (a, b) } else { (b, a) });
    }
    if attains.len() == 2 {
        let m = v.len();
        for &k in &attains {
            if vals[(k + 1) % m] == vmax {
                return Ok((v[k], v[(k + 1) % m]));
            }
        }
    }
    Err(Error::InvariantBreach(
        "leading face of a strictly convex polygon has more than two vertices".into(),
    ))
}

/// Start point and univariate encoding of a leading term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgePoly {
    /// The `st` point `(i, j)` of the leading term.
    pub start: LatticePoint,
    /// `f(y) = sum a_l y^(rho l)` where the leading term is
    /// `x^i y^j sum a_l x^(-sigma l) y^(rho l)`.
    pub poly: UniPoly,
}

/// Extracts the edge polynomial `f_{P,rho,sigma}`.
/// Requires `rho > 0` and `rho + sigma > 0`.
pub fn edge_polynomial<S: HasSupport + ?Sized>(p: &S, d: Direction) -> Result<EdgePoly> {
    if d.rho() <= 0 {
        return Err(Error::RhoNotPositive(d));
    }
    if !d.is_positive() {
        return Err(Error::NotPositive(d));
    }
    let face = leading(p, d)?;
    let start = single_support_point(&leading(&face, Direction::raw(1, -1))?)?;
    let mut poly = UniPoly::zero();
    for pt in face.support() {
        let delta = pt.sub(start);
        // Support points of the face sit on start + l(-sigma, rho), so the
        // exponent rho*l is just the j offset.
        debug_assert_eq!(delta.j % d.rho(), 0);
        debug_assert_eq!(delta.i * d.rho(), -d.sigma() * delta.j);
        let coeff = face.term_at(pt).expect("face point has a coefficient");
        poly = &poly + &UniPoly::monomial(delta.j as u32, coeff.clone());
    }
    Ok(EdgePoly { start, poly })
}

/// The box vertex `(max i, max j)` when it lies in the support with both
/// coordinates at least 1; `None` otherwise (including the zero element).
pub fn is_subrectangular<S: HasSupport + ?Sized>(p: &S) -> Option<LatticePoint> {
    let pts = p.support();
    let a = pts.iter().map(|pt| pt.i).max()?;
    let b = pts.iter().map(|pt| pt.j).max()?;
    let corner = LatticePoint::new(a, b);
    if a >= 1 && b >= 1 && pts.contains(&corner) {
        Some(corner)
    } else {
        None
    }
}

/// The graded bracket `[P, Q]_{rho,sigma}`: zero when the commutator's
/// valuation falls below `v(P) + v(Q) - (rho + sigma)`, the commutator's
/// leading term when it attains that bound. Exceeding the bound is impossible
/// and reported as an invariant breach.
pub fn bracket_rs(p: &WeylElement, q: &WeylElement, d: Direction) -> Result<CommPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !d.is_positive() {
        return Err(Error::NotPositive(d));
    }
    let bound = valuation(p, d).expect_finite()? + valuation(q, d).expect_finite()?
        - (d.rho() + d.sigma());
    let b = p.bracket(q);
    match valuation(&b, d) {
        Valuation::NegInfinity => Ok(CommPoly::zero()),
        Valuation::Finite(v) if v < bound => Ok(CommPoly::zero()),
        Valuation::Finite(v) if v == bound => leading(&b, d),
        Valuation::Finite(v) => Err(Error::InvariantBreach(format!(
            "v([P,Q]) = {v} exceeds the bound {bound} for direction {d}"
        ))),
    }
}
