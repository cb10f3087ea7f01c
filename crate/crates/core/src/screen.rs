//! The analysis pipeline: case classification of the `(1,1)`-leading term,
//! mass lower-bound reporting, pair screening, leading-term power
//! decomposition, the bounded solver for the graded bracket identity, and the
//! upper-edge untwisting chain.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Direction, LatticePoint};
use crate::scalar::Scalar;
use crate::support::{
    dir_set, edge_polynomial, is_homogeneous, is_subrectangular, leading, st_en, succ_pred,
    valuation, HasSupport,
};
use crate::unipoly::UniPoly;
use crate::weyl::{CommPoly, WeylElement};

/// Case label for the `(1,1)`-leading term of an element, following the
/// support case table; `Excluded` carries the reason the table does not apply.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CaseLabel {
    C1a,
    C1b,
    C1c,
    C2a,
    C2b,
    C2c,
    C3,
    Excluded(String),
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::C1a => write!(f, "1a"),
            CaseLabel::C1b => write!(f, "1b"),
            CaseLabel::C1c => write!(f, "1c"),
            CaseLabel::C2a => write!(f, "2a"),
            CaseLabel::C2b => write!(f, "2b"),
            CaseLabel::C2c => write!(f, "2c"),
            CaseLabel::C3 => write!(f, "3"),
            CaseLabel::Excluded(reason) => write!(f, "EXCLUDED({reason})"),
        }
    }
}

/// A named fact recorded while screening.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

fn witness(name: &str, value: impl fmt::Display) -> Witness {
    Witness {
        name: name.to_string(),
        value: value.to_string(),
    }
}

/// Classification of an element together with the facts that justify it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseReport {
    pub label: CaseLabel,
    pub witnesses: Vec<Witness>,
}

/// Classifies the `(1,1)`-leading term of a nonzero element by the number of
/// distinct linear factors of its edge polynomial and the alignment of its
/// endpoints with `(2,0)` and `(0,2)`.
pub fn classify_case(p: &WeylElement) -> Result<CaseReport> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    let diag = Direction::raw(1, 1);
    let v11 = valuation(p, diag).expect_finite()?;
    let mut witnesses = vec![witness("v_{1,1}(P)", v11)];
    if v11 <= 0 {
        return Ok(CaseReport {
            label: CaseLabel::Excluded("v_{1,1}(P) <= 0".into()),
            witnesses,
        });
    }
    let ep = edge_polynomial(p, diag)?;
    let n_factors = ep.poly.distinct_factor_count();
    let (st, en) = st_en(p, diag)?;
    witnesses.push(witness("f_P", ep.poly.render('z')));
    witnesses.push(witness("#factors(f_P)", n_factors));
    witnesses.push(witness("st_{1,1}(P)", st));
    witnesses.push(witness("en_{1,1}(P)", en));

    let x_axis = LatticePoint::new(2, 0);
    let y_axis = LatticePoint::new(0, 2);
    let label = match n_factors {
        0 => match (st.i > 0, st.j > 0) {
            (true, true) => CaseLabel::C1a,
            (false, true) => CaseLabel::C1b,
            (true, false) => CaseLabel::C1c,
            (false, false) => CaseLabel::Excluded(
                "leading monomial is constant, impossible with v_{1,1}(P) > 0".into(),
            ),
        },
        1 => match (st.aligned(x_axis), en.aligned(y_axis)) {
            (true, true) => CaseLabel::C2a,
            (true, false) => CaseLabel::C2b,
            (false, true) => CaseLabel::C2c,
            (false, false) => CaseLabel::Excluded(
                "#factors(f_P) = 1 but neither st_{1,1}(P) ~ (2,0) nor en_{1,1}(P) ~ (0,2)"
                    .into(),
            ),
        },
        2 => {
            if st.aligned(x_axis) && en.aligned(y_axis) {
                CaseLabel::C3
            } else {
                CaseLabel::Excluded(
                    "#factors(f_P) = 2 but st_{1,1}(P) ~ (2,0) and en_{1,1}(P) ~ (0,2) fail"
                        .into(),
                )
            }
        }
        _ => CaseLabel::Excluded("#factors(f_P) > 2".into()),
    };
    Ok(CaseReport { label, witnesses })
}

/// Result of evaluating the mass lower-bound table row by row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    /// The implied lower bound, when a row hypothesis holds; a strict bound
    /// `m > 16` is encoded as 17.
    pub bound: Option<u32>,
    /// The 1-based row index that fired.
    pub row: Option<u8>,
    pub rationale: String,
}

/// Evaluates the seven row hypotheses of the mass lower-bound table on `P`
/// and returns the bound of the first row that matches. The hypotheses are
/// checked syntactically on `P`; reports are conditional statements about
/// what the mass of a counterexample with this shape would have to satisfy.
pub fn mass_bound_report(p: &WeylElement) -> Result<BoundReport> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    let diag = Direction::raw(1, 1);
    let right = Direction::raw(1, 0);

    let sub = is_subrectangular(p);
    let en10 = st_en(p, right)?.1;
    let s = en10.i - en10.j;
    let l11 = leading(p, diag)?;
    let y_power = l11.is_monomial() && l11.terms().next().map(|(i, _, _)| i) == Some(0);
    let ep = edge_polynomial(p, diag)?;
    let n_factors = ep.poly.distinct_factor_count();
    let (st11, en11) = st_en(p, diag)?;
    let st2 = st11.aligned(LatticePoint::new(2, 0));
    let en2 = en11.aligned(LatticePoint::new(0, 2));

    let hit = |row: u8, bound: u32, why: String| BoundReport {
        bound: Some(bound),
        row: Some(row),
        rationale: why,
    };

    if sub.is_some() && s < 0 {
        return Ok(hit(
            1,
            5,
            format!(
                "P is subrectangular with vertex {} and v_{{1,-1}}(en_{{1,0}}(P)) = {s} < 0",
                sub.unwrap()
            ),
        ));
    }
    if y_power && s < 0 {
        return Ok(hit(
            2,
            5,
            format!("l_{{1,1}}(P) is a y-power monomial and v_{{1,-1}}(en_{{1,0}}(P)) = {s} < 0"),
        ));
    }
    if y_power && s > 0 {
        return Ok(hit(
            3,
            10,
            format!("l_{{1,1}}(P) is a y-power monomial and v_{{1,-1}}(en_{{1,0}}(P)) = {s} > 0"),
        ));
    }
    if n_factors == 1 && st2 && en2 {
        return Ok(hit(
            4,
            17,
            format!("#factors(f_P) = 1 with st_{{1,1}}(P) = {st11} ~ (2,0) and en_{{1,1}}(P) = {en11} ~ (0,2)"),
        ));
    }
    if n_factors == 1 && s < 0 && en10 == st11 && !st2 && en2 {
        return Ok(hit(
            5,
            5,
            format!(
                "#factors(f_P) = 1, v_{{1,-1}}(en_{{1,0}}(P)) = {s} < 0, en_{{1,0}}(P) = st_{{1,1}}(P) = {st11} not ~ (2,0), en_{{1,1}}(P) ~ (0,2)"
            ),
        ));
    }
    if n_factors == 1 && s > 0 && en10 == st11 && !st2 && en2 {
        return Ok(hit(
            6,
            10,
            format!(
                "#factors(f_P) = 1, v_{{1,-1}}(en_{{1,0}}(P)) = {s} > 0, en_{{1,0}}(P) = st_{{1,1}}(P) = {st11} not ~ (2,0), en_{{1,1}}(P) ~ (0,2)"
            ),
        ));
    }
    if n_factors == 2 && st2 && en2 {
        return Ok(hit(
            7,
            5,
            format!("#factors(f_P) = 2 with st_{{1,1}}(P) = {st11} ~ (2,0) and en_{{1,1}}(P) = {en11} ~ (0,2)"),
        ));
    }
    Ok(BoundReport {
        bound: None,
        row: None,
        rationale: format!(
            "no row hypothesis holds: subrectangular = {}, v_{{1,-1}}(en_{{1,0}}(P)) = {s}, \
             l_{{1,1}}(P) y-power = {y_power}, #factors(f_P) = {n_factors}, \
             st ~ (2,0) = {st2}, en ~ (0,2) = {en2}",
            sub.is_some()
        ),
    })
}

/// Screening verdict for a pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    GeneratesByCorollary,
    NecessaryConditionViolated,
    ConsistentWithBounds,
    ContradictsBound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::GeneratesByCorollary => "GENERATES_BY_COROLLARY",
            Verdict::NecessaryConditionViolated => "NECESSARY_CONDITION_VIOLATED",
            Verdict::ConsistentWithBounds => "CONSISTENT_WITH_BOUNDS",
            Verdict::ContradictsBound => "CONTRADICTS_BOUND",
        };
        write!(f, "{s}")
    }
}

/// Structured verdict of [`check_pair`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScreenReport {
    pub bracket_ok: bool,
    /// `m(P)` for the first element of the pair.
    pub mass: usize,
    pub case: Option<CaseLabel>,
    pub implied_bound: Option<u32>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

/// Checks that all valuations a counterexample must keep positive are
/// positive: `v_{1,-1}`, `v_{-1,1}`, and every edge direction in the open
/// positive half. Returns the name of the first violated condition.
fn violated_valuation_condition(p: &WeylElement, tag: &str) -> Result<Option<String>> {
    for d in [Direction::raw(1, -1), Direction::raw(-1, 1)] {
        if valuation(p, d).expect_finite()? <= 0 {
            return Ok(Some(format!("v_{{{},{}}}({tag}) <= 0", d.rho(), d.sigma())));
        }
    }
    for d in dir_set(p)? {
        if d.is_positive() && valuation(p, d).expect_finite()? <= 0 {
            return Ok(Some(format!("v_{{{},{}}}({tag}) <= 0", d.rho(), d.sigma())));
        }
    }
    Ok(None)
}

/// Screens a pair `(P, Q)` as a Dixmier-counterexample candidate: verifies
/// `[P, Q] = 1`, applies the mass corollary, checks the positive-valuation
/// necessary conditions, and compares `m(P)` against the implied lower bound.
pub fn check_pair(p: &WeylElement, q: &WeylElement) -> Result<ScreenReport> {
    let b = p.bracket(q);
    let bracket_ok = b.is_one();
    let mass_p = p.mass();
    let mass_q = q.mass();
    let mut witnesses = vec![
        witness("bracket(P,Q)", &b),
        witness("mass(P)", mass_p),
        witness("mass(Q)", mass_q),
    ];
    if !bracket_ok {
        witnesses.push(witness("violated", "bracket(P,Q) != 1"));
        return Ok(ScreenReport {
            bracket_ok,
            mass: mass_p,
            case: None,
            implied_bound: None,
            verdict: Verdict::NecessaryConditionViolated,
            witnesses,
        });
    }
    if mass_p.min(mass_q) <= 4 {
        return Ok(ScreenReport {
            bracket_ok,
            mass: mass_p,
            case: None,
            implied_bound: None,
            verdict: Verdict::GeneratesByCorollary,
            witnesses,
        });
    }
    for (elem, tag) in [(p, "P"), (q, "Q")] {
        if let Some(cond) = violated_valuation_condition(elem, tag)? {
            witnesses.push(witness("violated", &cond));
            return Ok(ScreenReport {
                bracket_ok,
                mass: mass_p,
                case: None,
                implied_bound: None,
                verdict: Verdict::NecessaryConditionViolated,
                witnesses,
            });
        }
    }
    let case = classify_case(p)?;
    witnesses.extend(case.witnesses.iter().cloned());
    let bounds = mass_bound_report(p)?;
    witnesses.push(witness("bound rationale", &bounds.rationale));
    let verdict = match bounds.bound {
        Some(bound) if mass_p < bound as usize => Verdict::ContradictsBound,
        _ => Verdict::ConsistentWithBounds,
    };
    Ok(ScreenReport {
        bracket_ok,
        mass: mass_p,
        case: Some(case.label),
        implied_bound: bounds.bound,
        verdict,
        witnesses,
    })
}

/// One way of writing a leading term as `mu * psi(R)^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerDecomposition {
    pub k: u32,
    pub root: WeylElement,
    pub mu: Scalar,
}

/// All exact decompositions `l_{rho,sigma}(P) = mu * psi(R)^k` with `k >= 2`
/// and `R` a `(rho,sigma)`-homogeneous element; `R` is normalized so that the
/// edge polynomial of `psi(R)` has constant term 1. Requires `rho > 0` and
/// `rho + sigma > 0`.
pub fn decompose_leading_power(
    p: &WeylElement,
    d: Direction,
) -> Result<Vec<PowerDecomposition>> {
    let ep = edge_polynomial(p, d)?;
    let ell = leading(p, d)?;
    let (i, j) = (ep.start.i as u32, ep.start.j as u32);
    let deg_f = ep.poly.degree().unwrap_or(0);
    let budget = i.gcd(&j).gcd(&deg_f);
    let mut out = Vec::new();
    for k in 2..=budget.max(1) {
        if budget % k != 0 {
            continue;
        }
        let root_poly = if deg_f == 0 {
            Some((ep.poly.coeff(0), UniPoly::one()))
        } else {
            ep.poly.kth_root(k)?
        };
        let Some((mu, root_poly)) = root_poly else {
            continue;
        };
        // Reassemble R from the root: exponent rho*l contributes the lattice
        // point (i/k, j/k) + l(-sigma, rho).
        if root_poly.terms().any(|(e, _)| i64::from(e) % d.rho() != 0) {
            continue;
        }
        let base = LatticePoint::new(i64::from(i / k), i64::from(j / k));
        let step = LatticePoint::new(-d.sigma(), d.rho());
        let mut r = WeylElement::zero();
        let mut valid = true;
        for (e, c) in root_poly.terms() {
            let l = i64::from(e) / d.rho();
            let pt = base.add(step.scaled(l));
            if pt.i < 0 || pt.j < 0 {
                valid = false;
                break;
            }
            r = &r + &WeylElement::monomial(pt.i as u32, pt.j as u32, c.clone());
        }
        if !valid {
            continue;
        }
        if r.psi().pow(k).scale(&mu) == ell {
            out.push(PowerDecomposition { k, root: r, mu });
        }
    }
    Ok(out)
}

/// The affine solution set of the graded bracket identity found by
/// [`find_f`]: every `particular + sum c_i kernel[i]` is a solution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BracketSolution {
    /// Candidate monomials `(u, v)` on the line `rho u + sigma v = rho + sigma`
    /// within the search window.
    pub monomials: Vec<LatticePoint>,
    pub particular: WeylElement,
    pub kernel: Vec<WeylElement>,
    pub bound: u32,
}

/// Searches, within the window `0 <= u, v <= bound`, for the
/// `(rho,sigma)`-homogeneous elements `F` with `v_{rho,sigma}(F) = rho+sigma`
/// and `[R, F]_{rho,sigma} = psi(R)`, by solving the exact linear system in
/// the coefficients of `F`. Returns `None` when no solution exists within the
/// window. `R` must be nonzero and `(rho,sigma)`-homogeneous.
pub fn find_f(r: &WeylElement, d: Direction, bound: u32) -> Result<Option<BracketSolution>> {
    if r.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !d.is_positive() {
        return Err(Error::NotPositive(d));
    }
    if !is_homogeneous(r, d) {
        return Err(Error::NotHomogeneous(d));
    }
    let (rho, sigma) = (d.rho(), d.sigma());
    let level = valuation(r, d).expect_finite()?;
    let target_level = rho + sigma;

    let mut monomials: Vec<LatticePoint> = Vec::new();
    for u in 0..=i64::from(bound) {
        if sigma == 0 {
            // The line rho*u = rho + sigma is vertical: u is forced.
            if rho * u == target_level {
                for v in 0..=i64::from(bound) {
                    monomials.push(LatticePoint::new(u, v));
                }
            }
            continue;
        }
        let rest = target_level - rho * u;
        if rest % sigma == 0 {
            let v = rest / sigma;
            if (0..=i64::from(bound)).contains(&v) {
                monomials.push(LatticePoint::new(u, v));
            }
        }
    }
    if monomials.is_empty() {
        return Ok(None);
    }

    // Column t: the level-v(R) graded component of psi([R, X^u Y^v]).
    let columns: Vec<CommPoly> = monomials
        .iter()
        .map(|m| {
            let basis = WeylElement::monomial(m.i as u32, m.j as u32, Scalar::one());
            let br = r.bracket(&basis).psi();
            let mut comp = CommPoly::zero();
            for pt in br.support() {
                if rho * pt.i + sigma * pt.j == level {
                    let c = br.term_at(pt).unwrap().clone();
                    comp = &comp + &CommPoly::monomial(pt.i as u32, pt.j as u32, c);
                }
            }
            comp
        })
        .collect();

    let target = r.psi();
    let mut row_points: Vec<LatticePoint> = target.support();
    for col in &columns {
        row_points.extend(col.support());
    }
    row_points.sort();
    row_points.dedup();

    let matrix: Vec<Vec<Scalar>> = row_points
        .iter()
        .map(|pt| {
            columns
                .iter()
                .map(|col| col.term_at(*pt).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect();
    let rhs: Vec<Scalar> = row_points
        .iter()
        .map(|pt| target.term_at(*pt).cloned().unwrap_or_else(Scalar::zero))
        .collect();

    let Some((particular, kernel)) = solve_affine(matrix, rhs, monomials.len()) else {
        return Ok(None);
    };
    let assemble = |coeffs: &[Scalar]| -> WeylElement {
        let mut f = WeylElement::zero();
        for (m, c) in monomials.iter().zip(coeffs) {
            if !c.is_zero() {
                f = &f + &WeylElement::monomial(m.i as u32, m.j as u32, c.clone());
            }
        }
        f
    };
    Ok(Some(BracketSolution {
        particular: assemble(&particular),
        kernel: kernel.iter().map(|v| assemble(v)).collect(),
        monomials,
        bound,
    }))
}

/// Gauss-Jordan elimination over the rationals. Returns `None` when the
/// system is inconsistent, otherwise a particular solution (free variables
/// zero) and a basis of the kernel.
fn solve_affine(
    mut a: Vec<Vec<Scalar>>,
    mut b: Vec<Scalar>,
    cols: usize,
) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let rows = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        b.swap(rank, pivot_row);
        let inv = a[rank][col].clone().recip();
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        b[rank] = &b[rank] * &inv;
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..cols {
                    let delta = &a[rank][c] * &factor;
                    a[r][c] = &a[r][c] - &delta;
                }
                let delta = &b[rank] * &factor;
                b[r] = &b[r] - &delta;
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    if b.iter().skip(rank).any(|v| !v.is_zero()) {
        return None;
    }
    let mut particular = vec![Scalar::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            particular[col] = b[*r].clone();
        }
    }
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![Scalar::zero(); cols];
        vec[free] = Scalar::one();
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pivot {
                vec[col] = -a[*r][free].clone();
            }
        }
        kernel.push(vec);
    }
    Some((particular, kernel))
}

/// One recorded step of the untwisting chain: the shear `Y -> Y + mu X^sigma`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShearStep {
    pub sigma: u32,
    pub mu: Scalar,
}

/// Detects whether `f = lambda (y - mu)^k` with `mu != 0` and returns `mu`.
fn single_root_shift(f: &UniPoly) -> Result<Option<Scalar>> {
    let k = match f.degree() {
        None | Some(0) => return Ok(None),
        Some(k) => k,
    };
    if k == 1 {
        // f = a0 + a1 y = a1 (y + a0/a1); a0 != 0 for an edge polynomial.
        return Ok(Some(-(f.coeff(0) / f.coeff(1))));
    }
    let Some((_, root)) = f.kth_root(k)? else {
        return Ok(None);
    };
    if root.support() != vec![0, 1] {
        return Ok(None);
    }
    // root = 1 + c y, so f = lambda (y + 1/c)^k.
    Ok(Some(-root.coeff(1).recip()))
}

/// Repeatedly removes the upper edge of the Newton polygon: while the
/// predecessor direction of `(0,1)` is some `(1, sigma)` strictly between
/// `(1,1)` and `(0,1)` and the corresponding leading term is
/// `lambda x^(n - sigma k) (y - mu x^sigma)^k`, applies the shear
/// `Y -> Y + mu X^sigma` and records `(sigma, mu)`. The shear exponents must
/// strictly decrease; a non-decreasing step is an invariant breach.
pub fn reduce_upper_edge(
    p: &WeylElement,
    max_iters: u32,
) -> Result<(WeylElement, Vec<ShearStep>)> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    let up = Direction::raw(0, 1);
    let mut current = p.clone();
    let mut trace: Vec<ShearStep> = Vec::new();
    let mut prev_sigma: Option<i64> = None;
    for _ in 0..max_iters {
        if current.is_monomial() {
            break;
        }
        let (_, pred) = succ_pred(&current, up)?;
        // (1,1) < pred < (0,1) means sigma > rho > 0; the chain only handles
        // edges with rho = 1.
        if !(pred.rho() > 0 && pred.sigma() > pred.rho()) {
            break;
        }
        if pred.rho() != 1 {
            break;
        }
        let ep = edge_polynomial(&current, pred)?;
        if ep.start.j != 0 {
            break;
        }
        let Some(mu) = single_root_shift(&ep.poly)? else {
            break;
        };
        let sigma = pred.sigma();
        if let Some(prev) = prev_sigma {
            if sigma >= prev {
                return Err(Error::InvariantBreach(format!(
                    "shear exponent failed to decrease: {prev} then {sigma}"
                )));
            }
        }
        prev_sigma = Some(sigma);
        current = current.sheared(&mu, sigma as u32)?;
        trace.push(ShearStep {
            sigma: sigma as u32,
            mu,
        });
    }
    Ok((current, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::support::bracket_rs;

    fn d(r: i64, s: i64) -> Direction {
        Direction::new(r, s).unwrap()
    }

    fn r_elem() -> WeylElement {
        WeylElement::from_terms(&[(1, 0, 1), (2, 3, 2), (3, 6, 1)])
    }

    #[test]
    fn classify_monomial_leading_cases() {
        let p = WeylElement::from_terms(&[(2, 3, 1), (1, 0, 1)]);
        assert_eq!(classify_case(&p).unwrap().label, CaseLabel::C1a);

        let q = WeylElement::from_terms(&[(0, 3, 1), (1, 0, 1)]);
        assert_eq!(classify_case(&q).unwrap().label, CaseLabel::C1b);

        let r = WeylElement::from_terms(&[(3, 0, 1), (0, 1, 1)]);
        assert_eq!(classify_case(&r).unwrap().label, CaseLabel::C1c);
    }

    #[test]
    fn classify_single_factor_cases() {
        let p = &(&WeylElement::x() + &WeylElement::y()).pow(2) + &WeylElement::one();
        assert_eq!(classify_case(&p).unwrap().label, CaseLabel::C2a);

        let q = WeylElement::from_terms(&[(2, 0, 1), (1, 1, 1)]);
        assert_eq!(classify_case(&q).unwrap().label, CaseLabel::C2b);

        let r = WeylElement::from_terms(&[(0, 2, 1), (1, 1, 1)]);
        assert_eq!(classify_case(&r).unwrap().label, CaseLabel::C2c);
    }

    #[test]
    fn classify_two_factor_and_excluded_cases() {
        // l_{1,1} = (x + y)(x + 2y): two distinct factors, st = (2,0),
        // en = (0,2).
        let p = WeylElement::from_terms(&[(2, 0, 1), (1, 1, 3), (0, 2, 2)]);
        assert_eq!(classify_case(&p).unwrap().label, CaseLabel::C3);

        let zero_v = WeylElement::one();
        assert!(matches!(
            classify_case(&zero_v).unwrap().label,
            CaseLabel::Excluded(_)
        ));

        // (x + y)^2 shifted away from both axes: one factor, no alignment.
        let q = WeylElement::from_terms(&[(3, 1, 1), (2, 2, 2), (1, 3, 1)]);
        assert!(matches!(
            classify_case(&q).unwrap().label,
            CaseLabel::Excluded(_)
        ));

        // Three distinct factors.
        let r = WeylElement::from_terms(&[(3, 0, 1), (2, 1, 6), (1, 2, 11), (0, 3, 6)]);
        assert_eq!(
            classify_case(&r).unwrap().label,
            CaseLabel::Excluded("#factors(f_P) > 2".into())
        );

        assert_eq!(classify_case(&WeylElement::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn mass_bound_rows() {
        // Row 1: subrectangular with negative grading value at en_{1,0}.
        let p = WeylElement::from_terms(&[(2, 3, 1), (1, 0, 1), (0, 3, 1)]);
        let rep = mass_bound_report(&p).unwrap();
        assert_eq!((rep.row, rep.bound), (Some(1), Some(5)));

        // Row 3: y-power leading term with positive grading value.
        let q = WeylElement::from_terms(&[(0, 3, 1), (2, 0, 1)]);
        let rep = mass_bound_report(&q).unwrap();
        assert_eq!((rep.row, rep.bound), (Some(3), Some(10)));

        // Row 2: y-power leading term with negative grading value.
        let q2 = WeylElement::from_terms(&[(0, 4, 1), (1, 2, 1)]);
        let rep = mass_bound_report(&q2).unwrap();
        assert_eq!((rep.row, rep.bound), (Some(2), Some(5)));

        // Row 5: one factor, en_{1,0} = st_{1,1} off the x-axis, en ~ (0,2),
        // negative grading value at en_{1,0}.
        let q5 = WeylElement::from_terms(&[(0, 3, 1), (1, 2, 1)]);
        let rep = mass_bound_report(&q5).unwrap();
        assert_eq!((rep.row, rep.bound), (Some(5), Some(5)));

        // Row 6: same shape with positive grading value.
        let q6 = WeylElement::from_terms(&[(3, 1, 1), (2, 2, 3), (1, 3, 3), (0, 4, 1)]);
        let rep = mass_bound_report(&q6).unwrap();
        assert_eq!((rep.row, rep.bound), (Some(6), Some(10)));

        // X + Y satisfies the row-4 hypothesis as written: one distinct
        // factor and both endpoints aligned with the axes.
        let xy = &WeylElement::x() + &WeylElement::y();
        let rep = mass_bound_report(&xy).unwrap();
        assert_eq!((rep.row, rep.bound), (Some(4), Some(17)));

        // A monomial matches no row.
        let m = WeylElement::from_terms(&[(2, 1, 1)]);
        let rep = mass_bound_report(&m).unwrap();
        assert_eq!(rep.bound, None);
        assert!(rep.rationale.contains("no row hypothesis holds"));
    }

    #[test]
    fn check_pair_examples() {
        let rep = check_pair(&WeylElement::y(), &WeylElement::x()).unwrap();
        assert!(rep.bracket_ok);
        assert_eq!(rep.mass, 1);
        assert_eq!(rep.verdict, Verdict::GeneratesByCorollary);

        let rep = check_pair(&WeylElement::x(), &WeylElement::y()).unwrap();
        assert!(!rep.bracket_ok);
        assert_eq!(rep.verdict, Verdict::NecessaryConditionViolated);

        // [Y, X + Y^2] = 1.
        let q = &WeylElement::x() + &WeylElement::y().pow(2);
        let rep = check_pair(&WeylElement::y(), &q).unwrap();
        assert!(rep.bracket_ok);
        assert_eq!(rep.verdict, Verdict::GeneratesByCorollary);
    }

    #[test]
    fn check_pair_flags_valuation_violations() {
        // Both elements need mass >= 5 to get past the corollary, but a
        // polynomial in X alone has v_{-1,1} <= 0.
        let p = WeylElement::from_terms(&[
            (9, 0, 1),
            (7, 0, 1),
            (5, 0, 1),
            (3, 0, 1),
            (1, 0, 1),
        ]);
        let q = WeylElement::from_terms(&[
            (0, 9, 1),
            (0, 7, 1),
            (0, 5, 1),
            (0, 3, 1),
            (0, 1, 1),
        ]);
        let rep = check_pair(&p, &q).unwrap();
        assert!(!rep.bracket_ok);
        // Force the bracket check aside: use elements with bracket 1 is hard
        // here; instead verify the valuation checker directly.
        assert!(violated_valuation_condition(&p, "P").unwrap().is_some());
        assert!(violated_valuation_condition(&q, "Q").unwrap().is_some());
        let mixed = WeylElement::from_terms(&[(2, 1, 1), (1, 2, 1)]);
        assert!(violated_valuation_condition(&mixed, "P").unwrap().is_none());
    }

    #[test]
    fn decompose_examples() {
        let r2 = r_elem().pow(2);
        let found = decompose_leading_power(&r2, d(3, -1)).unwrap();
        assert!(found
            .iter()
            .any(|dec| dec.k == 2 && dec.root == r_elem() && dec.mu.is_one()));

        let x4 = WeylElement::from_terms(&[(4, 0, 1)]);
        let found = decompose_leading_power(&x4, d(1, 1)).unwrap();
        let ks: Vec<u32> = found.iter().map(|dec| dec.k).collect();
        assert_eq!(ks, vec![2, 4]);
        assert_eq!(found[0].root, WeylElement::from_terms(&[(2, 0, 1)]));
        assert_eq!(found[1].root, WeylElement::x());

        let sq = (&WeylElement::x() + &WeylElement::y()).pow(2);
        let found = decompose_leading_power(&sq, d(1, 1)).unwrap();
        assert!(found
            .iter()
            .any(|dec| dec.k == 2 && dec.root == (&WeylElement::x() + &WeylElement::y())));
    }

    #[test]
    fn decompose_soundness() {
        let p = WeylElement::from_terms(&[(2, 0, 4), (1, 1, 4), (0, 2, 1), (0, 0, 3)]);
        for dec in decompose_leading_power(&p, d(1, 1)).unwrap() {
            assert_eq!(
                dec.root.psi().pow(dec.k).scale(&dec.mu),
                leading(&p, d(1, 1)).unwrap()
            );
        }
    }

    #[test]
    fn find_f_recovers_the_golden_solution() {
        let sol = find_f(&r_elem(), d(3, -1), 10).unwrap().unwrap();
        let candidate = WeylElement::from_terms(&[(1, 1, -1), (2, 4, -1)]);
        // The candidate satisfies the identity...
        assert_eq!(
            bracket_rs(&r_elem(), &candidate, d(3, -1)).unwrap(),
            r_elem().psi()
        );
        // ...and lies in the affine solution set.
        assert!(affine_set_contains(&sol, &candidate));
        // Soundness of the particular solution.
        assert_eq!(
            bracket_rs(&r_elem(), &sol.particular, d(3, -1)).unwrap(),
            r_elem().psi()
        );
    }

    #[test]
    fn find_f_none_and_kernel_examples() {
        let xy = WeylElement::from_terms(&[(1, 1, 1)]);
        assert_eq!(find_f(&xy, d(1, 1), 5).unwrap(), None);

        let y2 = WeylElement::from_terms(&[(0, 2, 1)]);
        let sol = find_f(&y2, d(1, 1), 5).unwrap().unwrap();
        assert_eq!(
            sol.particular,
            WeylElement::from_terms_frac(&[(1, 1, 1, 2)])
        );
        assert_eq!(sol.kernel.len(), 1);
        assert_eq!(sol.kernel[0], y2);

        assert_eq!(
            find_f(&r_elem().pow(2), d(1, 1), 5),
            Err(Error::NotHomogeneous(d(1, 1)))
        );
    }

    /// Membership in `particular + span(kernel)` by exact elimination.
    fn affine_set_contains(sol: &BracketSolution, candidate: &WeylElement) -> bool {
        let diff = candidate - &sol.particular;
        let coords = |w: &WeylElement| -> Vec<Scalar> {
            sol.monomials
                .iter()
                .map(|m| w.term_at(*m).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        };
        let matrix: Vec<Vec<Scalar>> = (0..sol.monomials.len())
            .map(|row| {
                sol.kernel
                    .iter()
                    .map(|k| coords(k)[row].clone())
                    .collect()
            })
            .collect();
        solve_affine(matrix, coords(&diff), sol.kernel.len()).is_some()
    }

    #[test]
    fn reduce_upper_edge_examples() {
        let p = WeylElement::from_terms(&[
            (0, 2, 1),
            (3, 1, -2),
            (2, 0, -3),
            (6, 0, 1),
            (1, 0, 1),
        ]);
        let (reduced, trace) = reduce_upper_edge(&p, 16).unwrap();
        assert_eq!(reduced, WeylElement::from_terms(&[(0, 2, 1), (1, 0, 1)]));
        assert_eq!(
            trace,
            vec![ShearStep {
                sigma: 3,
                mu: rat(1)
            }]
        );

        let q = WeylElement::from_terms(&[(0, 2, 1), (1, 0, 1)]);
        let (same, trace) = reduce_upper_edge(&q, 16).unwrap();
        assert_eq!(same, q);
        assert!(trace.is_empty());

        let m = WeylElement::from_terms(&[(2, 3, 1)]);
        let (same, trace) = reduce_upper_edge(&m, 16).unwrap();
        assert_eq!(same, m);
        assert!(trace.is_empty());
    }

    #[test]
    fn reduce_upper_edge_runs_a_two_step_chain() {
        // ((Y - X^5) - X^3)^2-style element: start from Y^2 + X and undo two
        // shears; reduction must recover both steps with decreasing sigma.
        let base = WeylElement::from_terms(&[(0, 2, 1), (1, 0, 1)]);
        let twisted = base
            .sheared(&rat(-2), 3)
            .unwrap()
            .sheared(&ratio(1, 2), 5)
            .unwrap();
        let (reduced, trace) = reduce_upper_edge(&twisted, 16).unwrap();
        assert_eq!(reduced, base);
        let sigmas: Vec<u32> = trace.iter().map(|s| s.sigma).collect();
        assert_eq!(sigmas, vec![5, 3]);
        assert_eq!(trace[0].mu, ratio(-1, 2));
        assert_eq!(trace[1].mu, rat(2));
    }

    #[test]
    fn reduce_preserves_brackets_through_the_chain() {
        let p = WeylElement::from_terms(&[(0, 2, 1), (3, 1, -2), (6, 0, 1), (1, 0, 1)]);
        let q = WeylElement::from_terms(&[(1, 1, 1), (0, 1, 3)]);
        let before = p.bracket(&q);
        let (p1, trace) = reduce_upper_edge(&p, 16).unwrap();
        let mut q1 = q.clone();
        let mut expected = before.clone();
        for step in &trace {
            q1 = q1.sheared(&step.mu, step.sigma).unwrap();
            expected = expected.sheared(&step.mu, step.sigma).unwrap();
        }
        assert_eq!(p1.bracket(&q1), expected);
    }
}
