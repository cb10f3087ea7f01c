//! Seeded generators shared by the randomized integration suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weyl1_core::scalar::ratio;
use weyl1_core::{Direction, Scalar, UniPoly, WeylElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let num = loop {
        let n = rng.gen_range(-9..=9i64);
        if n != 0 {
            break n;
        }
    };
    ratio(num, rng.gen_range(1..=3))
}

pub fn random_element(rng: &mut impl Rng, max_terms: usize, max_exp: u32) -> WeylElement {
    loop {
        let t = rng.gen_range(1..=max_terms);
        let mut p = WeylElement::zero();
        for _ in 0..t {
            let i = rng.gen_range(0..=max_exp);
            let j = rng.gen_range(0..=max_exp);
            p = &p + &WeylElement::monomial(i, j, random_scalar(rng));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A direction with `rho + sigma > 0` and both components bounded by `bound`.
pub fn random_positive_direction(rng: &mut impl Rng, bound: i64) -> Direction {
    loop {
        let rho = rng.gen_range(-bound..=bound);
        let sigma = rng.gen_range(-bound..=bound);
        if rho + sigma > 0 {
            if let Ok(d) = Direction::new(rho, sigma) {
                return d;
            }
        }
    }
}

pub fn random_unipoly(rng: &mut impl Rng, min_terms: usize, max_terms: usize, max_exp: u32) -> UniPoly {
    loop {
        let t = rng.gen_range(min_terms..=max_terms);
        let mut exps: Vec<u32> = Vec::new();
        while exps.len() < t {
            let e = rng.gen_range(0..=max_exp);
            if !exps.contains(&e) {
                exps.push(e);
            }
        }
        let mut f = UniPoly::zero();
        for e in exps {
            f.add_term(e, random_scalar(rng));
        }
        if f.t_count() >= min_terms {
            return f;
        }
    }
}
