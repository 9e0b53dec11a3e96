//! Shared helpers for the integration tests: float evaluation oracles and
//! seeded generators of exact inputs.
#![allow(dead_code)]

use std::f64::consts::PI;

use cyclofix::cosets::{coset_reps, is_distinguished};
use cyclofix::exactnum::{root_of_unity, CycloNum, Rat};
use cyclofix::fixedpoints::ElementId;
use cyclofix::ratfunc::{Poly, RationalFunction, RootOfUnity};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn rat_to_f64(q: &Rat) -> f64 {
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}

/// `Σ c_i e^{2πi·i/m}` in floating point.
pub fn eval_cyclo(c: &CycloNum) -> Complex64 {
    let m = c.conductor() as f64;
    c.coeffs()
        .iter()
        .enumerate()
        .map(|(i, q)| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / m) * rat_to_f64(q))
        .sum()
}

pub fn eval_poly(p: &Poly, x: Complex64) -> Complex64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + eval_cyclo(c))
}

/// `x^k P(x)/Q(x)` in floating point.
pub fn eval_rational(r: &RationalFunction, x: Complex64) -> Complex64 {
    x.powi(r.x_shift() as i32) * eval_poly(r.num(), x) / eval_poly(r.den(), x)
}

/// Small random rational.
pub fn small_rat(rng: &mut StdRng) -> Rat {
    let num: i64 = rng.gen_range(-6..=6);
    let den: i64 = rng.gen_range(1..=4);
    Rat::new(num.into(), den.into())
}

/// Random element of `Q(ζ_m)` with small coefficients, nonzero.
pub fn small_cyclo(rng: &mut StdRng, m: u64) -> CycloNum {
    loop {
        let coeffs: Vec<Rat> = (0..m).map(|_| small_rat(rng)).collect();
        let c = CycloNum::from_coeffs(m, &coeffs);
        if !c.is_zero() {
            return c;
        }
    }
}

/// `k` distinct roots of unity with order dividing some element of `orders`.
pub fn distinct_roots(rng: &mut StdRng, orders: &[u64], k: usize) -> Vec<RootOfUnity> {
    let mut roots: Vec<RootOfUnity> = Vec::new();
    while roots.len() < k {
        let r = orders[rng.gen_range(0..orders.len())];
        let root = RootOfUnity::new(r, rng.gen_range(0..r as i64));
        if !roots.contains(&root) {
            roots.push(root);
        }
    }
    roots
}

/// `Σ α_j/(1 - λ_j x)` with distinct cyclotomic poles of order ≤ `max_r`
/// and residues in `Q(ζ_coeff_m)`.
pub fn random_simple_poles(
    rng: &mut StdRng,
    max_r: u64,
    count: usize,
    coeff_m: u64,
) -> Vec<(RootOfUnity, CycloNum)> {
    let orders: Vec<u64> = (1..=max_r).collect();
    distinct_roots(rng, &orders, count)
        .into_iter()
        .map(|root| (root, small_cyclo(rng, coeff_m)))
        .collect()
}

/// Basis identifiers for `(s, t)` whose pole order divides `field`.
pub fn basis_ids_in_field(s: i64, t: i64, field: u64) -> Vec<ElementId> {
    let mut ids = Vec::new();
    if t == 0 || t == s - 1 {
        ids.push(ElementId::CONSTANT);
    }
    ids.push(ElementId::POLE_AT_ONE);
    for r in 2..=field {
        if !field.is_multiple_of(r) || !is_distinguished(r, s, t) {
            continue;
        }
        for n in coset_reps(s, r).unwrap() {
            ids.push(ElementId { r, n });
        }
    }
    ids
}

/// Up to `max_terms` distinct basis ids with random nonzero coefficients in
/// `Q(ζ_12)`, sorted by id.
pub fn random_combo(
    rng: &mut StdRng,
    s: i64,
    t: i64,
    field: u64,
    max_terms: usize,
) -> Vec<(ElementId, CycloNum)> {
    let ids = basis_ids_in_field(s, t, field);
    let k = rng.gen_range(1..=max_terms.min(ids.len()));
    let mut chosen: Vec<ElementId> = Vec::new();
    while chosen.len() < k {
        let id = ids[rng.gen_range(0..ids.len())];
        if !chosen.contains(&id) {
            chosen.push(id);
        }
    }
    chosen.sort();
    chosen
        .into_iter()
        .map(|id| (id, small_cyclo(rng, 12).with_minimal_conductor()))
        .collect()
}

pub fn zeta(r: u64, k: i64) -> CycloNum {
    root_of_unity(r, k)
}
