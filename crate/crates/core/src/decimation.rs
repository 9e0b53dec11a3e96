//! The decimation operator `Σ a_n x^n ↦ Σ a_{sn+t} x^n` on series, on
//! simple-pole terms, and on exact rational functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::cosets::beta;
use crate::error::{Error, Result};
use crate::exactnum::arith::{pow_mod, residue};
use crate::exactnum::CycloNum;
use crate::ratfunc::{expand_series, LaurentPrefix, Poly, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhiOperator {
    pub s: i64,
    pub t: i64,
}

impl PhiOperator {
    pub fn new(s: i64, t: i64) -> Self {
        PhiOperator { s, t }
    }

    pub fn apply_series(&self, a: &LaurentPrefix, n_max: i64) -> Result<LaurentPrefix> {
        phi_series(a, self.s, self.t, n_max)
    }

    pub fn apply(&self, r: &RationalFunction) -> Result<RationalFunction> {
        phi_rational(r, self.s, self.t)
    }

    pub fn iterate(&self, r: &RationalFunction, k: u32) -> Result<RationalFunction> {
        phi_rational_iterate(r, self.s, self.t, k)
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Output window `[n_lo, n_max]` of the decimated prefix.
///
/// For `s ≥ 1` the window starts where `sn + t` first reaches the input's
/// first index (or at 0). For `s = 0` it starts at 0. For `s < 0` it starts
/// at the smallest `n` whose source index is still inside the prefix; the
/// true image then has further terms below `n_lo` that the prefix cannot see.
/// Source indices below `a.n_min` read as zero.
pub fn phi_series(a: &LaurentPrefix, s: i64, t: i64, n_max: i64) -> Result<LaurentPrefix> {
    let last = a.last_index();
    let m = a.conductor();
    let n_lo = match s {
        s if s >= 1 => ceil_div(a.n_min - t, s).min(0),
        0 => 0,
        s => ceil_div(t - last, -s),
    };
    if n_max < n_lo {
        return Ok(LaurentPrefix {
            n_min: n_lo,
            coeffs: Vec::new(),
        });
    }
    let needed = match s {
        s if s >= 1 => s * n_max + t,
        0 => t,
        s => s * n_lo + t,
    };
    if needed > last {
        return Err(Error::InsufficientWindow {
            needed,
            available: last,
        });
    }
    let coeffs = (n_lo..=n_max)
        .map(|n| {
            a.get(s * n + t)
                .cloned()
                .unwrap_or_else(|| CycloNum::zero(m))
        })
        .collect();
    Ok(LaurentPrefix {
        n_min: n_lo,
        coeffs,
    })
}

/// `(λ^t, λ^s)`: `α/(1 - λx) ↦ αλ^t/(1 - λ^s x)`.
pub fn phi_pole_term(lambda: &CycloNum, s: i64, t: i64) -> Result<(CycloNum, CycloNum)> {
    if s < 1 {
        return Err(Error::BadParameter(format!(
            "pole-term action needs s >= 1, got s = {s}"
        )));
    }
    if lambda.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((lambda.pow(t)?, lambda.pow(s)?))
}

/// Order `M` with `λ^M = 1` if `λ` is a root of unity in its field.
fn root_order_bound(lambda: &CycloNum) -> Option<u64> {
    let m = lambda.conductor();
    let big = if m % 2 == 1 { 2 * m } else { m };
    lambda
        .pow(big as i64)
        .ok()
        .filter(|p| p.is_one())
        .map(|_| big)
}

fn pow_bigint(lambda: &CycloNum, e: &BigInt) -> Result<CycloNum> {
    if e.is_negative() {
        Ok(lambda.inv()?.pow_unsigned(&-e))
    } else {
        Ok(lambda.pow_unsigned(e))
    }
}

/// `(λ^{β(k)}, λ^{s^k})` for the `k`-fold iterate.
///
/// Exponents are reduced modulo the order of `λ` when `λ` is a root of
/// unity; otherwise they are used exactly.
pub fn phi_iterate_pole(lambda: &CycloNum, s: i64, t: i64, k: u32) -> Result<(CycloNum, CycloNum)> {
    if s < 1 {
        return Err(Error::BadParameter(format!(
            "pole-term action needs s >= 1, got s = {s}"
        )));
    }
    if lambda.is_zero() {
        return Err(Error::DivisionByZero);
    }
    match root_order_bound(lambda) {
        Some(order) => {
            let s_mod = residue(s, order);
            let mut b: u64 = 0;
            let t_mod = residue(t, order);
            for _ in 0..k {
                b = ((b as u128 * s_mod as u128 + t_mod as u128) % order as u128) as u64;
            }
            let sk = pow_mod(s_mod, k as u64, order);
            Ok((lambda.pow(b as i64)?, lambda.pow(sk as i64)?))
        }
        None => {
            let b = beta(s, t, k as u64);
            let sk = num_traits::pow(BigInt::from(s), k as usize);
            Ok((pow_bigint(lambda, &b)?, pow_bigint(lambda, &sk)?))
        }
    }
}

/// Shortest linear recurrence of `seq` over `Q(ζ_m)`.
///
/// Returns `(C, L)` with `C(0) = 1`, `deg C ≤ L`, and
/// `Σ_{i=0..L} C_i seq[n-i] = 0` for `L ≤ n < seq.len()`.
pub fn berlekamp_massey(seq: &[CycloNum], m: u64) -> (Vec<CycloNum>, usize) {
    let one = CycloNum::one(m);
    let mut c = vec![one.clone()];
    let mut b = vec![one.clone()];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_d = one;
    for n in 0..seq.len() {
        let upper = l.min(c.len() - 1);
        let d = CycloNum::dot(m, (0..=upper).map(|i| (&c[i], &seq[n - i])));
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = d.checked_div(&last_d).expect("nonzero discrepancy");
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, CycloNum::zero(m));
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] = &c[i + shift] - &(&coef * bi);
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_d = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    while c.len() > l + 1 && c.last().is_some_and(CycloNum::is_zero) {
        c.pop();
    }
    (c, l)
}

/// Upper bound on the linear complexity of `x^{-n0} φ(R)` for `s ≥ 2`.
fn complexity_bound(r: &RationalFunction, s: i64, t: i64, n0: i64) -> usize {
    let k = r.x_shift();
    let p = r.num().deg() as i64;
    let d = r.den().deg() as i64;
    // Terms of R outside its proper part occupy indices [k, hi_r].
    let hi_r = if k < 0 {
        Some((k + p - d).max(-1))
    } else if k + p >= d {
        Some(k + p - d)
    } else {
        None
    };
    let n1 = ceil_div(-t, s);
    let mut num_deg = if d > 0 { d - 1 + (n1 - n0).max(0) } else { -1 };
    if let Some(hi) = hi_r {
        let hi_n = (hi - t).div_euclid(s);
        num_deg = num_deg.max(hi_n - n0 + d);
    }
    d.max(num_deg + 1).max(0) as usize
}

/// Exact `φ_{s,t}(R)`.
///
/// `s ≥ 2`: the decimated series is fitted by a minimal recurrence and the
/// fit is checked on further coefficients. `s = 1`: `x^{-t} R`. `s = 0`:
/// `a_t/(1 - x)`, the image read on `n ≥ 0`. `s < 0`: defined only when the
/// image is a Laurent polynomial, which happens exactly when `R` is one.
pub fn phi_rational(r: &RationalFunction, s: i64, t: i64) -> Result<RationalFunction> {
    if r.is_zero() {
        return Ok(r.clone());
    }
    let m = r.conductor();
    match s {
        1 => Ok(r.shift(-t)),
        0 => {
            let a_t = if t < r.x_shift() {
                CycloNum::zero(m)
            } else {
                expand_series(r, t)
                    .get(t)
                    .cloned()
                    .expect("index in window")
            };
            Ok(RationalFunction::simple_pole(&CycloNum::one(m)).scale(&a_t))
        }
        s if s < 0 => {
            if !r.is_laurent_polynomial() {
                return Err(Error::NonLaurentImage);
            }
            let k = r.x_shift();
            let scale = r.den().coeff(0).inv()?;
            let mut out = RationalFunction::zero(m);
            for (i, c) in r.num().coeffs().iter().enumerate() {
                let j = k + i as i64;
                if c.is_zero() || (j - t) % s != 0 {
                    continue;
                }
                let n = (j - t) / s;
                let term = RationalFunction::x_pow(n).scale(&(c * &scale));
                out = &out + &term;
            }
            Ok(out)
        }
        _ => phi_rational_decimate(r, s, t),
    }
}

fn phi_rational_decimate(r: &RationalFunction, s: i64, t: i64) -> Result<RationalFunction> {
    let m = r.conductor();
    let d = r.den().deg();
    let n0 = ceil_div(r.x_shift() - t, s);
    let bound = complexity_bound(r, s, t, n0);
    let fit_len = 2 * bound;
    let total = fit_len + 2 * d + 2;
    let last_n = n0 + total as i64 - 1;
    let series = expand_series(r, s * last_n + t);
    let g: Vec<CycloNum> = (0..total as i64)
        .map(|i| {
            series
                .get(s * (n0 + i) + t)
                .cloned()
                .unwrap_or_else(|| CycloNum::zero(m))
        })
        .collect();
    let (c, l) = berlekamp_massey(&g[..fit_len], m);
    if l > bound {
        return Err(Error::ReconstructionMismatch {
            index: n0 + fit_len as i64 - 1,
        });
    }
    for (i, gi) in g.iter().enumerate().skip(l) {
        let upper = (c.len() - 1).min(i);
        let rest = CycloNum::dot(m, (1..=upper).map(|j| (&c[j], &g[i - j])));
        if !(gi + &rest).is_zero() {
            return Err(Error::ReconstructionMismatch {
                index: n0 + i as i64,
            });
        }
    }
    let num: Vec<CycloNum> = (0..l)
        .map(|i| {
            let upper = (c.len() - 1).min(i);
            CycloNum::dot(m, (0..=upper).map(|j| (&c[j], &g[i - j])))
        })
        .collect();
    RationalFunction::new(n0, Poly::from_coeffs(m, num), Poly::from_coeffs(m, c))
}

/// `φ^{(k)}(R)` by repeated application.
pub fn phi_rational_iterate(
    r: &RationalFunction,
    s: i64,
    t: i64,
    k: u32,
) -> Result<RationalFunction> {
    let mut out = r.clone();
    for _ in 0..k {
        out = phi_rational(&out, s, t)?;
    }
    Ok(out)
}

impl LaurentPrefix {
    /// True when every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloNum::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{root_of_unity, Rat};
    use crate::ratfunc::parse_expression;

    fn p(s: &str) -> RationalFunction {
        parse_expression(s).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<CycloNum> {
        v.iter().map(|&x| CycloNum::from_int(x, 1)).collect()
    }

    #[test]
    fn series_examples() {
        let a = expand_series(&p("1/(1-x)"), 6);
        let out = phi_series(&a, 2, 1, 2).unwrap();
        assert_eq!((out.n_min, out.coeffs), (0, ints(&[1, 1, 1])));

        let a = expand_series(&p("1/(1-2x)"), 9);
        let out = phi_series(&a, 2, 1, 4).unwrap();
        assert_eq!(out.coeffs, ints(&[2, 8, 32, 128, 512]));

        let a = expand_series(&p("(1+x)/(1-x^3) + 5x^3"), 5);
        let out = phi_series(&a, 0, 3, 3).unwrap();
        assert_eq!(out.coeffs, ints(&[6, 6, 6, 6]));

        assert_eq!(
            phi_series(&a, 2, 1, 3),
            Err(Error::InsufficientWindow {
                needed: 7,
                available: 5
            })
        );
    }

    #[test]
    fn series_with_negative_indices() {
        // x^{-3}/(1-x): a_n = 1 for n >= -3
        let a = expand_series(&p("1/(x^3(1-x))"), 5);
        let out = phi_series(&a, 2, 0, 2).unwrap();
        assert_eq!(out.n_min, -1);
        assert_eq!(out.coeffs, ints(&[1, 1, 1, 1]));
        // s = -1 reverses: b_n = a_{-n}
        let a = expand_series(&p("1/x^2 + 3 + 7x"), 4);
        let out = phi_series(&a, -1, 0, 3).unwrap();
        assert_eq!(out.n_min, -4);
        assert_eq!(out.coeffs, ints(&[0, 0, 0, 7, 3, 0, 1, 0]));
    }

    #[test]
    fn pole_term_examples() {
        let one = CycloNum::one(1);
        assert_eq!(
            phi_pole_term(&one, 5, 3).unwrap(),
            (one.clone(), one.clone())
        );
        let z4 = root_of_unity(4, 1);
        assert_eq!(
            phi_pole_term(&z4, 2, 1).unwrap(),
            (z4.clone(), CycloNum::from_int(-1, 4))
        );
        let z3 = root_of_unity(3, 1);
        assert_eq!(
            phi_pole_term(&z3, 3, 1).unwrap(),
            (z3.clone(), CycloNum::one(3))
        );
        assert_eq!(
            phi_iterate_pole(&z4, 3, 1, 2).unwrap(),
            (CycloNum::one(4), z4.clone())
        );
    }

    #[test]
    fn iterate_pole_matches_composition() {
        let lambdas = [
            root_of_unity(5, 2),
            root_of_unity(12, 7),
            root_of_unity(9, 4),
            CycloNum::from_int(2, 1),
            CycloNum::from_rat(&Rat::new((-2).into(), 3.into()), 1),
            &root_of_unity(3, 1) * &CycloNum::from_int(2, 3),
        ];
        for lambda in &lambdas {
            for s in 1..=4 {
                for t in -2..=4 {
                    let mut scale = CycloNum::one(lambda.conductor());
                    let mut pole = lambda.clone();
                    for k in 1..=5 {
                        let (sc, np) = phi_pole_term(&pole, s, t).unwrap();
                        scale = &scale * &sc;
                        pole = np;
                        assert_eq!(
                            phi_iterate_pole(lambda, s, t, k).unwrap(),
                            (scale.clone(), pole.clone()),
                            "lambda={lambda} s={s} t={t} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn berlekamp_massey_finds_fibonacci() {
        let mut f = vec![CycloNum::one(1), CycloNum::one(1)];
        for i in 2..12 {
            let next = &f[i - 1] + &f[i - 2];
            f.push(next);
        }
        let (c, l) = berlekamp_massey(&f, 1);
        assert_eq!(l, 2);
        assert_eq!(c, ints(&[1, -1, -1]));
        let (c, l) = berlekamp_massey(&ints(&[0, 0, 0]), 1);
        assert_eq!((c, l), (ints(&[1]), 0));
        let (_, l) = berlekamp_massey(&ints(&[0, 0, 5, 0]), 1);
        assert_eq!(l, 3);
    }

    #[test]
    fn rational_examples() {
        assert_eq!(phi_rational(&p("1/(1-2x)"), 2, 1).unwrap(), p("2/(1-4x)"));
        assert_eq!(phi_rational(&p("1/(1-x)"), 2, 1).unwrap(), p("1/(1-x)"));
        assert_eq!(
            phi_rational(&p("(1+x)/(1-x^3)"), 0, 2).unwrap(),
            RationalFunction::zero(1)
        );
        assert_eq!(
            phi_rational(&p("(1+x)/(1-x^3)"), 0, 1).unwrap(),
            p("1/(1-x)")
        );
        assert_eq!(
            phi_rational(&p("x/(1-x)"), 1, 3).unwrap(),
            p("1/(x^2(1-x))")
        );
        assert_eq!(phi_rational(&p("1 + x + x^2"), 3, 1).unwrap(), p("1"));
        assert_eq!(phi_rational(&p("1 + x + x^2"), 3, 0).unwrap(), p("1"));
        assert_eq!(
            phi_rational(&p("x + x^2"), 3, 0).unwrap(),
            RationalFunction::zero(1)
        );
    }

    #[test]
    fn rational_with_laurent_and_polynomial_parts() {
        let r = p("1/x^5 + 2/x^3 + 1/(1-x^2) + 4x^6 - x^9");
        for s in 2..=4 {
            for t in -6..=6 {
                let img = phi_rational(&r, s, t).unwrap();
                let n_max = 12;
                let a = expand_series(&r, s * n_max + t);
                let want = phi_series(&a, s, t, n_max).unwrap();
                let lo = want.n_min.min(img.x_shift().min(0));
                let got = expand_series(&img, n_max);
                for n in lo..=n_max {
                    let zero = CycloNum::zero(1);
                    assert_eq!(
                        got.get(n).unwrap_or(&zero),
                        want.get(n).unwrap_or(&zero),
                        "s={s} t={t} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn negative_s_on_laurent_polynomials() {
        assert_eq!(phi_rational(&p("1"), -1, 0).unwrap(), p("1"));
        assert_eq!(phi_rational(&p("x"), -2, 3).unwrap(), p("x"));
        assert_eq!(
            phi_rational(&p("1/x^2 + 3 + 7x"), -1, 0).unwrap(),
            p("x^2 + 3 + 7/x")
        );
        assert_eq!(
            phi_rational(&p("1/(1-x)"), -1, 0),
            Err(Error::NonLaurentImage)
        );
    }

    #[test]
    fn cyclotomic_image_matches_pole_closed_form() {
        let z = root_of_unity(12, 5);
        let r = RationalFunction::simple_pole(&z).scale(&root_of_unity(3, 1));
        for (s, t) in [(2, 0), (2, 1), (3, 1), (3, 2), (5, 4)] {
            let (scale, pole) = phi_pole_term(&z, s, t).unwrap();
            let want = RationalFunction::simple_pole(&pole).scale(&(&scale * &root_of_unity(3, 1)));
            assert_eq!(phi_rational(&r, s, t).unwrap(), want, "s={s} t={t}");
        }
        // t >= s also picks up a_{sn+t} for n < 0: here n = -1 reads a_2.
        let (scale, pole) = phi_pole_term(&z, 5, 7).unwrap();
        let c = root_of_unity(3, 1);
        let closed = RationalFunction::simple_pole(&pole).scale(&(&scale * &c));
        let extra = RationalFunction::x_pow(-1).scale(&(&c * &z.pow(2).unwrap()));
        assert_eq!(phi_rational(&r, 5, 7).unwrap(), &closed + &extra);
    }
}
