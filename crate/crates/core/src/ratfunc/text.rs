//! Canonical text form, readable back by the expression parser.
//!
//! Functions with simple cyclotomic poles and no pole at 0 print as the
//! polynomial part in increasing degree followed by pole terms sorted by
//! `(r, c)`. Anything else prints as a quotient `x^k*(P)/(Q)`.

use super::partial::{partial_fractions, RootOfUnity};
use super::{Poly, RationalFunction};
use crate::exactnum::CycloNum;

/// `(negative, magnitude text)` for `coeff · tail`, where `tail` is a
/// monomial like `x^2` or a divisor like `/(1 - x)` (or empty).
fn signed_term(coeff: &CycloNum, tail: &str, tail_is_divisor: bool) -> (bool, String) {
    let c = coeff.with_minimal_conductor();
    let (negative, body) = match c.as_rational() {
        Some(q) => {
            let negative = q < num_traits::Zero::zero();
            let mag = if negative { -q } else { q };
            let body = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            (negative, body)
        }
        None => (false, format!("({})", c.to_expr_text())),
    };
    let text = if tail.is_empty() {
        body
    } else if tail_is_divisor {
        format!("{body}{tail}")
    } else if body == "1" {
        tail.to_string()
    } else {
        format!("{body}*{tail}")
    };
    (negative, text)
}

fn join(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (neg, term)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&term);
    }
    out
}

fn monomial(i: usize) -> String {
    match i {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{i}"),
    }
}

fn poly_parts(p: &Poly) -> Vec<(bool, String)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| signed_term(c, &monomial(i), false))
        .collect()
}

/// Increasing-degree text of a polynomial in `x`.
pub fn poly_text(p: &Poly) -> String {
    join(poly_parts(p))
}

/// `1 - ζ_r^c x`, written with rational coefficients where possible.
pub fn pole_factor_text(root: RootOfUnity) -> String {
    match (root.r, root.c) {
        (1, _) => "1 - x".to_string(),
        (2, _) => "1 + x".to_string(),
        (r, 1) => format!("1 - w{{{r}}}*x"),
        (r, c) => format!("1 - w{{{r}}}^{c}*x"),
    }
}

/// Canonical text form of `r`; `parse_expression` inverts it exactly.
pub fn canonical_text(r: &RationalFunction) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    if let Ok(pf) = partial_fractions(r) {
        let mut parts = poly_parts(&pf.polynomial_part);
        for term in &pf.terms {
            let tail = format!("/({})", pole_factor_text(term.root));
            parts.push(signed_term(&term.residue, &tail, true));
        }
        return join(parts);
    }
    quotient_text(r)
}

/// `x^k*(P)/(Q)`, or `(P)/(x^k*(Q))` for negative `k`.
pub fn quotient_text(r: &RationalFunction) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let num = poly_text(r.num());
    let den = poly_text(r.den());
    let k = r.x_shift();
    let den_is_one = r.den().deg() == 0;
    match k {
        0 if den_is_one => format!("({num})"),
        0 => format!("({num})/({den})"),
        k if k > 0 && den_is_one => format!("{}*({num})", monomial(k as usize)),
        k if k > 0 => format!("{}*({num})/({den})", monomial(k as usize)),
        k if den_is_one => format!("({num})/{}", monomial((-k) as usize)),
        k => format!("({num})/({}*({den}))", monomial((-k) as usize)),
    }
}
