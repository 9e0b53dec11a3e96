//! Elements of the cyclotomic field `Q(ζ_m)`, stored as residues modulo `Φ_m`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{divisors, lcm, residue, totient};
use super::modular::inverse_mod_monic;
use super::table::cyclotomic_poly;
use super::Rat;
use crate::error::{Error, Result};

/// An element of `Q(ζ_m)` with `ζ_m = e^{2πi/m}`.
///
/// The element is `(Σ num[i] z^i) / den` reduced modulo `Φ_m(z)`, with
/// `num.len() == φ(m)`, `den > 0` and `gcd(content(num), den) = 1`, so two
/// elements with the same conductor are equal iff their fields are equal.
/// Conductor 1 holds plain rationals.
#[derive(Clone, Debug)]
pub struct CycloNum {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Reduces an integer coefficient vector modulo `Φ_m` in place and pads it to
/// length `φ(m)`.
fn reduce_mod_phi(m: u64, v: &mut Vec<BigInt>) {
    let phi = cyclotomic_poly(m);
    let d = phi.len() - 1;
    let small: Vec<i64> = phi
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient out of range"))
        .collect();
    for i in (d..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        for (j, &pj) in small[..d].iter().enumerate() {
            match pj {
                0 => {}
                1 => v[i - d + j] -= &c,
                -1 => v[i - d + j] += &c,
                _ => v[i - d + j] -= &c * pj,
            }
        }
    }
    v.truncate(d);
    v.resize(d, BigInt::zero());
}

impl CycloNum {
    /// Builds from an integer coefficient vector of any length over a common
    /// denominator, reducing modulo `Φ_m`.
    pub(crate) fn from_raw(conductor: u64, mut num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        assert!(!den.is_zero(), "zero denominator");
        reduce_mod_phi(conductor, &mut num);
        let mut out = CycloNum {
            conductor,
            num,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn zero(conductor: u64) -> Self {
        let d = totient(conductor) as usize;
        CycloNum {
            conductor,
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_int(1, conductor)
    }

    pub fn from_int(value: i64, conductor: u64) -> Self {
        Self::from_bigint(BigInt::from(value), conductor)
    }

    pub fn from_bigint(value: BigInt, conductor: u64) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = value;
        z
    }

    pub fn from_rat(value: &Rat, conductor: u64) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        z
    }

    /// Builds `Σ coeffs[i] ζ_m^i`; the list may be longer than `φ(m)`.
    pub fn from_coeffs(conductor: u64, coeffs: &[Rat]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_raw(conductor, num, den)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients in the power basis `1, ζ, ..., ζ^{φ(m)-1}`.
    pub fn coeffs(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|c| Rat::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the element with conductor `m_new` via `ζ_m = ζ_{m_new}^{m_new/m}`.
    pub fn promote(&self, m_new: u64) -> Result<Self> {
        if m_new == 0 || !m_new.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch {
                from: self.conductor,
                to: m_new,
            });
        }
        if m_new == self.conductor {
            return Ok(self.clone());
        }
        let step = (m_new / self.conductor) as usize;
        let mut v = vec![BigInt::zero(); step * (self.num.len() - 1) + 1];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(Self::from_raw(m_new, v, self.den.clone()))
    }

    pub(crate) fn promoted(&self, m_new: u64) -> Self {
        self.promote(m_new).expect("conductor must divide target")
    }

    /// The smallest conductor whose field contains this element, and the
    /// element re-expressed there.
    pub fn with_minimal_conductor(&self) -> Self {
        if self.as_rational().is_some() {
            let mut out = Self::zero(1);
            out.num[0] = self.num[0].clone();
            out.den = self.den.clone();
            return out;
        }
        for d in divisors(self.conductor) {
            if d == self.conductor {
                break;
            }
            if d % 4 == 2 || d == 1 {
                continue;
            }
            if let Some(v) = self.express_in(d) {
                return v;
            }
        }
        self.clone()
    }

    /// Solves for the coordinates of `self` in `Q(ζ_d)`, `d | conductor`.
    fn express_in(&self, d: u64) -> Option<Self> {
        let k = totient(d) as usize;
        let n = self.num.len();
        let basis: Vec<Vec<Rat>> = (0..k)
            .map(|i| root_of_unity(d, i as i64).promoted(self.conductor).coeffs())
            .collect();
        let target = self.coeffs();
        // Rows: n equations; columns: k unknowns + augmented target.
        let mut rows: Vec<Vec<Rat>> = (0..n)
            .map(|row| {
                let mut r: Vec<Rat> = basis.iter().map(|b| b[row].clone()).collect();
                r.push(target[row].clone());
                r
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..k {
            let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].recip();
            for x in &mut rows[rank][col..=k] {
                *x = &*x * &inv;
            }
            let pivot = rows[rank][col..=k].to_vec();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row[col..=k].iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|r| !r[k].is_zero()) {
            return None;
        }
        let mut sol = vec![Rat::zero(); k];
        for (i, &col) in pivot_cols.iter().enumerate() {
            sol[col] = rows[i][k].clone();
        }
        Some(Self::from_coeffs(d, &sol))
    }

    /// `Σ a_i b_i` over a shared conductor, reducing once at the end.
    pub fn dot<'a, I>(conductor: u64, pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a CycloNum, &'a CycloNum)>,
    {
        let d = totient(conductor) as usize;
        let mut acc = vec![BigInt::zero(); 2 * d - 1];
        let mut acc_den = BigInt::one();
        for (a, b) in pairs {
            debug_assert_eq!(a.conductor, conductor);
            debug_assert_eq!(b.conductor, conductor);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let factor = if a.den.is_one() && b.den.is_one() && acc_den.is_one() {
                None
            } else {
                let pd = &a.den * &b.den;
                if pd == acc_den {
                    None
                } else {
                    let l = acc_den.lcm(&pd);
                    let lift = &l / &acc_den;
                    if !lift.is_one() {
                        for x in acc.iter_mut() {
                            if !x.is_zero() {
                                *x *= &lift;
                            }
                        }
                    }
                    let f = &l / &pd;
                    acc_den = l;
                    if f.is_one() {
                        None
                    } else {
                        Some(f)
                    }
                }
            };
            for (i, ai) in a.num.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                let scaled;
                let ai = match &factor {
                    Some(f) => {
                        scaled = ai * f;
                        &scaled
                    }
                    None => ai,
                };
                for (j, bj) in b.num.iter().enumerate() {
                    if !bj.is_zero() {
                        acc[i + j] += ai * bj;
                    }
                }
            }
        }
        Self::from_raw(conductor, acc, acc_den)
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let m = self.conductor;
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            let mut out = CycloNum {
                conductor: m,
                num,
                den: self.den.clone(),
            };
            out.normalize();
            return out;
        }
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let x = a * &fa;
                let y = b * &fb;
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        let mut out = CycloNum {
            conductor: m,
            num,
            den: l,
        };
        out.normalize();
        out
    }

    /// Brings two operands to the lcm of their conductors.
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.conductor, b.conductor);
        (a.promoted(m), b.promoted(m))
    }

    fn binary<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(&Self, &Self) -> Self,
    {
        if self.conductor == other.conductor {
            f(self, other)
        } else {
            let (a, b) = Self::unify(self, other);
            f(&a, &b)
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        let mut out = CycloNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    /// Multiplicative inverse, computed modulo primes and confirmed exactly.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rat(&r.recip(), self.conductor));
        }
        let m = self.conductor;
        let integral = Self::from_raw(m, self.num.clone(), BigInt::one());
        let u = inverse_mod_monic(&self.num, &cyclotomic_poly(m), |u| {
            (&Self::from_coeffs(m, u) * &integral).is_one()
        });
        // (num/den)^{-1} = den * num^{-1}
        let scaled: Vec<Rat> = u.iter().map(|c| c * &self.den).collect();
        Ok(Self::from_coeffs(m, &scaled))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_unsigned(&BigInt::from(exp.unsigned_abs())))
    }

    pub fn pow_unsigned(&self, exp: &BigInt) -> Self {
        let mut acc = Self::one(self.conductor);
        let mut base = self.clone();
        let mut e = exp.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                acc = &acc * &base;
            }
            e /= &two;
            if e.is_positive() {
                base = &base * &base;
            }
        }
        acc
    }

    /// Renders the element as a polynomial in `var`, highest power first.
    pub fn to_text_with(&self, var: &str) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let value = Rat::new(c.clone(), self.den.clone());
            let negative = value.is_negative();
            let mag = value.abs();
            let coeff = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            let power = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                coeff
            } else if mag.is_one() {
                power
            } else {
                format!("{coeff}*{power}")
            };
            parts.push((negative, term));
        }
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

    /// `conductor=m` header that accompanies the `w`-polynomial text form.
    pub fn header(&self) -> String {
        format!("conductor={}", self.conductor)
    }

    /// Text form for embedding inside expressions: `w{m}` atoms.
    pub fn to_expr_text(&self) -> String {
        let var = format!("w{{{}}}", self.conductor);
        self.to_text_with(&var)
    }
}

/// `ζ_r^k` with conductor `r`.
pub fn root_of_unity(r: u64, k: i64) -> CycloNum {
    assert!(r >= 1, "order must be positive");
    let e = residue(k, r) as usize;
    let mut v = vec![BigInt::zero(); e + 1];
    v[e] = BigInt::one();
    CycloNum::from_raw(r, v, BigInt::one())
}

pub fn cyclo_arith(a: &CycloNum, b: &CycloNum, op: ArithOp) -> Result<CycloNum> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

pub fn cyclo_promote(a: &CycloNum, m_new: u64) -> Result<CycloNum> {
    a.promote(m_new)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::unify(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycloNum {}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with("w"))
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.binary(rhs, $body)
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_same(b, false));
forward_binop!(Sub, sub, |a, b| a.add_same(b, true));
forward_binop!(Mul, mul, |a, b| CycloNum::dot(a.conductor, [(a, b)]));
// Panics on a zero divisor, like integer division; use `checked_div` otherwise.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

#[derive(Serialize, Deserialize)]
struct CycloNumJson {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloNumJson {
            conductor: self.conductor,
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycloNumJson::deserialize(deserializer)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let expected = totient(raw.conductor) as usize;
        if raw.coeffs.len() != expected {
            return Err(D::Error::custom(format!(
                "conductor {} needs {} coefficients, got {}",
                raw.conductor,
                expected,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<Rat>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| D::Error::custom(format!("bad rational: {e}")))?;
        Ok(CycloNum::from_coeffs(raw.conductor, &coeffs))
    }
}
