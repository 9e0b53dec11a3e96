use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Poly;
use crate::error::{Error, Result};
use crate::exactnum::arith::lcm;
use crate::exactnum::CycloNum;

/// `x^{x_shift} · num / den` over `Q(ζ_m)`.
///
/// Normalized: `den(0) = 1`, `gcd(num, den) = 1`, and neither `num` nor `den`
/// is divisible by `x` (all powers of `x` live in `x_shift`). Zero is
/// `0 / 1` with shift 0. These make the representation unique, so equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    x_shift: i64,
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Normalizes `x^{x_shift} · num / den`.
    pub fn new(x_shift: i64, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (num, den) = Poly::unify(&num, &den);
        if num.is_zero() {
            return Ok(Self::zero(num.conductor()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg() > 0 {
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        } else {
            (num, den)
        };
        Ok(Self::from_coprime(x_shift, num, den))
    }

    /// Like [`RationalFunction::new`] but trusts the caller that
    /// `gcd(num, den)` has no root other than possibly 0.
    pub(crate) fn from_coprime(x_shift: i64, num: Poly, den: Poly) -> Self {
        let (num, den) = Poly::unify(&num, &den);
        if num.is_zero() {
            return Self::zero(num.conductor());
        }
        let vn = num.low_order().expect("nonzero");
        let vd = den.low_order().expect("nonzero denominator");
        let num = num.shift_down(vn);
        let den = den.shift_down(vd);
        let c = den.coeff(0);
        let (num, den) = if c.is_one() {
            (num, den)
        } else {
            let inv = c.inv().expect("nonzero constant term");
            (num.scale(&inv), den.scale(&inv))
        };
        RationalFunction {
            x_shift: x_shift + vn as i64 - vd as i64,
            num,
            den,
        }
    }

    pub fn zero(conductor: u64) -> Self {
        RationalFunction {
            x_shift: 0,
            num: Poly::zero(conductor),
            den: Poly::one(conductor),
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::constant(CycloNum::one(conductor))
    }

    pub fn constant(c: CycloNum) -> Self {
        let m = c.conductor();
        Self::from_coprime(0, Poly::constant(c), Poly::one(m))
    }

    /// `x^k`.
    pub fn x_pow(k: i64) -> Self {
        RationalFunction {
            x_shift: k,
            num: Poly::one(1),
            den: Poly::one(1),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let m = p.conductor();
        Self::from_coprime(0, p, Poly::one(m))
    }

    /// `1 / (1 - λx)`.
    pub fn simple_pole(lambda: &CycloNum) -> Self {
        let m = lambda.conductor();
        Self::from_coprime(0, Poly::one(m), Poly::one(m).mul_linear(lambda))
    }

    pub fn x_shift(&self) -> i64 {
        self.x_shift
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn conductor(&self) -> u64 {
        self.num.conductor()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    pub fn promote(&self, m_new: u64) -> Result<Self> {
        Ok(RationalFunction {
            x_shift: self.x_shift,
            num: self.num.promote(m_new)?,
            den: self.den.promote(m_new)?,
        })
    }

    /// `x^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        RationalFunction {
            x_shift: self.x_shift + k,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        if c.is_zero() {
            return Self::zero(lcm(self.conductor(), c.conductor()));
        }
        let m = lcm(self.conductor(), c.conductor());
        RationalFunction {
            x_shift: self.x_shift,
            num: self.num.scale(c),
            den: self.den.promoted(m),
        }
    }

    fn sum(&self, other: &Self, negate: bool) -> Self {
        let other = if negate { -other } else { other.clone() };
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self.clone();
        }
        // With n_i coprime to d_i, a common factor of the new numerator and
        // lcm(d_1, d_2) must divide g = gcd(d_1, d_2).
        let k = self.x_shift.min(other.x_shift);
        let g = self.den.gcd(&other.den);
        let (d1, d2) = if g.deg() == 0 {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.div_rem(&g).expect("nonzero").0,
                other.den.div_rem(&g).expect("nonzero").0,
            )
        };
        let a = (&self.num * &d2).shift_up((self.x_shift - k) as usize);
        let b = (&other.num * &d1).shift_up((other.x_shift - k) as usize);
        let den = &self.den * &d2;
        if g.deg() == 0 {
            Self::from_coprime(k, &a + &b, den)
        } else {
            Self::new(k, &a + &b, den).expect("nonzero denominator")
        }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(lcm(self.conductor(), other.conductor()));
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)(c/d).
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.deg() == 0 {
                p.clone()
            } else {
                p.div_rem(g).expect("nonzero").0
            }
        };
        let num = &div(&self.num, &g1) * &div(&other.num, &g2);
        let den = &div(&self.den, &g2) * &div(&other.den, &g1);
        Self::from_coprime(self.x_shift + other.x_shift, num, den)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_coprime(
            -self.x_shift,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(self.conductor());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The numerator with the shift folded in, when `x_shift >= 0`.
    pub fn full_numerator(&self) -> Option<Poly> {
        (self.x_shift >= 0).then(|| self.num.shift_up(self.x_shift as usize))
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            x_shift: self.x_shift,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.sum(rhs, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.sum(rhs, true)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.product(rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    conductor: u64,
    coeffs: Vec<CycloNum>,
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionJson {
    x_shift: i64,
    num: PolyJson,
    den: PolyJson,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            conductor: self.conductor(),
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        Ok(Poly::from_coeffs(raw.conductor, raw.coeffs))
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RationalFunctionJson {
            x_shift: self.x_shift,
            num: PolyJson {
                conductor: self.num.conductor(),
                coeffs: self.num.coeffs().to_vec(),
            },
            den: PolyJson {
                conductor: self.den.conductor(),
                coeffs: self.den.coeffs().to_vec(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RationalFunctionJson::deserialize(deserializer)?;
        if raw.num.conductor == 0 || raw.den.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let num = Poly::from_coeffs(raw.num.conductor, raw.num.coeffs);
        let den = Poly::from_coeffs(raw.den.conductor, raw.den.coeffs);
        RationalFunction::new(raw.x_shift, num, den).map_err(serde::de::Error::custom)
    }
}
