use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::arith::lcm;
use crate::exactnum::{CycloNum, Rat};

/// Dense univariate polynomial over `Q(ζ_m)`; coefficients indexed by degree.
///
/// All coefficients share `conductor`; the coefficient list never ends in zero,
/// so the zero polynomial has an empty list.
#[derive(Clone, Debug)]
pub struct Poly {
    conductor: u64,
    coeffs: Vec<CycloNum>,
}

impl Poly {
    pub fn zero(conductor: u64) -> Self {
        Poly {
            conductor,
            coeffs: Vec::new(),
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::constant(CycloNum::one(conductor))
    }

    pub fn constant(c: CycloNum) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · x^k`.
    pub fn monomial(c: CycloNum, k: usize) -> Self {
        let m = c.conductor();
        if c.is_zero() {
            return Self::zero(m);
        }
        let mut coeffs = vec![CycloNum::zero(m); k];
        coeffs.push(c);
        Poly {
            conductor: m,
            coeffs,
        }
    }

    /// Builds from coefficients, promoting everything to a common conductor
    /// (at least `conductor`).
    pub fn from_coeffs(conductor: u64, coeffs: Vec<CycloNum>) -> Self {
        let m = coeffs
            .iter()
            .fold(conductor, |acc, c| lcm(acc, c.conductor()));
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.conductor() == m { c } else { c.promoted(m) })
            .collect();
        let mut p = Poly {
            conductor: m,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_rats(coeffs: &[Rat]) -> Self {
        Self::from_coeffs(1, coeffs.iter().map(|c| CycloNum::from_rat(c, 1)).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            1,
            coeffs.iter().map(|&c| CycloNum::from_int(c, 1)).collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(CycloNum::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> CycloNum {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| CycloNum::zero(self.conductor))
    }

    pub fn leading(&self) -> Option<&CycloNum> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn promote(&self, m_new: u64) -> Result<Self> {
        if m_new == self.conductor {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.promote(m_new))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly {
            conductor: m_new,
            coeffs,
        })
    }

    pub(crate) fn promoted(&self, m_new: u64) -> Self {
        self.promote(m_new).expect("conductor must divide target")
    }

    pub fn unify(a: &Poly, b: &Poly) -> (Poly, Poly) {
        let m = lcm(a.conductor, b.conductor);
        (a.promoted(m), b.promoted(m))
    }

    fn zip_with(&self, other: &Poly, negate: bool) -> Poly {
        if self.conductor != other.conductor {
            let (a, b) = Self::unify(self, other);
            return a.zip_with(&b, negate);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) if negate => a - b,
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) if negate => -b,
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        let mut p = Poly {
            conductor: self.conductor,
            coeffs,
        };
        p.trim();
        p
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.conductor != other.conductor {
            let (a, b) = Self::unify(self, other);
            return a.product(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.conductor);
        }
        let m = self.conductor;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..a.len() + b.len() - 1)
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                CycloNum::dot(m, (lo..=hi).map(|i| (&a[i], &b[k - i])))
            })
            .collect();
        let mut p = Poly {
            conductor: m,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn scale(&self, c: &CycloNum) -> Poly {
        let m = lcm(self.conductor, c.conductor());
        let c = c.promoted(m);
        let coeffs = self.promoted(m).coeffs.iter().map(|a| a * &c).collect();
        let mut p = Poly {
            conductor: m,
            coeffs,
        };
        p.trim();
        p
    }

    /// `x^k · self`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![CycloNum::zero(self.conductor); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// Drops the `k` lowest coefficients (exact division by `x^k` when they are zero).
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly {
        let mut p = Poly {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().take(n).cloned().collect(),
        };
        p.trim();
        p
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor != divisor.conductor {
            let (a, b) = Self::unify(self, divisor);
            return a.div_rem(&b);
        }
        let m = self.conductor;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(m), self.clone()));
        }
        let lead_inv = divisor.coeffs[db].inv()?;
        let mut quot = vec![CycloNum::zero(m); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            for (j, dj) in divisor.coeffs[..db].iter().enumerate() {
                if !dj.is_zero() {
                    rem[i - db + j] = &rem[i - db + j] - &(&c * dj);
                }
            }
            rem[i] = CycloNum::zero(m);
            quot[i - db] = c;
        }
        let mut q = Poly {
            conductor: m,
            coeffs: quot,
        };
        let mut r = Poly {
            conductor: m,
            coeffs: rem,
        };
        q.trim();
        r.trim();
        Ok((q, r))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = Self::unify(self, other);
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == 0 {
                return Poly::one(a.conductor);
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        let m = lcm(self.conductor, x.conductor());
        let x = x.promoted(m);
        let mut acc = CycloNum::zero(m);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + &c.promoted(m);
        }
        acc
    }

    /// `(1 - λx) · self`.
    pub fn mul_linear(&self, lambda: &CycloNum) -> Poly {
        let m = lcm(self.conductor, lambda.conductor());
        let p = self.promoted(m);
        let lambda = lambda.promoted(m);
        let n = p.coeffs.len();
        let coeffs = (0..=n)
            .map(|i| {
                let hi = if i < n {
                    p.coeffs[i].clone()
                } else {
                    CycloNum::zero(m)
                };
                if i == 0 {
                    hi
                } else {
                    &hi - &(&lambda * &p.coeffs[i - 1])
                }
            })
            .collect();
        let mut out = Poly {
            conductor: m,
            coeffs,
        };
        out.trim();
        out
    }

    /// Exact quotient by `(1 - λx)`, or `None` when it does not divide.
    pub fn div_linear(&self, lambda: &CycloNum) -> Option<Poly> {
        let m = lcm(self.conductor, lambda.conductor());
        let p = self.promoted(m);
        let lambda = lambda.promoted(m);
        let Some(d) = p.degree() else {
            return Some(Poly::zero(m));
        };
        if d == 0 {
            return None;
        }
        // q_0 = p_0, q_i = p_i + λ q_{i-1}; exact iff p_d + λ q_{d-1} = 0.
        let mut q: Vec<CycloNum> = Vec::with_capacity(d);
        q.push(p.coeffs[0].clone());
        for i in 1..d {
            let next = &p.coeffs[i] + &(&lambda * &q[i - 1]);
            q.push(next);
        }
        if !(&p.coeffs[d] + &(&lambda * &q[d - 1])).is_zero() {
            return None;
        }
        let mut out = Poly {
            conductor: m,
            coeffs: q,
        };
        out.trim();
        Some(out)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl Eq for Poly {}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.product(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::root_of_unity;

    #[test]
    fn arithmetic_and_division() {
        let a = Poly::from_ints(&[1, 0, 0, -1]); // 1 - x^3
        let b = Poly::from_ints(&[1, -1]); // 1 - x
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Poly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(&q * &b, a);
        assert_eq!(
            a.gcd(&Poly::from_ints(&[1, 0, -1])),
            Poly::from_ints(&[-1, 1])
        );
    }

    #[test]
    fn linear_factors() {
        let z = root_of_unity(3, 1);
        let p = Poly::one(1).mul_linear(&z).mul_linear(&root_of_unity(3, 2));
        assert_eq!(p, Poly::from_ints(&[1, 1, 1]).promoted(3));
        let q = p.div_linear(&z).unwrap();
        assert_eq!(q, Poly::one(3).mul_linear(&root_of_unity(3, 2)));
        assert!(Poly::from_ints(&[3, 2])
            .div_linear(&CycloNum::one(1))
            .is_none());
        assert!(p.div_linear(&CycloNum::one(1)).is_none());
    }

    #[test]
    fn mixed_conductors_unify() {
        let p = Poly::constant(root_of_unity(3, 1));
        let q = Poly::constant(root_of_unity(4, 1));
        let s = &p + &q;
        assert_eq!(s.conductor(), 12);
        assert_eq!(
            s.eval(&CycloNum::one(1)),
            &root_of_unity(3, 1) + &root_of_unity(4, 1)
        );
    }
}
