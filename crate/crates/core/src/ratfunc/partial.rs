//! Cyclotomic denominators and simple-pole partial fractions.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Poly, RationalFunction};
use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, lcm, residue, totient};
use crate::exactnum::{cyclotomic_poly, root_of_unity, CycloNum};

/// The root of unity `ζ_r^c` in lowest terms: `gcd(c, r) = 1`, and `c = 0`
/// only for `r = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub r: u64,
    pub c: u64,
}

impl RootOfUnity {
    /// `ζ_m^k`, reduced to lowest terms.
    pub fn new(m: u64, k: i64) -> Self {
        let k = residue(k, m);
        if k == 0 {
            return RootOfUnity { r: 1, c: 0 };
        }
        let g = gcd(k, m);
        RootOfUnity { r: m / g, c: k / g }
    }

    pub fn to_cyclo(self) -> CycloNum {
        root_of_unity(self.r, self.c as i64)
    }

    pub fn pow(self, e: i64) -> Self {
        Self::new(
            self.r,
            (self.c as i128 * e as i128).rem_euclid(self.r as i128) as i64,
        )
    }

    pub fn inverse(self) -> Self {
        self.pow(-1)
    }
}

/// One factor `(1 - ζ_r^c x)^multiplicity` of a denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleEntry {
    pub r: u64,
    pub c: u64,
    pub multiplicity: usize,
}

impl PoleEntry {
    pub fn root(&self) -> RootOfUnity {
        RootOfUnity {
            r: self.r,
            c: self.c,
        }
    }
}

/// Complete factorization of a denominator into `(1 - ζ_r^c x)` factors,
/// sorted by `(r, c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleSpec {
    pub entries: Vec<PoleEntry>,
}

impl PoleSpec {
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Rebuilds `Π (1 - ζ_r^c x)^mult`.
    pub fn reconstruct(&self) -> Poly {
        let mut p = Poly::one(1);
        for e in &self.entries {
            let lambda = e.root().to_cyclo();
            for _ in 0..e.multiplicity {
                p = p.mul_linear(&lambda);
            }
        }
        p
    }
}

/// Powers `ζ_m^e`, built on demand.
struct RootPowers {
    m: u64,
    cache: HashMap<u64, CycloNum>,
}

impl RootPowers {
    fn new(m: u64) -> Self {
        RootPowers {
            m,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, e: i64) -> &CycloNum {
        let e = residue(e, self.m);
        let m = self.m;
        self.cache
            .entry(e)
            .or_insert_with(|| root_of_unity(m, e as i64))
    }
}

/// `q(ζ_m^{-k})` evaluated with a single reduction.
fn eval_at_inverse_root(q: &Poly, powers: &mut RootPowers, k: i64) -> CycloNum {
    let m = powers.m;
    debug_assert_eq!(q.conductor(), m);
    let roots: Vec<CycloNum> = (0..q.coeffs().len())
        .map(|i| powers.get(-k * i as i64).clone())
        .collect();
    CycloNum::dot(m, q.coeffs().iter().zip(roots.iter()))
}

/// Divides out every factor `(1 - ζ_m^k x)` of `rem`; `rem` has conductor `m`.
fn strip_roots_of_order_dividing(
    rem: &mut Poly,
    m: u64,
    exponents: impl Iterator<Item = u64>,
    found: &mut BTreeMap<RootOfUnity, usize>,
) {
    let mut powers = RootPowers::new(m);
    for k in exponents {
        loop {
            if rem.deg() == 0 {
                return;
            }
            if !eval_at_inverse_root(rem, &mut powers, k as i64).is_zero() {
                break;
            }
            let lambda = powers.get(k as i64).clone();
            *rem = rem.div_linear(&lambda).expect("root was verified");
            *found.entry(RootOfUnity::new(m, k as i64)).or_insert(0) += 1;
        }
    }
}

/// The rational polynomial `Π_σ σ(p)` over the Galois group of `Q(ζ_m)`.
fn rational_norm(p: &Poly) -> Poly {
    let m = p.conductor();
    let mut acc = Poly::one(m);
    for a in (1..m.max(2)).filter(|&a| gcd(a, m) == 1) {
        let conj: Vec<CycloNum> = p
            .coeffs()
            .iter()
            .map(|c| apply_automorphism(c, a))
            .collect();
        acc = &acc * &Poly::from_coeffs(m, conj);
    }
    let rational: Vec<CycloNum> = acc
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().expect("norm of a polynomial is rational");
            CycloNum::from_rat(&q, 1)
        })
        .collect();
    Poly::from_coeffs(1, rational)
}

/// `σ_a: ζ_m ↦ ζ_m^a`.
fn apply_automorphism(c: &CycloNum, a: u64) -> CycloNum {
    let m = c.conductor();
    let mut terms = vec![crate::exactnum::Rat::from_integer(0.into()); m as usize];
    for (i, ci) in c.coeffs().into_iter().enumerate() {
        let e = (i as u64 * a % m) as usize;
        terms[e] += ci;
    }
    CycloNum::from_coeffs(m, &terms)
}

fn divides(divisor: &Poly, dividend: &Poly) -> bool {
    dividend
        .div_rem(divisor)
        .map(|(_, r)| r.is_zero())
        .unwrap_or(false)
}

/// Factors a denominator with `Q(0) = 1` into linear factors `(1 - ζ_r^c x)`.
///
/// Roots lying in the coefficient field are found by direct evaluation. Any
/// leftover factor is tested against `Φ_r` through its rational norm, for every
/// `r` whose root field has degree at most the leftover degree over the
/// coefficient field. A nonconstant leftover raises `NonCyclotomicFactor`.
pub fn detect_cyclotomic_denominator(q: &Poly) -> Result<PoleSpec> {
    if q.is_zero() || !q.coeff(0).is_one() {
        return Err(Error::BadParameter(
            "denominator must have constant term 1".into(),
        ));
    }
    let m0 = q.conductor();
    // Q(ζ_m) contains exactly the roots of unity of order dividing m (m even)
    // or 2m (m odd).
    let m = if m0 % 2 == 1 { 2 * m0 } else { m0 };
    let mut rem = q.promoted(m);
    let mut found = BTreeMap::new();
    strip_roots_of_order_dividing(&mut rem, m, 0..m, &mut found);

    if rem.deg() > 0 {
        let base_degree = rem.deg() as u64;
        let norm = rational_norm(&rem);
        let norm_deg = norm.deg() as u64;
        let phi_m = totient(m);
        let bound = 2 * norm_deg * norm_deg;
        for r in 1..=bound {
            if rem.deg() == 0 {
                break;
            }
            if m % r == 0 {
                continue;
            }
            let big = lcm(m, r);
            if totient(r) > norm_deg || totient(big) > base_degree * phi_m {
                continue;
            }
            // x^{deg} Φ_r(1/x) = ±Φ_r(x) for r > 1, so test the reversed norm.
            let phi_r = Poly::from_coeffs(
                1,
                cyclotomic_poly(r)
                    .iter()
                    .map(|c| CycloNum::from_bigint(c.clone(), 1))
                    .collect(),
            );
            let reversed_norm = Poly::from_coeffs(1, norm.coeffs().iter().rev().cloned().collect());
            if !divides(&phi_r, &reversed_norm) {
                continue;
            }
            let big = lcm(rem.conductor(), r);
            rem = rem.promoted(big);
            let step = big / r;
            let units = (1..r).filter(|&c| gcd(c, r) == 1).map(|c| c * step);
            strip_roots_of_order_dividing(&mut rem, big, units, &mut found);
        }
    }
    if rem.deg() > 0 {
        return Err(Error::NonCyclotomicFactor { degree: rem.deg() });
    }
    debug_assert!(rem.coeff(0).is_one());
    let entries = found
        .into_iter()
        .map(|(root, multiplicity)| PoleEntry {
            r: root.r,
            c: root.c,
            multiplicity,
        })
        .collect();
    Ok(PoleSpec { entries })
}

/// One term `residue / (1 - pole·x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleTerm {
    pub root: RootOfUnity,
    pub pole: CycloNum,
    pub residue: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFractions {
    pub polynomial_part: Poly,
    pub terms: Vec<PoleTerm>,
}

/// `R = C(x) + Σ α_j / (1 - λ_j x)` for `R` with simple cyclotomic poles.
pub fn partial_fractions(r: &RationalFunction) -> Result<PartialFractions> {
    if r.is_zero() {
        return Ok(PartialFractions {
            polynomial_part: Poly::zero(r.conductor()),
            terms: Vec::new(),
        });
    }
    let numerator = r.full_numerator().ok_or(Error::PoleAtZero)?;
    let spec = match detect_cyclotomic_denominator(r.den()) {
        Ok(spec) => spec,
        Err(Error::NonCyclotomicFactor { .. }) => return Err(Error::NonCyclotomicPole),
        Err(e) => return Err(e),
    };
    if let Some(e) = spec.entries.iter().find(|e| e.multiplicity > 1) {
        return Err(Error::RepeatedPole {
            r: e.r,
            c: e.c,
            multiplicity: e.multiplicity,
        });
    }
    let (poly_part, proper) = numerator.div_rem(r.den())?;
    let field = spec
        .entries
        .iter()
        .fold(r.conductor(), |acc, e| lcm(acc, e.r));
    let proper = proper.promoted(field);
    let exps: Vec<i64> = spec
        .entries
        .iter()
        .map(|e| (e.c * (field / e.r)) as i64)
        .collect();
    let mut powers = RootPowers::new(field);
    let mut one_minus: HashMap<u64, CycloNum> = HashMap::new();
    let one = CycloNum::one(field);
    let mut terms = Vec::with_capacity(exps.len());
    for (j, &ej) in exps.iter().enumerate() {
        let value = eval_at_inverse_root(&proper, &mut powers, ej);
        let mut prod = one.clone();
        for (i, &ei) in exps.iter().enumerate() {
            if i == j {
                continue;
            }
            let e = residue(ei - ej, field);
            let factor = one_minus
                .entry(e)
                .or_insert_with(|| &one - &root_of_unity(field, e as i64));
            prod = &prod * &*factor;
        }
        let residue = value.checked_div(&prod)?;
        let entry = spec.entries[j];
        terms.push(PoleTerm {
            root: entry.root(),
            pole: entry.root().to_cyclo(),
            residue,
        });
    }
    Ok(PartialFractions {
        polynomial_part: poly_part,
        terms,
    })
}

impl RationalFunction {
    /// `C(x) + Σ α / (1 - ζ x)`; equal roots are merged and zero residues dropped.
    pub fn from_pole_terms(poly_part: &Poly, terms: &[(RootOfUnity, CycloNum)]) -> Self {
        let mut merged: BTreeMap<RootOfUnity, CycloNum> = BTreeMap::new();
        for (root, alpha) in terms {
            match merged.get_mut(root) {
                Some(acc) => *acc = &*acc + alpha,
                None => {
                    merged.insert(*root, alpha.clone());
                }
            }
        }
        merged.retain(|_, a| !a.is_zero());
        let field = merged.iter().fold(poly_part.conductor(), |acc, (root, a)| {
            lcm(lcm(acc, root.r), a.conductor())
        });
        let poles: Vec<(CycloNum, CycloNum)> = merged
            .iter()
            .map(|(root, a)| (root.to_cyclo().promoted(field), a.promoted(field)))
            .collect();
        let mut den = Poly::one(field);
        for (lambda, _) in &poles {
            den = den.mul_linear(lambda);
        }
        let mut num = &poly_part.promoted(field) * &den;
        for (lambda, alpha) in &poles {
            let cofactor = den.div_linear(lambda).expect("factor of the product");
            num = &num + &cofactor.scale(alpha);
        }
        RationalFunction::from_coprime(0, num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rat;
    use crate::ratfunc::parse_expression;

    fn entry(r: u64, c: u64, multiplicity: usize) -> PoleEntry {
        PoleEntry { r, c, multiplicity }
    }

    fn half() -> CycloNum {
        CycloNum::from_rat(&Rat::new(1.into(), 2.into()), 1)
    }

    #[test]
    fn detect_examples() {
        let spec = detect_cyclotomic_denominator(&Poly::from_ints(&[1, -1])).unwrap();
        assert_eq!(spec.entries, vec![entry(1, 0, 1)]);
        let spec = detect_cyclotomic_denominator(&Poly::from_ints(&[1, 0, 0, -1])).unwrap();
        assert_eq!(
            spec.entries,
            vec![entry(1, 0, 1), entry(3, 1, 1), entry(3, 2, 1)]
        );
        assert_eq!(
            detect_cyclotomic_denominator(&Poly::from_ints(&[1, -2])),
            Err(Error::NonCyclotomicFactor { degree: 1 })
        );
    }

    #[test]
    fn detect_orders_outside_the_coefficient_field() {
        // (1 - x^5)(1 + x^2)^2 over Q: roots of order 5 and 4.
        let q = &(&Poly::from_ints(&[1, 0, 0, 0, 0, -1]) * &Poly::from_ints(&[1, 0, 1]))
            * &Poly::from_ints(&[1, 0, 1]);
        let spec = detect_cyclotomic_denominator(&q).unwrap();
        assert_eq!(
            spec.entries,
            vec![
                entry(1, 0, 1),
                entry(4, 1, 2),
                entry(4, 3, 2),
                entry(5, 1, 1),
                entry(5, 2, 1),
                entry(5, 3, 1),
                entry(5, 4, 1),
            ]
        );
        assert_eq!(spec.reconstruct(), q);
        // A factor over Q(ζ_3) with a root of order 7: (1 - ζ_7 x)(1 - ζ_3 x).
        let q = Poly::one(1)
            .mul_linear(&root_of_unity(7, 1))
            .promoted(21)
            .mul_linear(&root_of_unity(3, 1));
        let q3 = Poly::one(3).mul_linear(&root_of_unity(3, 1));
        let spec = detect_cyclotomic_denominator(&q).unwrap();
        assert_eq!(spec.entries, vec![entry(3, 1, 1), entry(7, 1, 1)]);
        // same thing with the order-7 factor only detectable through the norm
        let only7 = Poly::one(1).mul_linear(&root_of_unity(7, 3));
        let mixed = &q3 * &only7;
        let spec = detect_cyclotomic_denominator(&mixed).unwrap();
        assert_eq!(spec.entries, vec![entry(3, 1, 1), entry(7, 3, 1)]);
    }

    #[test]
    fn detect_rejects_non_cyclotomic_leftovers() {
        // (1 - x)(1 - x - x^2): golden-ratio roots
        let q = &Poly::from_ints(&[1, -1]) * &Poly::from_ints(&[1, -1, -1]);
        assert_eq!(
            detect_cyclotomic_denominator(&q),
            Err(Error::NonCyclotomicFactor { degree: 2 })
        );
    }

    #[test]
    fn partial_fraction_examples() {
        let pf = partial_fractions(&parse_expression("1/(1-x^2)").unwrap()).unwrap();
        assert!(pf.polynomial_part.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert_eq!(pf.terms[0].root, RootOfUnity { r: 1, c: 0 });
        assert_eq!(pf.terms[0].residue, half());
        assert_eq!(pf.terms[1].root, RootOfUnity { r: 2, c: 1 });
        assert_eq!(pf.terms[1].pole, CycloNum::from_int(-1, 1));
        assert_eq!(pf.terms[1].residue, half());

        let pf = partial_fractions(&parse_expression("1/(1-x)").unwrap()).unwrap();
        assert_eq!(pf.terms.len(), 1);
        assert!(pf.terms[0].residue.is_one());

        let r = parse_expression("(2-x)/((1-x)(1+x))").unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.terms[0].residue, half());
        assert_eq!(
            pf.terms[1].residue,
            CycloNum::from_rat(&Rat::new(3.into(), 2.into()), 1)
        );
        let terms: Vec<_> = pf
            .terms
            .iter()
            .map(|t| (t.root, t.residue.clone()))
            .collect();
        assert_eq!(
            RationalFunction::from_pole_terms(&pf.polynomial_part, &terms),
            r
        );
    }

    #[test]
    fn partial_fraction_errors() {
        assert_eq!(
            partial_fractions(&parse_expression("1/(1-x)^2").unwrap()),
            Err(Error::RepeatedPole {
                r: 1,
                c: 0,
                multiplicity: 2
            })
        );
        assert_eq!(
            partial_fractions(&parse_expression("1/(1-2x)").unwrap()),
            Err(Error::NonCyclotomicPole)
        );
        assert_eq!(
            partial_fractions(&parse_expression("1/(x(1-x))").unwrap()),
            Err(Error::PoleAtZero)
        );
    }

    #[test]
    fn polynomial_part_is_split_off() {
        let r = parse_expression("(x^3 + 2)/(1-x)").unwrap();
        let pf = partial_fractions(&r).unwrap();
        // x^3 + 2 = (1 - x)(-x^2 - x - 1) + 3
        assert_eq!(pf.polynomial_part, Poly::from_ints(&[-1, -1, -1]));
        assert_eq!(pf.terms[0].residue, CycloNum::from_int(3, 1));
    }
}
