//! Fixed points of the decimation operator: the basis functions, an exact
//! membership test, decomposition into the basis, and the shift
//! correspondence between different offsets `t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cosets::{beta_mod, coset, coset_reps, is_distinguished, ord};
use crate::decimation::phi_rational;
use crate::error::{Error, Result, Violation};
use crate::exactnum::arith::{gcd, pow_mod, residue};
use crate::exactnum::{root_of_unity, CycloNum};
use crate::ratfunc::{expand_series, partial_fractions, Poly, RationalFunction, RootOfUnity};

/// Basis element identity `(r, n)`; text form `r:n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId {
    pub r: u64,
    pub n: u64,
}

impl ElementId {
    /// The element `1/(1 - x)`.
    pub const POLE_AT_ONE: ElementId = ElementId { r: 1, n: 0 };
    /// The pole-free element: `1` when `t = 0`, `x^{-1}` when `t = s - 1`.
    pub const CONSTANT: ElementId = ElementId { r: 0, n: 0 };
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.r, self.n)
    }
}

impl FromStr for ElementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParameter(format!("element key must be \"r:n\", got {s:?}"));
        let (r, n) = s.split_once(':').ok_or_else(bad)?;
        Ok(ElementId {
            r: r.trim().parse().map_err(|_| bad())?,
            n: n.trim().parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for ElementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ElementId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One basis function with both its pole-term and reduced quotient views.
///
/// For `r ≥ 2`, `terms[j-1] = (ζ_r^{nβ(j)}, ζ_r^{n s^j})` for
/// `j = 1..Ord(s;r)`. The element `1/(1 - x)` has the single term `(1, 1)`;
/// the constant element has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiElement {
    pub s: i64,
    pub t: i64,
    pub r: u64,
    pub n: u64,
    pub terms: Vec<(CycloNum, CycloNum)>,
    pub reduced: RationalFunction,
}

impl PsiElement {
    pub fn id(&self) -> ElementId {
        ElementId {
            r: self.r,
            n: self.n,
        }
    }

    /// Poles as canonical roots of unity, in term order.
    pub fn pole_roots(&self) -> Vec<RootOfUnity> {
        element_terms(self.s, self.t, self.r, self.n)
            .into_iter()
            .map(|(root, _)| root)
            .collect()
    }
}

/// `(scale, root)` pairs of a basis element, before any reduction.
fn element_terms(s: i64, t: i64, r: u64, n: u64) -> Vec<(RootOfUnity, CycloNum)> {
    if r == 0 {
        return Vec::new();
    }
    if n == 0 || r == 1 {
        return vec![(RootOfUnity { r: 1, c: 0 }, CycloNum::one(1))];
    }
    let k = ord(s, r).expect("validated coprime");
    let s_mod = residue(s, r);
    (1..=k)
        .map(|j| {
            let b = beta_mod(s, t, j, r);
            let scale = root_of_unity(r, ((n as u128 * b as u128) % r as u128) as i64);
            let e = (n as u128 * pow_mod(s_mod, j, r) as u128 % r as u128) as i64;
            (RootOfUnity::new(r, e), scale)
        })
        .collect()
}

fn check_pair(s: i64, t: i64) -> Result<()> {
    if s < 2 || t < 0 || t > s - 1 {
        return Err(Error::BadParameter(format!(
            "need s >= 2 and 0 <= t <= s - 1, got (s, t) = ({s}, {t})"
        )));
    }
    Ok(())
}

/// The pole-free fixed point `x^{-t/(s-1)}`, when `t ∈ {0, s - 1}`.
fn pole_free_element(s: i64, t: i64) -> Option<RationalFunction> {
    if t == 0 {
        Some(RationalFunction::one(1))
    } else if t == s - 1 {
        Some(RationalFunction::x_pow(-1))
    } else {
        None
    }
}

/// The basis function for `(r, n)`, for `s ≥ 2` and `0 ≤ t ≤ s - 1`.
///
/// `r = 0` gives the pole-free element (1 for `t = 0`, `x^{-1}` for
/// `t = s - 1`); `n = 0` gives `1/(1 - x)`; otherwise the sum over the orbit
/// of the pole `ζ_r^n`.
pub fn psi(s: i64, t: i64, r: u64, n: u64) -> Result<PsiElement> {
    check_pair(s, t)?;
    let pole_free = pole_free_element(s, t);
    let admissible = if r == 0 {
        pole_free.is_some()
    } else {
        is_distinguished(r, s, t)
    };
    if !admissible {
        return Err(Error::NotDistinguished { r, s, t });
    }
    if r >= 2 && n != 0 && gcd(n % r, r) != 1 {
        return Err(Error::BadIndex { r, n });
    }
    let raw = element_terms(s, t, r, n);
    let (reduced, terms) = if r == 0 {
        (pole_free.expect("checked above"), Vec::new())
    } else {
        let reduced = RationalFunction::from_pole_terms(&Poly::zero(1), &raw);
        let terms = raw
            .iter()
            .map(|(root, scale)| (scale.clone(), root.to_cyclo().promoted(r.max(1))))
            .collect();
        (reduced, terms)
    };
    Ok(PsiElement {
        s,
        t,
        r,
        n,
        terms,
        reduced,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedBasis {
    pub s: i64,
    pub t: i64,
    pub max_r: u64,
    pub elements: Vec<PsiElement>,
}

impl FixedBasis {
    pub fn ids(&self) -> Vec<ElementId> {
        self.elements.iter().map(PsiElement::id).collect()
    }
}

/// Every basis element with pole order at most `max_r`.
pub fn basis(s: i64, t: i64, max_r: u64) -> Result<FixedBasis> {
    check_pair(s, t)?;
    if max_r < 1 {
        return Err(Error::BadParameter("max_r must be at least 1".into()));
    }
    let mut elements = Vec::new();
    if pole_free_element(s, t).is_some() {
        elements.push(psi(s, t, 0, 0)?);
    }
    elements.push(psi(s, t, 1, 0)?);
    for r in 2..=max_r {
        if !is_distinguished(r, s, t) {
            continue;
        }
        for n in coset_reps(s, r)? {
            elements.push(psi(s, t, r, n)?);
        }
    }
    Ok(FixedBasis {
        s,
        t,
        max_r,
        elements,
    })
}

/// Euclidean split `t = t' + u(s - 1)` with `0 ≤ t' ≤ s - 2`.
pub fn shift_reduce(s: i64, t: i64) -> Result<(i64, i64)> {
    if s < 2 {
        return Err(Error::BadParameter(format!(
            "shift_reduce needs s >= 2, got {s}"
        )));
    }
    Ok((t.rem_euclid(s - 1), t.div_euclid(s - 1)))
}

/// `x^{-u} R`: fixed by `φ_{s,t}` exactly when `R` is fixed by
/// `φ_{s,t - u(s-1)}`.
pub fn transport(r: &RationalFunction, u: i64) -> RationalFunction {
    r.shift(-u)
}

/// Coefficient index past which `a_n = a_{sn+t}` for all `n ≤` it forces
/// equality everywhere, for `R` without negative support.
pub fn comparison_bound(r: &RationalFunction) -> usize {
    let full_deg = r.x_shift().max(0) as usize + r.num().deg();
    let d = r.den().deg();
    full_deg + 2 * d + full_deg.saturating_sub(d) + 1
}

/// Exact test for `φ_{s,t}(R) = R`.
pub fn is_fixed(r: &RationalFunction, s: i64, t: i64) -> bool {
    if r.is_zero() {
        return true;
    }
    match s {
        1 => t == 0,
        0 => false,
        s if s < 0 => r.is_laurent_polynomial() && phi_rational(r, s, t).is_ok_and(|img| &img == r),
        _ => {
            let (t_red, u) = shift_reduce(s, t).expect("s >= 2");
            let g = transport(r, -u);
            if g.x_shift() < 0 {
                return false;
            }
            let bound = comparison_bound(&g) as i64;
            agrees_up_to(&g, s, t_red, bound)
        }
    }
}

/// `a_n = a_{sn+t}` for `0 ≤ n ≤ bound`.
pub fn agrees_up_to(r: &RationalFunction, s: i64, t: i64, bound: i64) -> bool {
    let series = expand_series(r, s * bound + t);
    let zero = CycloNum::zero(r.conductor());
    (0..=bound).all(|n| {
        let a = series.get(n).unwrap_or(&zero);
        let b = series.get(s * n + t).unwrap_or(&zero);
        a == b
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub s: i64,
    pub t: i64,
    pub combo: Vec<(ElementId, CycloNum)>,
    pub residual_ok: bool,
}

impl Decomposition {
    pub fn coeff(&self, id: ElementId) -> Option<&CycloNum> {
        self.combo.iter().find(|(k, _)| *k == id).map(|(_, c)| c)
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    s: i64,
    t: i64,
    residual_ok: bool,
    combo: ComboJson,
}

struct ComboJson(Vec<(ElementId, CycloNum)>);

impl Serialize for ComboJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (id, c) in &self.0 {
            map.serialize_entry(&id.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ComboJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, CycloNum> = BTreeMap::deserialize(deserializer)?;
        let mut out = raw
            .into_iter()
            .map(|(k, v)| Ok((k.parse().map_err(serde::de::Error::custom)?, v)))
            .collect::<std::result::Result<Vec<(ElementId, CycloNum)>, D::Error>>()?;
        out.sort_by_key(|(id, _)| *id);
        Ok(ComboJson(out))
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            s: self.s,
            t: self.t,
            residual_ok: self.residual_ok,
            combo: ComboJson(self.combo.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = DecompositionJson::deserialize(deserializer)?;
        Ok(Decomposition {
            s: raw.s,
            t: raw.t,
            combo: raw.combo.0,
            residual_ok: raw.residual_ok,
        })
    }
}

fn not_fixed(v: Violation) -> Error {
    Error::NotAFixedPoint(v)
}

/// Coordinates of a fixed point `R` of `φ_{s,t}` in the basis.
///
/// Checks run in the order: negative support, non-cyclotomic pole, repeated
/// pole, non-distinguished pole order, coset pattern, polynomial part. The
/// first failure is reported.
pub fn decompose(r: &RationalFunction, s: i64, t: i64) -> Result<Decomposition> {
    check_pair(s, t)?;
    if r.is_zero() {
        return Ok(Decomposition {
            s,
            t,
            combo: Vec::new(),
            residual_ok: true,
        });
    }
    let mut combo: Vec<(ElementId, CycloNum)> = Vec::new();
    // Only x^{-1}, and only for t = s - 1, survives at a negative index.
    let mut rest = r.clone();
    if r.x_shift() == -1 && t == s - 1 {
        let c = expand_series(r, -1).get(-1).cloned().expect("in window");
        rest = r - &RationalFunction::x_pow(-1).scale(&c);
        combo.push((ElementId::CONSTANT, c));
    }
    if rest.x_shift() < 0 {
        return Err(not_fixed(Violation::NegativeSupport));
    }
    let pf = match partial_fractions(&rest) {
        Ok(pf) => pf,
        Err(Error::NonCyclotomicPole) => return Err(not_fixed(Violation::NonCyclotomicPole)),
        Err(Error::RepeatedPole { r, c, multiplicity }) => {
            return Err(not_fixed(Violation::RepeatedPole { r, c, multiplicity }))
        }
        Err(e) => return Err(e),
    };
    if let Some(term) = pf.terms.iter().find(|x| !is_distinguished(x.root.r, s, t)) {
        return Err(not_fixed(Violation::NonDistinguished { r: term.root.r }));
    }
    let residues: BTreeMap<RootOfUnity, &CycloNum> =
        pf.terms.iter().map(|x| (x.root, &x.residue)).collect();
    let mut visited: BTreeSet<RootOfUnity> = BTreeSet::new();
    for term in &pf.terms {
        if visited.contains(&term.root) {
            continue;
        }
        let (r_ord, c) = (term.root.r, term.root.c);
        if r_ord == 1 {
            visited.insert(term.root);
            combo.push((ElementId::POLE_AT_ONE, term.residue.clone()));
            continue;
        }
        let n = coset(s, r_ord, c as i64)?.rep;
        // The j = Ord term of the element has pole ζ^n and scale 1.
        let lead_root = RootOfUnity { r: r_ord, c: n };
        let coeff = residues
            .get(&lead_root)
            .map(|c| (*c).clone())
            .unwrap_or_else(|| CycloNum::zero(1));
        for (root, scale) in element_terms(s, t, r_ord, n) {
            let expected = &coeff * &scale;
            let actual = residues.get(&root);
            let matches = match actual {
                Some(a) => **a == expected,
                None => expected.is_zero(),
            };
            if !matches {
                return Err(not_fixed(Violation::CosetPatternMismatch { r: r_ord, n }));
            }
            visited.insert(root);
        }
        combo.push((ElementId { r: r_ord, n }, coeff));
    }
    let poly = &pf.polynomial_part;
    if !poly.is_zero() {
        if t == 0 && poly.deg() == 0 && combo.iter().all(|(id, _)| *id != ElementId::CONSTANT) {
            combo.push((ElementId::CONSTANT, poly.coeff(0)));
        } else {
            return Err(not_fixed(Violation::IllegalPolynomialPart));
        }
    }
    combo.sort_by_key(|(id, _)| *id);
    let combo: Vec<_> = combo
        .into_iter()
        .map(|(id, c)| (id, c.with_minimal_conductor()))
        .collect();
    let residual_ok = combine(s, t, &combo).is_ok_and(|back| &back == r);
    Ok(Decomposition {
        s,
        t,
        combo,
        residual_ok,
    })
}

/// `Σ coeff · ψ(r, n)` built over one common denominator.
pub fn combine(s: i64, t: i64, combo: &[(ElementId, CycloNum)]) -> Result<RationalFunction> {
    check_pair(s, t)?;
    let mut pole_free_coeff = CycloNum::zero(1);
    let mut terms: Vec<(RootOfUnity, CycloNum)> = Vec::new();
    for (id, coeff) in combo {
        if id.r == 0 {
            if pole_free_element(s, t).is_none() {
                return Err(Error::NotDistinguished { r: 0, s, t });
            }
            pole_free_coeff = &pole_free_coeff + coeff;
            continue;
        }
        if !is_distinguished(id.r, s, t) {
            return Err(Error::NotDistinguished { r: id.r, s, t });
        }
        if id.r >= 2 && id.n != 0 && gcd(id.n % id.r, id.r) != 1 {
            return Err(Error::BadIndex { r: id.r, n: id.n });
        }
        for (root, scale) in element_terms(s, t, id.r, id.n) {
            terms.push((root, coeff * &scale));
        }
    }
    let poles = RationalFunction::from_pole_terms(&Poly::zero(1), &terms);
    Ok(match pole_free_element(s, t) {
        Some(e) if !pole_free_coeff.is_zero() => &poles + &e.scale(&pole_free_coeff),
        _ => poles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_expression;

    fn p(s: &str) -> RationalFunction {
        parse_expression(s).unwrap()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(3, 1, 4, 0).unwrap().reduced, p("1/(1-x)"));
        assert_eq!(psi(2, 1, 1, 0).unwrap().reduced, p("1/(1-x)"));
        assert_eq!(psi(4, 0, 0, 0).unwrap().reduced, p("1"));
        assert_eq!(psi(4, 0, 0, 5).unwrap().reduced, p("1"));
        let e = psi(2, 1, 3, 1).unwrap();
        assert_eq!(e.reduced, p("w{3}/(1 - w{3}^2 x) + 1/(1 - w{3} x)"));
        let series = expand_series(&e.reduced, 1);
        let one_plus = &CycloNum::one(3) + &root_of_unity(3, 1);
        assert_eq!(series.coeffs, vec![one_plus.clone(), one_plus]);
        assert_eq!(
            e.terms,
            vec![
                (root_of_unity(3, 1), root_of_unity(3, 2)),
                (CycloNum::one(3), root_of_unity(3, 1)),
            ]
        );
    }

    #[test]
    fn psi_errors() {
        assert_eq!(
            psi(3, 1, 2, 1).unwrap_err(),
            Error::NotDistinguished { r: 2, s: 3, t: 1 }
        );
        assert_eq!(psi(3, 1, 4, 2).unwrap_err(), Error::BadIndex { r: 4, n: 2 });
        assert!(matches!(psi(3, 3, 4, 1), Err(Error::BadParameter(_))));
        assert_eq!(
            psi(3, 1, 0, 0).unwrap_err(),
            Error::NotDistinguished { r: 0, s: 3, t: 1 }
        );
    }

    #[test]
    fn is_fixed_examples() {
        assert!(is_fixed(&p("1/(1-x)"), 2, 1));
        assert!(!is_fixed(&p("1/(1-x^2)"), 2, 1));
        assert!(is_fixed(&psi(3, 1, 4, 1).unwrap().reduced, 3, 1));
        assert!(is_fixed(&p("x/(1-x)"), 2, 0));
        assert!(is_fixed(&transport(&p("1/(1-x)"), -1), 2, 0));
        assert!(is_fixed(&p("5"), 3, 0));
        assert!(!is_fixed(&p("5"), 3, 1));
        assert!(!is_fixed(&p("1/(1-2x)"), 2, 1));
    }

    #[test]
    fn shift_reduce_examples() {
        assert_eq!(shift_reduce(2, 5).unwrap(), (0, 5));
        assert_eq!(shift_reduce(3, 4).unwrap(), (0, 2));
        assert_eq!(shift_reduce(4, -1).unwrap(), (2, -1));
        assert_eq!(transport(&p("1/(1-x)"), 0), p("1/(1-x)"));
        assert_eq!(transport(&p("1/(1-x)"), 1), p("1/(x(1-x))"));
    }

    #[test]
    fn degenerate_s() {
        let r = p("1/(1-x)");
        assert!(is_fixed(&r, 1, 0));
        assert!(!is_fixed(&r, 1, 2));
        assert!(!is_fixed(&r, 0, 0));
        assert!(!is_fixed(&r, -1, 0));
        assert!(is_fixed(&RationalFunction::zero(1), -2, 5));
        // Laurent polynomials can be fixed when s < 0.
        assert!(is_fixed(&p("1"), -1, 0));
        assert!(is_fixed(&p("x"), -2, 3));
        assert!(is_fixed(&p("x + 1/x"), -1, 0));
        assert!(!is_fixed(&p("x"), -1, 0));
    }

    #[test]
    fn basis_examples() {
        let ids = |s, t, m| basis(s, t, m).unwrap().ids();
        let id = |r, n| ElementId { r, n };
        assert_eq!(ids(2, 0, 1), vec![id(0, 0), id(1, 0)]);
        // t = s - 1 adds the pole-free element x^{-1} ahead of the poles.
        assert_eq!(ids(2, 1, 5), vec![id(0, 0), id(1, 0), id(3, 1), id(5, 1)]);
        assert_eq!(basis(2, 1, 5).unwrap().elements[0].reduced, p("1/x"));
        assert_eq!(ids(3, 1, 5), vec![id(1, 0), id(4, 1), id(5, 1)]);
        assert_eq!(ids(4, 1, 5), vec![id(1, 0), id(5, 1), id(5, 2)]);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&p("1/(1-x)"), 2, 1).unwrap();
        assert_eq!(d.combo, vec![(ElementId::POLE_AT_ONE, CycloNum::one(1))]);
        assert!(d.residual_ok);

        let r = &p("2/(1-x)") + &psi(2, 1, 3, 1).unwrap().reduced;
        let d = decompose(&r, 2, 1).unwrap();
        assert_eq!(
            d.combo,
            vec![
                (ElementId { r: 1, n: 0 }, CycloNum::from_int(2, 1)),
                (ElementId { r: 3, n: 1 }, CycloNum::one(1)),
            ]
        );
        assert!(d.residual_ok);

        assert_eq!(
            decompose(&p("1/(1-2x)"), 2, 1),
            Err(Error::NotAFixedPoint(Violation::NonCyclotomicPole))
        );
        assert_eq!(
            decompose(&p("1/(x(1-x))"), 3, 1),
            Err(Error::NotAFixedPoint(Violation::NegativeSupport))
        );
        // x^{-1}/(1 - x) = x^{-1} + 1/(1 - x) is fixed when t = s - 1
        assert!(decompose(&p("1/(x(1-x))"), 2, 1).unwrap().residual_ok);
        assert_eq!(
            decompose(&p("1/(1-x)^2"), 2, 1),
            Err(Error::NotAFixedPoint(Violation::RepeatedPole {
                r: 1,
                c: 0,
                multiplicity: 2
            }))
        );
        assert_eq!(
            decompose(&p("1/(1+x)"), 2, 1),
            Err(Error::NotAFixedPoint(Violation::NonDistinguished { r: 2 }))
        );
        assert_eq!(
            decompose(&p("1/(1-w{3}x)"), 2, 1),
            Err(Error::NotAFixedPoint(Violation::CosetPatternMismatch {
                r: 3,
                n: 1
            }))
        );
        assert_eq!(
            decompose(&p("x + 1/(1-x)"), 2, 1),
            Err(Error::NotAFixedPoint(Violation::IllegalPolynomialPart))
        );
        assert_eq!(
            decompose(&p("3 + 1/(1-x)"), 2, 1),
            Err(Error::NotAFixedPoint(Violation::IllegalPolynomialPart))
        );
        let d = decompose(&p("3 + 1/(1-x)"), 3, 0).unwrap();
        assert_eq!(
            d.coeff(ElementId::CONSTANT),
            Some(&CycloNum::from_int(3, 1))
        );
        let r = p("5/x + 1/(1-x)");
        assert!(is_fixed(&r, 2, 1));
        let d = decompose(&r, 2, 1).unwrap();
        assert_eq!(
            d.coeff(ElementId::CONSTANT),
            Some(&CycloNum::from_int(5, 1))
        );
        assert!(d.residual_ok);
        assert_eq!(
            decompose(&p("1/x^2 + 1/(1-x)"), 2, 1),
            Err(Error::NotAFixedPoint(Violation::NegativeSupport))
        );
    }

    #[test]
    fn decomposition_json_uses_element_keys() {
        let r = &p("2/(1-x)") + &psi(2, 1, 3, 1).unwrap().reduced.scale(&root_of_unity(4, 1));
        let d = decompose(&r, 2, 1).unwrap();
        let js = serde_json::to_value(&d).unwrap();
        assert!(js["combo"]["1:0"].is_object());
        assert!(js["combo"]["3:1"].is_object());
        let back: Decomposition = serde_json::from_value(js).unwrap();
        assert_eq!(back, d);
        let b = basis(3, 1, 10).unwrap();
        let back: FixedBasis = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn bound_agrees_with_longer_comparison() {
        let candidates = [
            "1/(1-x)",
            "1/(1-x^2)",
            "x^3/(1-x^3)",
            "(1 + x^7)/(1 - x^5)",
            "x^9 + 1/(1+x)",
            "(2 - x)/((1-x)(1+x))",
            "1/(1 - x - x^2)",
        ];
        for src in candidates {
            let r = p(src);
            for s in 2..=4 {
                for t in 0..=s - 2 {
                    let n = comparison_bound(&r) as i64;
                    assert_eq!(
                        agrees_up_to(&r, s, t, n),
                        agrees_up_to(&r, s, t, 5 * n),
                        "{src} s={s} t={t}"
                    );
                }
            }
        }
    }
}
