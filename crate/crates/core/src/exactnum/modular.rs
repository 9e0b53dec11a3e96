//! Inversion in `Q[z]/(f)` for monic integer `f`, by working modulo word-size
//! primes, recombining with the Chinese remainder theorem and recovering
//! rationals by reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::pow_mod;
use super::Rat;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn to_residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p")
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
}

/// `u` with `u·a ≡ 1 (mod f, p)`, or `None` when `a` is not a unit there.
fn inverse_mod_p(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![0u64];
    let mut s1 = vec![1u64];
    while r1.len() > 1 || r1[0] != 0 {
        if r1.len() == 1 {
            let c = pow_mod(r1[0], p - 2, p);
            let mut u: Vec<u64> = s1.iter().map(|&x| mul_mod(x, c, p)).collect();
            u.resize(f.len() - 1, 0);
            return Some(u);
        }
        // r0 = q·r1 + rem, s_next = s0 - q·s1
        let lead_inv = pow_mod(*r1.last().expect("nonempty"), p - 2, p);
        let d1 = r1.len() - 1;
        let mut rem = r0.clone();
        let mut q = vec![0u64; rem.len().saturating_sub(d1).max(1)];
        for i in (d1..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let c = mul_mod(rem[i], lead_inv, p);
            q[i - d1] = c;
            for (j, &bj) in r1.iter().enumerate() {
                let k = i - d1 + j;
                rem[k] = (rem[k] + p - mul_mod(c, bj, p)) % p;
            }
        }
        rem.truncate(d1.max(1));
        trim(&mut rem);
        let mut s = s0.clone();
        s.resize(s0.len().max(q.len() + s1.len() - 1), 0);
        for (i, &qi) in q.iter().enumerate() {
            if qi == 0 {
                continue;
            }
            for (j, &sj) in s1.iter().enumerate() {
                s[i + j] = (s[i + j] + p - mul_mod(qi, sj, p)) % p;
            }
        }
        trim(&mut s);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s);
    }
    None
}

/// `n/d ≡ x (mod modulus)` with `|n|, d ≤ bound`.
fn rational_reconstruction(x: &BigInt, modulus: &BigInt, bound: &BigInt) -> Option<Rat> {
    let (mut r0, mut r1) = (modulus.clone(), x.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Candidate rational coefficients from residues modulo `modulus`.
fn reconstruct(residues: &[BigInt], modulus: &BigInt) -> Option<Vec<Rat>> {
    let bound = (modulus / 2u32).sqrt();
    let half = modulus / 2u32;
    let mut den = BigInt::one();
    residues
        .iter()
        .map(|x| {
            // Try the denominator found so far before a full reconstruction.
            let mut y = (x * &den).mod_floor(modulus);
            if y > half {
                y -= modulus;
            }
            if y.abs() <= bound {
                return Some(Rat::new(y, den.clone()));
            }
            let q = rational_reconstruction(&(x * &den), modulus, &bound)?;
            let value = Rat::new(q.numer().clone(), q.denom() * &den);
            den = den.lcm(value.denom());
            Some(value)
        })
        .collect()
}

/// Primes just below `2^62`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62))
        .rev()
        .step_by(2)
        .filter(|&n| primal_check::miller_rabin(n))
}

/// Coefficients of `a^{-1}` in `Q[z]/(f)`, `f` monic of degree `n`,
/// `a` a unit of degree `< n`. `accept` confirms a candidate exactly.
pub(crate) fn inverse_mod_monic<F>(a: &[BigInt], f: &[BigInt], accept: F) -> Vec<Rat>
where
    F: Fn(&[Rat]) -> bool,
{
    let n = f.len() - 1;
    let mut residues = vec![BigInt::zero(); n];
    let mut modulus = BigInt::one();
    let mut used = 0usize;
    let mut next_attempt = 1usize;
    for p in primes() {
        let a_p: Vec<u64> = a.iter().map(|c| to_residue(c, p)).collect();
        let f_p: Vec<u64> = f.iter().map(|c| to_residue(c, p)).collect();
        let Some(u_p) = inverse_mod_p(&a_p, &f_p, p) else {
            continue;
        };
        let m_inv = pow_mod(to_residue(&modulus, p), p - 2, p);
        for (x, &u) in residues.iter_mut().zip(&u_p) {
            let k = mul_mod((u + p - to_residue(x, p)) % p, m_inv, p);
            *x += &modulus * k;
        }
        modulus *= p;
        used += 1;
        if used < next_attempt {
            continue;
        }
        next_attempt = used * 2;
        if let Some(candidate) = reconstruct(&residues, &modulus) {
            if accept(&candidate) {
                return candidate;
            }
        }
    }
    unreachable!("prime supply exhausted")
}
