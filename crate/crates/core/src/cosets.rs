//! Multiplicative orders, the exponent sums `β`, distinguished integers and
//! cyclotomic cosets.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairST {
    pub s: i64,
    pub t: i64,
}

fn coprime_residue(s: i64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::NotCoprime {
            a: s,
            b: r,
            gcd: s.unsigned_abs(),
        });
    }
    let g = gcd(residue(s, r), r);
    if g != 1 {
        return Err(Error::NotCoprime { a: s, b: r, gcd: g });
    }
    Ok(residue(s, r))
}

/// Multiplicative order of `s` modulo `r`; `ord(s, 1) = 1`.
pub fn ord(s: i64, r: u64) -> Result<u64> {
    let a = coprime_residue(s, r)? as u128;
    let r = r as u128;
    let mut x = a % r;
    let mut k = 1;
    while x != 1 % r {
        x = x * a % r;
        k += 1;
    }
    Ok(k)
}

/// `β(k)` from `β(0) = 0`, `β(j+1) = s·β(j) + t`.
pub fn beta(s: i64, t: i64, k: u64) -> BigInt {
    let (s, t) = (BigInt::from(s), BigInt::from(t));
    let mut b = BigInt::zero();
    for _ in 0..k {
        b = &s * &b + &t;
    }
    b
}

/// `β(k) mod r` in `[0, r)`.
pub fn beta_mod(s: i64, t: i64, k: u64, r: u64) -> u64 {
    let r128 = r as i128;
    let (s, t) = ((s as i128).rem_euclid(r128), (t as i128).rem_euclid(r128));
    let mut b: i128 = 0;
    for _ in 0..k {
        b = (s * b + t) % r128;
    }
    b as u64
}

/// `r ≥ 1` coprime to `s` with `r | β(Ord(s;r))`, or `r = 0` when `t = 0`.
pub fn is_distinguished(r: u64, s: i64, t: i64) -> bool {
    if r == 0 {
        return t == 0;
    }
    match ord(s, r) {
        Ok(k) => beta_mod(s, t, k, r) == 0,
        Err(_) => false,
    }
}

/// One row of the Ω sweep; `ord` and `beta_mod_r` are absent when they are
/// undefined (`r = 0` or `gcd(r, s) > 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaRow {
    pub r: u64,
    pub ord: Option<u64>,
    pub beta_mod_r: Option<u64>,
    pub distinguished: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaTable {
    pub s: i64,
    pub t: i64,
    pub max_r: u64,
    pub members: Vec<u64>,
    pub rows: Vec<OmegaRow>,
}

fn omega_row(r: u64, s: i64, t: i64) -> OmegaRow {
    if r == 0 {
        return OmegaRow {
            r,
            ord: None,
            beta_mod_r: None,
            distinguished: t == 0,
        };
    }
    match ord(s, r) {
        Ok(k) => {
            let b = beta_mod(s, t, k, r);
            OmegaRow {
                r,
                ord: Some(k),
                beta_mod_r: Some(b),
                distinguished: b == 0,
            }
        }
        Err(_) => OmegaRow {
            r,
            ord: None,
            beta_mod_r: None,
            distinguished: false,
        },
    }
}

/// All distinguished `r` in `[0, max_r]`, with per-`r` detail rows.
pub fn omega_enumerate(s: i64, t: i64, max_r: u64) -> OmegaTable {
    let rows: Vec<OmegaRow> = (0..=max_r).map(|r| omega_row(r, s, t)).collect();
    let members = rows
        .iter()
        .filter(|row| row.distinguished)
        .map(|row| row.r)
        .collect();
    OmegaTable {
        s,
        t,
        max_r,
        members,
        rows,
    }
}

impl OmegaTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["r", "ord", "beta_mod_r", "distinguished"])
            .map_err(csv_err)?;
        let opt = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
        for row in &self.rows {
            w.write_record([
                row.r.to_string(),
                opt(row.ord),
                opt(row.beta_mod_r),
                row.distinguished.to_string(),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::BadParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::BadParameter(e.to_string())
}

/// The orbit `{s^i n mod r}` with its minimal member as representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRecord {
    pub s: i64,
    pub r: u64,
    pub rep: u64,
    pub members: Vec<u64>,
    pub ord: u64,
}

pub fn coset(s: i64, r: u64, n: i64) -> Result<CosetRecord> {
    let a = coprime_residue(s, r)? as u128;
    let start = residue(n, r);
    let mut members = vec![start];
    let mut x = (start as u128 * a % r as u128) as u64;
    while x != start {
        members.push(x);
        x = (x as u128 * a % r as u128) as u64;
    }
    members.sort_unstable();
    Ok(CosetRecord {
        s,
        r,
        rep: members[0],
        members,
        ord: ord(s, r)?,
    })
}

/// Minimal representatives of the cosets of units mod `r`, ascending.
pub fn coset_reps(s: i64, r: u64) -> Result<Vec<u64>> {
    let a = coprime_residue(s, r)? as u128;
    let mut seen = vec![false; r as usize];
    let mut reps = Vec::new();
    for n in 1..r {
        if seen[n as usize] || gcd(n, r) != 1 {
            continue;
        }
        reps.push(n);
        let mut x = n;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = (x as u128 * a % r as u128) as u64;
        }
    }
    Ok(reps)
}

impl CosetRecord {
    pub fn contains(&self, n: u64) -> bool {
        self.members.binary_search(&(n % self.r)).is_ok()
    }
}

/// `β(k)` by the closed form `t(s^k - 1)/(s - 1)`; `s ≠ 1`.
pub fn beta_closed_form(s: i64, t: i64, k: u64) -> BigInt {
    assert_ne!(s, 1, "closed form needs s != 1");
    let sk = num_traits::pow(BigInt::from(s), k as usize);
    BigInt::from(t) * (sk - BigInt::one()) / BigInt::from(s - 1)
}
