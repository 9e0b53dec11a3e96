//! Memoized integer cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arith::divisors;

/// Cache of cyclotomic polynomials `Φ_k`, coefficients listed from degree 0.
///
/// Lookups take a read lock; a miss computes `Φ_k` without holding any lock
/// and then inserts it. Two threads racing on the same `k` both compute it and
/// the second insert is a no-op.
#[derive(Debug, Default)]
pub struct CycloPolyTable {
    cache: RwLock<HashMap<u64, Arc<Vec<BigInt>>>>,
}

impl CycloPolyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table.
    pub fn global() -> &'static CycloPolyTable {
        static TABLE: OnceLock<CycloPolyTable> = OnceLock::new();
        TABLE.get_or_init(CycloPolyTable::new)
    }

    pub fn get(&self, k: u64) -> Arc<Vec<BigInt>> {
        assert!(k >= 1, "cyclotomic polynomials are indexed from 1");
        if let Some(p) = self.cache.read().expect("poisoned table").get(&k) {
            return Arc::clone(p);
        }
        let computed = Arc::new(self.compute(k));
        let mut guard = self.cache.write().expect("poisoned table");
        Arc::clone(guard.entry(k).or_insert(computed))
    }

    pub fn len(&self) -> usize {
        self.cache.read().expect("poisoned table").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(x^k - 1) / Π_{d | k, d < k} Φ_d`, by exact long division.
    fn compute(&self, k: u64) -> Vec<BigInt> {
        let mut quotient = vec![BigInt::zero(); k as usize + 1];
        quotient[0] = -BigInt::one();
        quotient[k as usize] = BigInt::one();
        for d in divisors(k) {
            if d == k {
                continue;
            }
            let divisor = self.get(d);
            quotient = divide_monic_exact(&quotient, &divisor);
        }
        quotient
    }
}

/// Exact division by a monic integer polynomial; panics on a nonzero remainder.
fn divide_monic_exact(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let n = dividend.len() - 1;
    let m = divisor.len() - 1;
    let mut rem = dividend.to_vec();
    let mut q = vec![BigInt::zero(); n - m + 1];
    for i in (m..=n).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in divisor.iter().enumerate() {
            rem[i - m + j] -= &c * dj;
        }
        q[i - m] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// `Φ_k` from the global table.
pub fn cyclotomic_poly(k: u64) -> Arc<Vec<BigInt>> {
    CycloPolyTable::global().get(k)
}
