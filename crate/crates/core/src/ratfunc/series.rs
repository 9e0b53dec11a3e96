use serde::{Deserialize, Serialize};

use super::{Poly, RationalFunction};
use crate::exactnum::CycloNum;

/// Coefficients `a_{n_min}, ..., a_{n_min + len - 1}` of a Laurent expansion at 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPrefix {
    pub n_min: i64,
    pub coeffs: Vec<CycloNum>,
}

impl LaurentPrefix {
    /// Index of the last stored coefficient (`n_min - 1` when empty).
    pub fn last_index(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    /// The coefficient at `n`, or `None` outside the stored window.
    pub fn get(&self, n: i64) -> Option<&CycloNum> {
        if n < self.n_min {
            return None;
        }
        self.coeffs.get((n - self.n_min) as usize)
    }

    pub fn conductor(&self) -> u64 {
        self.coeffs.first().map_or(1, CycloNum::conductor)
    }
}

/// First `len` Taylor coefficients of `num / den` with `den(0) = 1`, from the
/// recurrence `c_j = p_j - Σ_{i=1..d} q_i c_{j-i}`.
pub(crate) fn taylor_coeffs(num: &Poly, den: &Poly, len: usize) -> Vec<CycloNum> {
    let (num, den) = Poly::unify(num, den);
    let m = num.conductor();
    debug_assert!(
        den.coeff(0).is_one(),
        "denominator must have constant term 1"
    );
    let q = den.coeffs();
    let d = q.len().saturating_sub(1);
    let mut out: Vec<CycloNum> = Vec::with_capacity(len);
    for j in 0..len {
        let upper = j.min(d);
        let tail = CycloNum::dot(m, (1..=upper).map(|i| (&q[i], &out[j - i])));
        let pj = num.coeff(j);
        out.push(&pj - &tail);
    }
    out
}

/// Exact Laurent coefficients of `r` at 0 up to index `n_max`.
///
/// The window starts at `min(0, x_shift)`; entries below the order of
/// vanishing are zero.
pub fn expand_series(r: &RationalFunction, n_max: i64) -> LaurentPrefix {
    let k = r.x_shift();
    let n_min = k.min(0);
    if n_max < n_min {
        return LaurentPrefix {
            n_min,
            coeffs: Vec::new(),
        };
    }
    let m = r.conductor();
    let inner_len = (n_max - k + 1).max(0) as usize;
    let inner = taylor_coeffs(r.num(), r.den(), inner_len);
    let lead_zeros = (k - n_min) as usize;
    let mut coeffs = vec![CycloNum::zero(m); lead_zeros];
    coeffs.extend(inner);
    coeffs.truncate((n_max - n_min + 1) as usize);
    LaurentPrefix { n_min, coeffs }
}
