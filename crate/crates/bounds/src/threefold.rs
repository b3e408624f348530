use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::BoundsError;

/// `K^3` and `chi(O_X)` of a threefold of general type with nef canonical
/// divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThreefoldInvariants {
    pub k3: i64,
    pub chi: i64,
}

impl ThreefoldInvariants {
    pub fn new(k3: i64, chi: i64) -> Result<Self, BoundsError> {
        if k3 <= 0 {
            return Err(BoundsError::Invalid(format!("K3 > 0 (got K3={k3})")));
        }
        if k3 % 2 != 0 {
            return Err(BoundsError::Invalid(format!("K3 even (got K3={k3})")));
        }
        if 6 * chi > k3 {
            return Err(BoundsError::Invalid(format!("chi <= K3/6 (got chi={chi}, K3={k3})")));
        }
        if -2 * chi > 5 * k3 + 2 {
            return Err(BoundsError::Invalid(format!("-chi <= 5/2 K3 + 1 (got chi={chi}, K3={k3})")));
        }
        Ok(ThreefoldInvariants { k3, chi })
    }

    /// Least admissible `chi` for this `K^3`.
    pub fn chi_min(k3: i64) -> i64 {
        -(5 * k3 / 2) - 1
    }

    /// Largest admissible `chi` for this `K^3`.
    pub fn chi_max(k3: i64) -> i64 {
        Integer::div_floor(&k3, &6)
    }
}

/// `p_n = (2n-1) n (n-1) K^3 / 12 + (1 - 2n) chi` for `n >= 2`.
///
/// Rejects `n < 2`. A non-integral value or `p_n < 5` at `n >= 3` means the
/// inputs are not the invariants of such a threefold.
pub fn plurigenus(inv: &ThreefoldInvariants, n: u64) -> Result<BigInt, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Precondition(format!("plurigenus formula needs n >= 2, got {n}")));
    }
    let n = BigInt::from(n);
    let num: BigInt = (BigInt::from(2) * &n - 1) * &n * (&n - 1) * inv.k3;
    let (q, r) = num.div_rem(&BigInt::from(12));
    if r != BigInt::from(0) {
        return Err(BoundsError::Invalid(format!("p_{n} is not an integer for K3={}", inv.k3)));
    }
    let p = q + (BigInt::from(1) - BigInt::from(2) * &n) * inv.chi;
    if n >= BigInt::from(3) && p < BigInt::from(5) {
        return Err(BoundsError::Invalid(format!("p_{n} >= 5 for n >= 3 (got {p})")));
    }
    Ok(p)
}
