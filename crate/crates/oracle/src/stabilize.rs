//! Limit stabilization of the triple bounded sum towards the unbounded key
//! identity.

use num_bigint::BigInt;

use crate::poly::QPoly;
use crate::qbin::tri;
use crate::sums::g_poly;

/// Coefficients of `q^0 … q^n` of `q^{T_i+T_j+T_k} / ((q)_i (q)_j (q)_k)`,
/// each `1/(1 - q^l)` expanded as a truncated geometric series.
pub fn key_identity_truncation(i: i64, j: i64, k: i64, n: usize) -> Vec<BigInt> {
    let cut = |p: &QPoly| QPoly::from_coeffs(0, p.truncation(n));
    let mut acc = cut(&QPoly::monomial(1, tri(i) + tri(j) + tri(k)));
    for m in [i, j, k] {
        for l in 1..=m as usize {
            let geometric = QPoly::from_coeffs(0, (0..=n).map(|e| BigInt::from((e % l == 0) as u8)).collect());
            acc = cut(&(&acc * &geometric));
        }
    }
    acc.truncation(n)
}

/// Whether the coefficients of `q^0 … q^n` of `g_{i,j,k}(L, L, L)` agree for
/// `L = n + i + j + k + 2` and `L + 1`, and equal the truncated right side
/// of the key identity.
pub fn stabilization_check(i: i64, j: i64, k: i64, n: usize) -> bool {
    if i < 0 || j < 0 || k < 0 {
        return false;
    }
    let l = n as i64 + i + j + k + 2;
    let a = g_poly(i, j, k, l, l, l).truncation(n);
    let b = g_poly(i, j, k, l + 1, l + 1, l + 1).truncation(n);
    a == b && a == key_identity_truncation(i, j, k, n)
}
