//! The bounded sums: both sides of the triple and double bounded identities,
//! the boundary closed forms and the finite Jacobi and Euler identities.

use crate::poly::{BiLaurent, QPoly};
use crate::qbin::{q_bin, q_multinomial, tri};

/// `q^e · Π factors`.
fn product(e: i64, factors: &[QPoly]) -> QPoly {
    let mut out = QPoly::monomial(1, e);
    for f in factors {
        if out.is_zero() {
            break;
        }
        out = &out * f;
    }
    out
}

fn qb(top: i64, bottom: i64) -> QPoly {
    q_bin(top, bottom, 1)
}

/// The (a, b, c, ab, ac, bc) with `i = a + ab + ac`, `j = b + ab + bc`,
/// `k = c + ac + bc`, all non-negative.
pub fn constraints(i: i64, j: i64, k: i64) -> Vec<[i64; 6]> {
    let mut out = Vec::new();
    for ab in 0..=i.min(j) {
        for ac in 0..=(i - ab).min(k) {
            for bc in 0..=(j - ab).min(k - ac) {
                out.push([i - ab - ac, j - ab - bc, k - ac - bc, ab, ac, bc]);
            }
        }
    }
    out
}

/// `g_{i,j,k}(L1, L2, M)`: the constrained sum with the two bracket terms.
pub fn g_poly(i: i64, j: i64, k: i64, l1: i64, l2: i64, m: i64) -> QPoly {
    constraints(i, j, k)
        .into_iter()
        .map(|[a, b, c, ab, ac, bc]| {
            let t = a + b + c + ab + ac + bc;
            let e = tri(t) + tri(ab) + tri(ac) + tri(bc - 1);
            let common = product(e, &[qb(l2 - t + b, b), qb(l2 - t, ab), qb(m - t + c, c), qb(m - t, ac)]);
            if common.is_zero() {
                return common;
            }
            let first = product(bc, &[qb(l1 - t + a, a), qb(m - t, bc)]);
            let second = product(0, &[qb(l1 - t + a - 1, a - 1), qb(m - t, bc - 1)]);
            &common * &(&first + &second)
        })
        .sum()
}

/// `p_{i,j,k}(L1, L2, M)`: the single sum over `s`.
pub fn p_poly(i: i64, j: i64, k: i64, l1: i64, l2: i64, m: i64) -> QPoly {
    (0..=i.min(j).min(k))
        .map(|s| {
            let e = s * (m + 2) - tri(s) + tri(i - s) + tri(j - s) + tri(k - s);
            product(
                e,
                &[qb(l1 - s, i - s), qb(l2 - i, j - s), qb(l2 - i - j + s, s), qb(m - i - j, k - s)],
            )
        })
        .sum()
}

/// The right side of the double bounded identity, with the q-multinomial
/// `[L - s; s, i - s, j - s]`.
pub fn rhs_double(i: i64, j: i64, k: i64, l: i64, m: i64) -> QPoly {
    (0..=i.min(j).min(k))
        .map(|s| {
            let e = s * (m + 2) - tri(s) + tri(i - s) + tri(j - s) + tri(k - s);
            product(e, &[q_multinomial(l - s, &[s, i - s, j - s], 1), qb(m - i - j, k - s)])
        })
        .sum()
}

/// `q^{T_i + T_j + T_k} [L-k, i] [L-i, j] [L-j, k]`.
pub fn rhs_single(i: i64, j: i64, k: i64, l: i64) -> QPoly {
    if i < 0 || j < 0 || k < 0 {
        return QPoly::zero();
    }
    product(tri(i) + tri(j) + tri(k), &[qb(l - k, i), qb(l - i, j), qb(l - j, k)])
}

/// `δ_{i,0} δ_{j,0} q^{T_k} [Δ, k]` with `Δ = M - i - j`: the value of the
/// single sum on the boundary `L1 = L2 = i + j - 1`.
pub fn boundary_closed_form(i: i64, j: i64, k: i64, m: i64) -> QPoly {
    if i != 0 || j != 0 {
        return QPoly::zero();
    }
    product(tri(k), &[qb(m, k)])
}

/// The closed form of `g_{i,j,k}(i-1, L2, M)`:
/// `q^{i(M+2) - T_i + T_{j-i} + T_{k-i}} [L2-i, j-i] [L2-j, i] [M-i-j, k-i]`.
pub fn eq52_closed_form(i: i64, j: i64, k: i64, l2: i64, m: i64) -> QPoly {
    if i < 0 || j < 0 || k < 0 {
        return QPoly::zero();
    }
    let e = i * (m + 2) - tri(i) + tri(j - i) + tri(k - i);
    product(e, &[qb(l2 - i, j - i), qb(l2 - j, i), qb(m - i - j, k - i)])
}

/// Both sides of the finite Jacobi identity, Laurent in the ground symbol
/// `a`.
pub fn jacobi_sides(l: i64) -> (BiLaurent, BiLaurent) {
    (jacobi_left(l), jacobi_right(l))
}

/// `Σ_{l=0}^{L} a^{-l} q^{T_l} Σ_{m=0}^{2l} (-a)^m`, the expansion of
/// `a^{-l} (1 + a^{2l+1})/(1 + a) q^{T_l}` without division.
pub fn jacobi_left(l: i64) -> BiLaurent {
    assert!(l >= 0, "L must be non-negative");
    let mut left = BiLaurent::zero();
    for r in 0..=l {
        for m in 0..=2 * r {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            left = &left + &BiLaurent::monomial(sign, tri(r), m - r);
        }
    }
    left
}

fn jacobi_right(l: i64) -> BiLaurent {
    assert!(l >= 0, "L must be non-negative");
    let mut right = BiLaurent::zero();
    for i in 0..=l {
        for j in 0..=l {
            for k in 0..=l {
                let p = product(tri(i) + tri(j) + tri(k), &[qb(l - k, i), qb(l - i, j), qb(l - j, k)]);
                if p.is_zero() {
                    continue;
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                right = &right + &(&BiLaurent::monomial(sign, 0, i - j) * &BiLaurent::from(&p));
            }
        }
    }
    right
}

/// Both sides of the finite Euler identity (q-binomials in base `q^2`).
pub fn euler_sides(l: i64) -> (QPoly, QPoly) {
    assert!(l >= 0, "L must be non-negative");
    (euler_left(l), euler_right(l))
}

/// `Σ_{l=0}^{L} q^{2(T_L - T_l)}`.
pub fn euler_left(l: i64) -> QPoly {
    (0..=l).map(|r| QPoly::monomial(1, 2 * (tri(l) - tri(r)))).sum()
}

fn euler_right(l: i64) -> QPoly {
    let mut out = QPoly::zero();
    for i in 0..=l {
        for j in 0..=l {
            for k in 0..=l {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let e = 2 * (tri(i) + tri(j) + tri(k)) - i - j;
                let p = product(e, &[q_bin(l - k, i, 2), q_bin(l - i, j, 2), q_bin(l - j, k, 2)]);
                out = &out + &(&QPoly::monomial(sign, 0) * &p);
            }
        }
    }
    out
}
