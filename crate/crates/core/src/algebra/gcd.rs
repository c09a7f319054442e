//! Multivariate gcd by recursive primitive polynomial remainder sequences.
//!
//! A polynomial is viewed as univariate in its highest-index variable with
//! coefficients in the ring of the remaining ones; contents are taken
//! recursively.

use num_traits::One;

use super::monomial::MAX_VARS;
use super::poly::MultiPoly;
use super::rational::rational_content;

/// Normalized gcd: coprime integer coefficients, positive leading coefficient.
/// `gcd(p, 0)` is `p` normalized; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_part().1;
    }
    if b.is_zero() {
        return a.primitive_part().1;
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma).expect("content divides");
    let b1 = b.div_monomial(&mb).expect("content divides");
    let g = gcd_no_monomial(&a1, &b1);
    g.mul_monomial(&mono)
}

/// Least common multiple, normalized like [`poly_gcd`].
pub fn poly_lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = poly_gcd(a, b);
    let prod = a * &b.div_exact(&g).expect("gcd divides");
    prod.primitive_part().1
}

/// True when `a` and `b` have no common non-constant factor. Uses cheap
/// sufficient tests before falling back to the full gcd.
pub fn coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    if a.is_zero() {
        return b.is_constant() && !b.is_zero();
    }
    if b.is_zero() {
        return a.is_constant() && !a.is_zero();
    }
    if a.is_constant() || b.is_constant() {
        return true;
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    if !ma.gcd(&mb).is_one() {
        return false;
    }
    let a1 = a.div_monomial(&ma).unwrap();
    let b1 = b.div_monomial(&mb).unwrap();
    obviously_coprime(&a1, &b1) || gcd_no_monomial(&a1, &b1).is_constant()
}

/// Cheap sufficient test for coprimality of two polynomials without monomial
/// content: a constant operand, disjoint variable sets, or two binomials
/// whose exponent directions differ. `false` means "unknown".
pub fn obviously_coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    if a.is_constant() || b.is_constant() {
        return true;
    }
    if a.vars_mask() & b.vars_mask() == 0 {
        return true;
    }
    matches!(
        (binomial_direction(a), binomial_direction(b)),
        (Some(da), Some(db)) if da != db
    )
}

/// For a two-term polynomial `c1 m1 + c2 m2` with coprime monomials, the
/// primitive exponent direction of `m1 / m2` up to sign.
fn binomial_direction(p: &MultiPoly) -> Option<[i32; MAX_VARS]> {
    if p.len() != 2 {
        return None;
    }
    let (m1, _) = &p.terms()[0];
    let (m2, _) = &p.terms()[1];
    let mut d = [0i32; MAX_VARS];
    let mut g = 0i32;
    for (i, di) in d.iter_mut().enumerate() {
        *di = m1.exp(i) as i32 - m2.exp(i) as i32;
        g = num_integer::gcd(g, *di);
    }
    if g == 0 {
        return None;
    }
    let first = d.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let sign = if first < 0 { -1 } else { 1 };
    for x in d.iter_mut() {
        *x = *x / g * sign;
    }
    Some(d)
}

fn highest_var(mask: u32) -> Option<usize> {
    if mask == 0 {
        None
    } else {
        Some(31 - mask.leading_zeros() as usize)
    }
}

/// gcd of two nonzero polynomials without monomial content.
fn gcd_no_monomial(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let (_, a) = a.primitive_part();
    let (_, b) = b.primitive_part();
    if a == b {
        return a;
    }
    if obviously_coprime(&a, &b) {
        return MultiPoly::one();
    }
    let mask_a = a.vars_mask();
    let mask_b = b.vars_mask();
    // Cheap divisibility probe.
    if a.len() <= b.len() {
        if b.div_exact(&a).is_some() {
            return a;
        }
    } else if a.div_exact(&b).is_some() {
        return b;
    }
    let v = highest_var(mask_a | mask_b).unwrap();
    let in_a = mask_a & (1 << v) != 0;
    let in_b = mask_b & (1 << v) != 0;
    if !in_a {
        return gcd_no_monomial(&a, &content_in(&b, v));
    }
    if !in_b {
        return gcd_no_monomial(&content_in(&a, v), &b);
    }
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let cont_a = content_of(&ca);
    let cont_b = content_of(&cb);
    let cont = poly_gcd(&cont_a, &cont_b);
    let pa = divide_all(&ca, &cont_a);
    let pb = divide_all(&cb, &cont_b);
    let g = univariate_prs(pa, pb);
    let g = MultiPoly::from_coeffs_in(v, &g);
    (&cont * &g).primitive_part().1
}

fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    content_of(&p.coeffs_in(v))
}

fn content_of(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut nonzero: Vec<&MultiPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| (c.len(), c.total_degree()));
    let mut g = MultiPoly::zero();
    for c in nonzero {
        g = poly_gcd(&g, c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    if g.is_zero() {
        MultiPoly::one()
    } else {
        g
    }
}

fn divide_all(coeffs: &[MultiPoly], d: &MultiPoly) -> Vec<MultiPoly> {
    if d.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides coefficient"))
        .collect()
}

fn trim(p: &mut Vec<MultiPoly>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn is_zero_uni(p: &[MultiPoly]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Pseudo-remainder of `a` by `b` (both univariate, coefficients in the
/// remaining variables).
fn pseudo_rem(mut a: Vec<MultiPoly>, b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    trim(&mut a);
    while !is_zero_uni(&a) && a.len() > db {
        let da = a.len() - 1;
        let lca = a[da].clone();
        let shift = da - db;
        for c in a.iter_mut() {
            if !c.is_zero() {
                *c = &*c * lcb;
            }
        }
        for (i, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                let t = &lca * bc;
                a[i + shift] = &a[i + shift] - &t;
            }
        }
        debug_assert!(a[da].is_zero());
        a.pop();
        trim(&mut a);
    }
    a
}

/// Primitive PRS on primitive univariate inputs; returns a primitive gcd.
fn univariate_prs(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if b.len() == 1 {
            // b is a nonzero element of the coefficient ring and primitive, hence a unit.
            return vec![MultiPoly::one()];
        }
        let r = pseudo_rem(a, &b);
        if is_zero_uni(&r) {
            return b;
        }
        let cont = content_of(&r);
        let mut r = divide_all(&r, &cont);
        // `content_of` ignores constants; without removing the rational
        // content as well the coefficients double in size at every step.
        let c = rational_content(r.iter().flat_map(|p| p.terms().iter().map(|t| &t.1)));
        if !c.is_one() {
            let inv = c.recip();
            r = r.iter().map(|p| p.scale(&inv)).collect();
        }
        trim(&mut r);
        a = b;
        b = r;
    }
}

/// gcd of all the given polynomials.
pub fn gcd_many<'a>(items: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut v: Vec<&MultiPoly> = items.into_iter().filter(|p| !p.is_zero()).collect();
    v.sort_by_key(|p| (p.len(), p.total_degree()));
    let mut g = MultiPoly::zero();
    for p in v {
        g = poly_gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}
