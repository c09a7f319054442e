use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of polynomial variables in one ring.
pub const MAX_VARS: usize = 16;

/// A power product `x_0^e_0 * ... * x_{n-1}^e_{n-1}` with non-negative exponents.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the earliest variable decides.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        deg: 0,
        exps: [0; MAX_VARS],
    };

    pub fn var(v: usize, e: u32) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[v] = to_u16(e);
        m.deg = e;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = to_u16(e);
            m.deg += e;
        }
        m
    }

    #[inline]
    pub fn exp(&self, v: usize) -> u32 {
        self.exps[v] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn with_exp(&self, v: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[v] as u32 + e;
        m.exps[v] = to_u16(e);
        m
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u32 + other.exps[i] as u32;
            m.exps[i] = to_u16(e);
        }
        m.deg = self.deg + other.deg;
        m
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            if self.exps[i] < other.exps[i] {
                return None;
            }
            m.exps[i] = self.exps[i] - other.exps[i];
        }
        m.deg = self.deg - other.deg;
        Some(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    /// Variables with a positive exponent, as a bit mask.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for i in 0..MAX_VARS {
            if self.exps[i] != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Splits into the part over variables in `mask` and the rest.
    pub fn split(&self, mask: u32) -> (Monomial, Monomial) {
        let mut inside = Monomial::ONE;
        let mut outside = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = self.exps[i];
            if mask & (1 << i) != 0 {
                inside.exps[i] = e;
                inside.deg += e as u32;
            } else {
                outside.exps[i] = e;
                outside.deg += e as u32;
            }
        }
        (inside, outside)
    }
}

#[inline]
fn to_u16(e: u32) -> u16 {
    u16::try_from(e).expect("exponent overflow")
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self
            .exps
            .iter()
            .rposition(|&e| e != 0)
            .map_or(0, |p| p + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

/// A power product with signed exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LaurentMono(pub [i32; MAX_VARS]);

impl Default for LaurentMono {
    fn default() -> Self {
        LaurentMono([0; MAX_VARS])
    }
}

impl LaurentMono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize, e: i32) -> Self {
        let mut m = Self::default();
        m.0[v] = e;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &LaurentMono) -> LaurentMono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.0[i] += other.0[i];
        }
        m
    }

    pub fn inv(&self) -> LaurentMono {
        let mut m = *self;
        for e in m.0.iter_mut() {
            *e = -*e;
        }
        m
    }

    pub fn pow(&self, k: i32) -> LaurentMono {
        let mut m = *self;
        for e in m.0.iter_mut() {
            *e *= k;
        }
        m
    }

    /// Positive and negative parts as ordinary monomials: `self = pos / neg`.
    pub fn split_signs(&self) -> (Monomial, Monomial) {
        let mut pos = [0u32; MAX_VARS];
        let mut neg = [0u32; MAX_VARS];
        for i in 0..MAX_VARS {
            let e = self.0[i];
            if e > 0 {
                pos[i] = e as u32;
            } else {
                neg[i] = (-e) as u32;
            }
        }
        (Monomial::from_exps(&pos), Monomial::from_exps(&neg))
    }

    pub fn from_mono(m: &Monomial) -> LaurentMono {
        let mut l = LaurentMono::default();
        for i in 0..MAX_VARS {
            l.0[i] = m.exp(i) as i32;
        }
        l
    }
}
