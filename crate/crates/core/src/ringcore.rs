//! Scalar layer: residues modulo `p^mu`, valuations, units, the quadratic
//! character of `-1`, Eisenstein ring parameters and the coefficient map
//! `Psi` that flattens a ring element into a hi part over `Z_{p^e}` and a lo
//! part over `Z_{p^(e-1)}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trial-division primality test, adequate for the small primes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some((p, a))` when `q = p^a` with `p` prime and `a >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut a) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    (rest == 1).then_some((p, a))
}

/// The ring `Z_{p^mu}`; `p` plays the role of the uniformizer `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Modulus {
    pub p: u64,
    pub mu: u32,
}

impl Modulus {
    /// Validates `p` prime, `mu >= 1` and `p^mu` representable in `u64`.
    pub fn new(p: u64, mu: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if mu == 0 {
            return Err(Error::InvalidParams("mu must be at least 1".into()));
        }
        if p.checked_pow(mu).is_none() {
            return Err(Error::InvalidParams(format!("{p}^{mu} overflows u64")));
        }
        Ok(Self { p, mu })
    }

    /// The integer `p^mu`.
    pub fn value(&self) -> u64 {
        self.p.pow(self.mu)
    }

    /// `p^v` for `v <= mu`.
    pub fn p_pow(&self, v: u32) -> u64 {
        self.p.pow(v)
    }

    /// Same prime with exponent `mu - 1`; requires `mu >= 2`.
    pub fn lower(&self) -> Self {
        Self { p: self.p, mu: self.mu - 1 }
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.value()
    }

    /// Reduces a signed integer into `0..p^mu`.
    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.value() as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.value() as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let m = self.value();
        (a % m + m - b % m) % m
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.value() as u128) as u64
    }

    /// Largest `v <= mu` with `p^v | x`.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = self.reduce(x);
        if x == 0 {
            return self.mu;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u64) -> bool {
        !self.reduce(x).is_multiple_of(self.p)
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, x: u64) -> Result<u64> {
        let m = self.value() as i128;
        let (mut r0, mut r1) = (m, self.reduce(x) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return Err(Error::NonUnit(x));
        }
        Ok(s0.rem_euclid(m) as u64)
    }

    /// Writes `x = p^v * u` with `u` a unit and returns `(v, u)`; zero gives
    /// `(mu, 0)`.
    pub fn split(&self, x: u64) -> (u32, u64) {
        let v = self.valuation(x);
        if v == self.mu {
            (v, 0)
        } else {
            (v, self.reduce(x) / self.p_pow(v))
        }
    }
}

/// Free-function form of [`Modulus::valuation`].
pub fn valuation(x: u64, m: Modulus) -> u32 {
    m.valuation(x)
}

/// Units of `Z_{p^mu}` in ascending order.
pub fn units(m: Modulus) -> Vec<u64> {
    (1..m.value()).filter(|&x| x % m.p != 0).collect()
}

/// Whether `(-1)^m_exp` is a square in the field with `q` elements.
pub fn neg_one_power_is_square(m_exp: u64, q: u64) -> Result<bool> {
    match prime_power(q) {
        Some((2, _)) => Err(Error::EvenFieldOrder(q)),
        Some(_) => Ok(m_exp.is_multiple_of(2) || q % 4 == 1),
        None => Err(Error::InvalidParams(format!("{q} is not a prime power"))),
    }
}

/// Parameters of `R_e = GR(p^e, r)[y] / <g(y), p^(e-1) y^t>` with `g` of
/// degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinParams {
    pub p: u64,
    pub e: u32,
    pub r: usize,
    pub k: usize,
    pub t: usize,
    /// Coefficients of `g(y) = y^k + p (g_{k-1} y^{k-1} + ... + g_0)`;
    /// recorded for provenance only.
    pub g_coeffs: Option<Vec<u64>>,
}

impl EisensteinParams {
    pub fn new(p: u64, e: u32, r: usize, k: usize, t: usize, g_coeffs: Option<Vec<u64>>) -> Result<Self> {
        Modulus::new(p, e)?;
        if r == 0 || k == 0 {
            return Err(Error::InvalidParams("r and k must be at least 1".into()));
        }
        if t == 0 || t > k {
            return Err(Error::InvalidParams(format!("t = {t} outside 1..={k}")));
        }
        if e == 1 && t != k {
            return Err(Error::InvalidParams("t must equal k when e = 1".into()));
        }
        if let Some(g) = &g_coeffs {
            if g.len() != k {
                return Err(Error::LengthMismatch { expected: k, got: g.len() });
            }
            if g[0] % p == 0 {
                return Err(Error::NonUnit(g[0]));
            }
        }
        Ok(Self { p, e, r, k, t, g_coeffs })
    }

    /// The family `Z_{p^2}[y] / <y^2 - p, p y>`, written `R_p` in the tables.
    pub fn rp(p: u64) -> Result<Self> {
        Self::new(p, 2, 1, 2, 1, Some(vec![p * p - 1, 0]))
    }

    /// Modulus of the hi coefficients.
    pub fn hi_modulus(&self) -> Modulus {
        Modulus { p: self.p, mu: self.e }
    }

    /// Modulus of the lo coefficients, `p^(e-1)`; `e >= 2` is assumed.
    pub fn lo_modulus(&self) -> Modulus {
        Modulus { p: self.p, mu: self.e - 1 }
    }

    /// Number of hi coordinates per ring element, `r t`.
    pub fn hi_len(&self) -> usize {
        self.r * self.t
    }

    /// Number of lo coordinates per ring element, `r (k - t)`.
    pub fn lo_len(&self) -> usize {
        self.r * (self.k - self.t)
    }

    /// Order of the ring, `p^(e r t + (e-1) r (k-t))`.
    pub fn ring_order(&self) -> u128 {
        let exp = self.e as usize * self.hi_len() + (self.e as usize - 1) * self.lo_len();
        (self.p as u128).pow(exp as u32)
    }

    /// True for the `R_p` family `(p, 2, 1, 2, 1)`.
    pub fn is_rp_family(&self) -> bool {
        self.e == 2 && self.r == 1 && self.k == 2 && self.t == 1
    }
}

/// An element `a_0 + a_1 y + ... + a_{k-1} y^{k-1}` of `R_e`, stored through
/// its coordinates `a_{i,s}` over the Galois ring basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdditiveElement {
    pub params: EisensteinParams,
    /// `a_{i,s}` for `i < t`, reduced mod `p^e`.
    pub hi: Vec<u64>,
    /// `a_{j,s}` for `t <= j < k`, reduced mod `p^(e-1)`.
    pub lo: Vec<u64>,
}

impl AdditiveElement {
    /// Builds an element from `r k` coefficients laid out as hi then lo.
    pub fn from_coeffs(params: &EisensteinParams, coeffs: &[i64]) -> Result<Self> {
        let (h, l) = (params.hi_len(), params.lo_len());
        if coeffs.len() != h + l {
            return Err(Error::LengthMismatch { expected: h + l, got: coeffs.len() });
        }
        let hm = params.hi_modulus();
        let lm = params.lo_modulus();
        Ok(Self {
            params: params.clone(),
            hi: coeffs[..h].iter().map(|&x| hm.reduce_i64(x)).collect(),
            lo: coeffs[h..].iter().map(|&x| lm.reduce_i64(x)).collect(),
        })
    }

    pub fn zero(params: &EisensteinParams) -> Self {
        Self { params: params.clone(), hi: vec![0; params.hi_len()], lo: vec![0; params.lo_len()] }
    }

    pub fn is_zero(&self) -> bool {
        self.hi.iter().chain(&self.lo).all(|&x| x == 0)
    }

    /// Componentwise sum in the additive group of `R_e`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::ShapeMismatch("elements of different rings".into()));
        }
        let hm = self.params.hi_modulus();
        let lm = self.params.lo_modulus();
        Ok(Self {
            params: self.params.clone(),
            hi: self.hi.iter().zip(&other.hi).map(|(&a, &b)| hm.add(a, b)).collect(),
            lo: self.lo.iter().zip(&other.lo).map(|(&a, &b)| lm.add(a, b)).collect(),
        })
    }

    /// Every element of `R_e`, in lexicographic coordinate order.
    pub fn all(params: &EisensteinParams) -> Vec<Self> {
        let hm = params.hi_modulus().value();
        let lm = params.lo_modulus().value();
        let radices: Vec<u64> = std::iter::repeat_n(hm, params.hi_len()).chain(std::iter::repeat_n(lm, params.lo_len())).collect();
        let mut out = Vec::new();
        let mut digits = vec![0u64; radices.len()];
        loop {
            let (h, l) = digits.split_at(params.hi_len());
            out.push(Self { params: params.clone(), hi: h.to_vec(), lo: l.to_vec() });
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < radices[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

/// `Psi` on one element: the hi coordinates over `Z_{p^e}` and the lo
/// coordinates over `Z_{p^(e-1)}`.
pub fn psi_pack(a: &AdditiveElement) -> (Vec<u64>, Vec<u64>) {
    (a.hi.clone(), a.lo.clone())
}

/// Inverse of [`psi_pack`].
pub fn psi_unpack(hi: &[u64], lo: &[u64], params: &EisensteinParams) -> Result<AdditiveElement> {
    if hi.len() != params.hi_len() {
        return Err(Error::LengthMismatch { expected: params.hi_len(), got: hi.len() });
    }
    if lo.len() != params.lo_len() {
        return Err(Error::LengthMismatch { expected: params.lo_len(), got: lo.len() });
    }
    let hm = params.hi_modulus();
    let lm = params.lo_modulus();
    Ok(AdditiveElement {
        params: params.clone(),
        hi: hi.iter().map(|&x| hm.reduce(x)).collect(),
        lo: lo.iter().map(|&x| lm.reduce(x)).collect(),
    })
}
