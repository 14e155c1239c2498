//! Closed-form enumeration of self-orthogonal, self-dual and LCD codes.
//!
//! Exponents may be half-integers term by term, so they are accumulated
//! doubled and halved at the end. Counters return exact [`BigUint`]s and
//! fail with [`Error::NonIntegral`] when a negative exponent does not divide.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixedcode::CodeType;
use crate::ringcore::{is_prime, neg_one_power_is_square, prime_power, EisensteinParams};

/// A pair `(k; l)` of an `e`-tuple and an `(e-1)`-tuple.
pub type TypeTuplePair = CodeType;

/// Which form of the lift exponent `Theta_mu` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaVariant {
    /// `- k_(mu-1) l_(mu-2)`, as printed.
    Printed,
    /// `+ k_(mu-1) l_(mu-2)`.
    SignCorrected,
    /// The printed exponent plus `(l_(mu-2) - k_0)(N_1 - m_(mu-2)(k) - k_0)`:
    /// the top-level hi entries of the `l_(mu-2)` rows are free, and the
    /// `k_0` rows have that many fewer.
    Amended,
}

impl ThetaVariant {
    pub fn name(self) -> &'static str {
        match self {
            ThetaVariant::Printed => "printed",
            ThetaVariant::SignCorrected => "sign_corrected",
            ThetaVariant::Amended => "amended",
        }
    }

    pub const ALL: [ThetaVariant; 3] = [ThetaVariant::Printed, ThetaVariant::SignCorrected, ThetaVariant::Amended];
}

impl std::str::FromStr for ThetaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(ThetaVariant::Printed),
            "sign_corrected" | "sign-corrected" => Ok(ThetaVariant::SignCorrected),
            "amended" => Ok(ThetaVariant::Amended),
            other => Err(Error::Parse(format!("unknown theta variant {other}"))),
        }
    }
}

/// The variant the counters use, fixed by the census audit. The printed
/// exponent is fractional on `{0,0,0,1;0,0,1}` over `Z81Z27 (2,2)`; the
/// sign-corrected one gives the 48 lifts there but misses other types.
pub const SELECTED_THETA: ThetaVariant = ThetaVariant::Amended;

/// `q^n` as a big integer.
pub fn big_pow(q: u64, n: u32) -> BigUint {
    BigUint::from(q).pow(n)
}

/// `coef * q^exp`, failing when `exp < 0` and the quotient is not integral.
pub fn scale_by_power(coef: BigUint, q: u64, exp: i64) -> Result<BigUint> {
    if exp >= 0 {
        return Ok(coef * big_pow(q, exp as u32));
    }
    let den = big_pow(q, (-exp) as u32);
    if (&coef % &den).is_zero() {
        Ok(coef / den)
    } else {
        Err(Error::NonIntegral { numerator: coef.to_string(), denominator: den.to_string() })
    }
}

/// Number of `s`-dimensional subspaces of `F_q^n`; zero when `s > n` or `n < 0`.
pub fn gauss_binom(n: i64, s: i64, q: u64) -> BigUint {
    if s < 0 || n < 0 || s > n {
        return BigUint::zero();
    }
    let (n, s) = (n as u32, s as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..s {
        num *= big_pow(q, n) - big_pow(q, i);
        den *= big_pow(q, s) - big_pow(q, i);
    }
    num / den
}

fn check_odd_prime_power(q: u64) -> Result<()> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenFieldOrder(q));
    }
    if prime_power(q).is_none() {
        return Err(Error::InvalidParams(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// Number of self-orthogonal `[n, s]` codes over `F_q`, `q` odd.
pub fn sigma(n: u32, s: u32, q: u64) -> Result<BigUint> {
    check_odd_prime_power(q)?;
    if s == 0 {
        return Ok(BigUint::one());
    }
    if 2 * s > n {
        return Ok(BigUint::zero());
    }
    let qb = BigInt::from(q);
    let mut den = BigInt::one();
    for j in 1..=s {
        den *= qb.pow(j) - 1;
    }
    let mut num = BigInt::one();
    if n % 2 == 1 {
        for i in 0..s {
            num *= qb.pow(n - 1 - 2 * i) - 1;
        }
    } else {
        let nu: i64 = if neg_one_power_is_square((n / 2) as u64, q)? { 1 } else { -1 };
        num = qb.pow(n - s) - nu * qb.pow(n / 2 - s) + nu * qb.pow(n / 2) - 1;
        for i in 1..s {
            num *= qb.pow(n - 2 * i) - 1;
        }
    }
    Ok((num / den).to_biguint().expect("count is non-negative"))
}

/// Whether a self-dual code of length `n` exists over `F_q`, `q` odd.
pub fn sd_exists_field(n: u32, q: u64) -> Result<bool> {
    check_odd_prime_power(q)?;
    Ok(n.is_multiple_of(2) && neg_one_power_is_square((n / 2) as u64, q)?)
}

/// `m_i(k) = k_0 + ... + k_i`, zero for negative `i`.
pub fn m_sum(k: &[u32], i: i64) -> i64 {
    if i < 0 {
        return 0;
    }
    k.iter().take(i as usize + 1).map(|&x| x as i64).sum()
}

/// Whether `k` satisfies the defining inequalities of `K_{n,s}`.
pub fn in_k_set(n: u32, k: &[u32]) -> bool {
    let s = k.len();
    (s / 2..s).all(|i| {
        let doubled: u32 = k[..s - i].iter().map(|&x| 2 * x).sum();
        let single: u32 = k[s - i..=i].iter().sum();
        doubled + single <= n
    })
}

/// Whether `k` lies in `L_{n,s}`.
pub fn in_l_set(n: u32, k: &[u32]) -> bool {
    let s = k.len();
    if !(1..s).all(|i| k[i] == k[s - i]) {
        return false;
    }
    let half: u32 = k[..=(s - 1) / 2].iter().sum();
    let delta = if s.is_multiple_of(2) { k[s / 2] } else { 0 };
    2 * half + delta == n
}

fn tuples(n: u32, s: usize, keep: impl Fn(&[u32]) -> bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; s];
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

/// The tuples of `K_{n,s}`, lexicographically.
pub fn k_set(n: u32, s: usize) -> Vec<Vec<u32>> {
    tuples(n, s, |k| in_k_set(n, k))
}

/// The tuples of `L_{n,s}`, lexicographically.
pub fn l_set(n: u32, s: usize) -> Vec<Vec<u32>> {
    tuples(n, s, |k| in_l_set(n, k))
}

/// The contraction `k^(i) = (m_i(k), k_(i+1), ..., k_(s-1-i))`.
pub fn contract(k: &[u32], i: usize) -> Vec<u32> {
    let s = k.len();
    let mut out = vec![m_sum(k, i as i64) as u32];
    if i + 1 < s - i {
        out.extend_from_slice(&k[i + 1..s - i]);
    }
    out
}

fn halve(doubled: i64) -> i64 {
    debug_assert!(doubled % 2 == 0, "exponent must be integral");
    doubled / 2
}

/// Exponent of the `e = 2` typed count.
pub fn theta2(k0: u32, k1: u32, l0: u32, n1: u32, n2: u32) -> i64 {
    let (k0, k1, l0, n1, n2) = (k0 as i64, k1 as i64, l0 as i64, n1 as i64, n2 as i64);
    halve(k0 * (2 * n1 + 2 * n2 - 3 * k0 - 2 * k1 - 2 * l0 - 1)) + l0 * (n1 - 2 * k0 - k1)
}

/// Exponent of the `e = 3` typed count.
pub fn theta3(k: &[u32], l: &[u32], n1: u32, n2: u32) -> Result<i64> {
    if k.len() != 3 || l.len() != 2 {
        return Err(Error::LengthMismatch { expected: 3, got: k.len() });
    }
    let [k0, k1, k2] = [k[0] as i64, k[1] as i64, k[2] as i64];
    let [l0, l1] = [l[0] as i64, l[1] as i64];
    let (n1, n2) = (n1 as i64, n2 as i64);
    Ok((n1 - 3 * k0 - k1 - k2) * (k0 + 2 * l0 + k1 + l1)
        + k0 * (n1 + 2 * n2 - 1)
        + k1 * (n2 - 2 * l0 - l1)
        + halve(l0 * (2 * n2 - 3 * l0 - 2 * l1 + 2 * k2 - 1)))
}

/// Exponent of the lift count from the `(mu-2)`-ladder to the `mu`-ladder.
pub fn theta_mu(mu: u32, k: &[u32], l: &[u32], n1: u32, n2: u32, variant: ThetaVariant) -> Result<i64> {
    let mu_u = mu as usize;
    if mu < 4 {
        return Err(Error::InvalidParams("theta_mu needs mu >= 4".into()));
    }
    if k.len() != mu_u {
        return Err(Error::LengthMismatch { expected: mu_u, got: k.len() });
    }
    if l.len() != mu_u - 1 {
        return Err(Error::LengthMismatch { expected: mu_u - 1, got: l.len() });
    }
    let (n1, n2) = (n1 as i64, n2 as i64);
    let mu = mu as i64;
    let (k0, k1, l0) = (k[0] as i64, k[1] as i64, l[0] as i64);
    let k_top = k[mu_u - 1] as i64;
    let l_top = l[mu_u - 2] as i64;
    let mk = m_sum(k, mu - 2);
    let ml = m_sum(l, mu - 3);
    let cross = match variant {
        ThetaVariant::Printed => -k_top * l_top,
        ThetaVariant::SignCorrected => k_top * l_top,
        ThetaVariant::Amended => -k_top * l_top + (l_top - k0) * (n1 - mk - k0),
    };
    Ok(k0 * (2 * n1 - 2 * mk - m_sum(k, 1) - 1)
        + l0 * (2 * n2 - 2 * ml - m_sum(l, 1) - k1 - 1)
        + cross
        + (mk + ml - k0 - l0) * (n1 + n2 - mk - ml)
        + 2 * k0 * (n2 - ml)
        + (k0 + 2 * l0) * (n1 - mk - k0)
        - (mk + ml) * (k_top + l_top))
}

fn check_tuple_lengths(k: &[u32], l: &[u32], e: u32) -> Result<()> {
    if k.len() != e as usize {
        return Err(Error::LengthMismatch { expected: e as usize, got: k.len() });
    }
    if l.len() + 1 != e as usize {
        return Err(Error::LengthMismatch { expected: e as usize - 1, got: l.len() });
    }
    Ok(())
}

/// `Delta_e`: the sum of the lift exponents along the contraction chain.
pub fn delta_e(k: &[u32], l: &[u32], n1: u32, n2: u32, e: u32, variant: ThetaVariant) -> Result<i64> {
    check_tuple_lengths(k, l, e)?;
    if e < 4 {
        return Err(Error::InvalidParams("delta_e needs e >= 4".into()));
    }
    let base = if e % 2 == 1 { 5 } else { 4 };
    let top = (e - base) / 2;
    let mut total = 0;
    for i in 0..=top {
        let j = (top - i) as usize;
        total += theta_mu(base + 2 * i, &contract(k, j), &contract(l, j), n1, n2, variant)?;
    }
    Ok(total)
}

/// `s_e`: the exponent of the base case the contraction chain ends in.
pub fn s_e(k: &[u32], l: &[u32], n1: u32, n2: u32, e: u32) -> Result<i64> {
    check_tuple_lengths(k, l, e)?;
    if e < 2 {
        return Err(Error::InvalidParams("s_e needs e >= 2".into()));
    }
    if e % 2 == 1 {
        let j = ((e - 3) / 2) as usize;
        theta3(&contract(k, j), &contract(l, j), n1, n2)
    } else {
        let j = ((e - 2) / 2) as usize;
        let kc = contract(k, j);
        Ok(theta2(kc[0], kc[1], m_sum(l, j as i64) as u32, n1, n2))
    }
}

/// The product of Gaussian binomials in the `e >= 4` typed count.
pub fn b_factor(k: &[u32], l: &[u32], n1: u32, n2: u32, e: u32, q: u64) -> Result<BigUint> {
    check_tuple_lengths(k, l, e)?;
    let e = e as i64;
    let (n1, n2) = (n1 as i64, n2 as i64);
    let mut out = f_factor(k, l, e as u32, q)?;
    for w in (e - 1) / 2..=e - 2 {
        out *= gauss_binom(n1 - m_sum(k, w) - m_sum(k, e - 2 - w), k[(w + 1) as usize] as i64, q);
    }
    for s in (e - 2) / 2..=e - 3 {
        out *= gauss_binom(n2 - m_sum(l, s) - m_sum(l, e - 3 - s), l[(s + 1) as usize] as i64, q);
    }
    Ok(out)
}

/// The product of Gaussian binomials in the `e >= 4` self-dual count.
pub fn f_factor(k: &[u32], l: &[u32], e: u32, q: u64) -> Result<BigUint> {
    check_tuple_lengths(k, l, e)?;
    let e = e as i64;
    let mut out = BigUint::one();
    for i in 1..=(e - 1) / 2 {
        out *= gauss_binom(m_sum(k, i), k[i as usize] as i64, q);
    }
    for j in 1..=(e - 2) / 2 {
        out *= gauss_binom(m_sum(l, j), l[j as usize] as i64, q);
    }
    Ok(out)
}

/// Parameters of a mixed count: residue field order `q`, chain length `e`
/// and block lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountSpec {
    pub q: u64,
    pub e: u32,
    pub n1: u32,
    pub n2: u32,
}

impl CountSpec {
    pub fn new(q: u64, e: u32, n1: u32, n2: u32) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::InvalidParams(format!("{q} is not a prime power")));
        }
        if e < 2 {
            return Err(Error::InvalidParams("e must be at least 2".into()));
        }
        Ok(Self { q, e, n1, n2 })
    }

    /// Number of self-orthogonal codes of type `t`, with the selected
    /// `Theta_mu` variant.
    pub fn count_so_typed(&self, t: &TypeTuplePair) -> Result<BigUint> {
        self.count_so_typed_with(t, SELECTED_THETA)
    }

    pub fn count_so_typed_with(&self, t: &TypeTuplePair, variant: ThetaVariant) -> Result<BigUint> {
        check_odd_prime_power(self.q)?;
        let (k, l) = (&t.ks[..], &t.ls[..]);
        check_tuple_lengths(k, l, self.e)?;
        let (q, n1, n2) = (self.q, self.n1, self.n2);
        if !in_k_set(n1, k) || !in_k_set(n2, l) {
            return Ok(BigUint::zero());
        }
        match self.e {
            2 => {
                let coef = sigma(n1, k[0], q)? * sigma(n2, l[0], q)? * gauss_binom(n1 as i64 - 2 * k[0] as i64, k[1] as i64, q);
                scale_by_power(coef, q, theta2(k[0], k[1], l[0], n1, n2))
            }
            3 => {
                let (k0, k1, k2) = (k[0] as i64, k[1] as i64, k[2] as i64);
                let (l0, l1) = (l[0] as i64, l[1] as i64);
                let coef = sigma(n1, k[0] + k[1], q)?
                    * sigma(n2, l[0], q)?
                    * gauss_binom(n1 as i64 - 2 * k0 - k1, k2, q)
                    * gauss_binom(n2 as i64 - 2 * l0, l1, q)
                    * gauss_binom(k0 + k1, k0, q);
                scale_by_power(coef, q, theta3(k, l, n1, n2)?)
            }
            e => {
                let mk = m_sum(k, ((e - 1) / 2) as i64) as u32;
                let ml = m_sum(l, ((e - 2) / 2) as i64) as u32;
                let coef = sigma(n1, mk, q)? * sigma(n2, ml, q)? * b_factor(k, l, n1, n2, e, q)?;
                let exp = delta_e(k, l, n1, n2, e, variant)? + s_e(k, l, n1, n2, e)?;
                scale_by_power(coef, q, exp)
            }
        }
    }

    /// Every pair of tuples over which the totals range.
    pub fn index_types(&self) -> Vec<TypeTuplePair> {
        let ks = k_set(self.n1, self.e as usize);
        let ls = k_set(self.n2, self.e as usize - 1);
        ks.iter().flat_map(|k| ls.iter().map(move |l| CodeType { ks: k.clone(), ls: l.clone() })).collect()
    }

    /// Self-orthogonal codes of every type, including the zero code.
    pub fn count_so_total(&self) -> Result<BigUint> {
        self.count_so_total_with(SELECTED_THETA)
    }

    pub fn count_so_total_with(&self, variant: ThetaVariant) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for t in self.index_types() {
            total += self.count_so_typed_with(&t, variant)?;
        }
        Ok(total)
    }

    /// Whether a self-dual code exists.
    pub fn sd_exists(&self) -> Result<bool> {
        check_odd_prime_power(self.q)?;
        let sq = |n: u32| -> Result<bool> { Ok(n.is_multiple_of(2) && neg_one_power_is_square((n / 2) as u64, self.q)?) };
        match self.e {
            2 => sq(self.n2),
            3 => sq(self.n1),
            e if e % 2 == 1 => sq(self.n1),
            _ => sq(self.n2),
        }
    }

    /// Number of self-dual codes.
    pub fn count_sd_total(&self) -> Result<BigUint> {
        if !self.sd_exists()? {
            return Ok(BigUint::zero());
        }
        let (q, n1, n2) = (self.q, self.n1, self.n2);
        let mut total = BigUint::zero();
        match self.e {
            2 => {
                let s2 = sigma(n2, n2 / 2, q)?;
                for k0 in 0..=n1 / 2 {
                    let exp = halve(k0 as i64 * (n2 as i64 + k0 as i64 - 1));
                    total += scale_by_power(sigma(n1, k0, q)? * &s2, q, exp)?;
                }
            }
            3 => {
                let s1 = sigma(n1, n1 / 2, q)?;
                let h = n1 as i64 / 2;
                for k0 in 0..=h {
                    for l0 in 0..=n2 / 2 {
                        let l0i = l0 as i64;
                        let exp = k0 * (h + n2 as i64 - 1) + halve(l0i * (n1 as i64 - 2 * k0 + l0i - 1));
                        let coef = &s1 * sigma(n2, l0, q)? * gauss_binom(h, k0, q);
                        total += scale_by_power(coef, q, exp)?;
                    }
                }
            }
            e => {
                for k in l_set(n1, e as usize) {
                    for l in l_set(n2, e as usize - 1) {
                        let mk = m_sum(&k, ((e - 1) / 2) as i64) as u32;
                        let ml = m_sum(&l, ((e - 2) / 2) as i64) as u32;
                        let coef = sigma(n1, mk, q)? * sigma(n2, ml, q)? * f_factor(&k, &l, e, q)?;
                        let exp = delta_e(&k, &l, n1, n2, e, SELECTED_THETA)? + s_e(&k, &l, n1, n2, e)?;
                        total += scale_by_power(coef, q, exp)?;
                    }
                }
            }
        }
        Ok(total)
    }

    /// Self-orthogonal codes of type `t` sharing one prescribed tower of
    /// torsion codes, for `e` in `{2, 3}`.
    pub fn count_so_prescribed_torsion(&self, t: &TypeTuplePair) -> Result<BigUint> {
        check_odd_prime_power(self.q)?;
        check_tuple_lengths(&t.ks, &t.ls, self.e)?;
        let exp = match self.e {
            2 => theta2(t.ks[0], t.ks[1], t.ls[0], self.n1, self.n2),
            3 => theta3(&t.ks, &t.ls, self.n1, self.n2)?,
            _ => return Err(Error::Unsupported("prescribed torsion counts exist for e = 2 and e = 3".into())),
        };
        scale_by_power(BigUint::one(), self.q, exp)
    }
}

/// Number of lifts of one self-orthogonal code over the `(mu-2)`-ladder to
/// self-orthogonal codes of type `t` over the `mu`-ladder.
pub fn lift_count(q: u64, n1: u32, n2: u32, t: &TypeTuplePair, variant: ThetaVariant) -> Result<BigUint> {
    let mu = t.ks.len() as u32;
    check_tuple_lengths(&t.ks, &t.ls, mu)?;
    let (k, l) = (&t.ks[..], &t.ls[..]);
    let mk = m_sum(k, mu as i64 - 2);
    let ml = m_sum(l, mu as i64 - 3);
    let coef = gauss_binom(n1 as i64 - mk - k[0] as i64, k[mu as usize - 1] as i64, q)
        * gauss_binom(n2 as i64 - ml - l[0] as i64, l[mu as usize - 2] as i64, q)
        * gauss_binom(k[0] as i64 + k[1] as i64, k[0] as i64, q)
        * gauss_binom(l[0] as i64 + l[1] as i64, l[0] as i64, q);
    scale_by_power(coef, q, theta_mu(mu, k, l, n1, n2, variant)?)
}

/// Number of LCD `[n, s]` codes over the prime field `F_p`.
pub fn lcd_field_count(n: u32, s: u32, p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    if s > n {
        return Ok(BigUint::zero());
    }
    if s == 0 || s == n {
        return Ok(BigUint::one());
    }
    let (ni, si) = (n as i64, s as i64);
    let pow = |exp2: i64| big_pow(p, halve(exp2) as u32);
    if p == 2 {
        let g = |a: i64, b: i64| gauss_binom(a, b, 4);
        return Ok(match (n % 2 == 1, s % 2 == 1) {
            (true, true) => pow((ni - si) * (si + 1)) * g((ni - 1) / 2, (si - 1) / 2),
            (false, true) => pow(ni * si - si * si + ni - 1) * g((ni - 2) / 2, (si - 1) / 2),
            (true, false) => pow(si * (ni - si + 1)) * g((ni - 1) / 2, si / 2),
            (false, false) => {
                let a = (big_pow(2, s) + 1u32) * g((ni - 2) / 2, si / 2);
                let b = (big_pow(2, n - s + 1) - big_pow(2, n - s) + 1u32) * g((ni - 2) / 2, (si - 2) / 2);
                pow(ni * si - si * si - 2) * (a + b)
            }
        });
    }
    let g = |a: i64, b: i64| gauss_binom(a, b, p * p);
    let half_n = big_pow(p, n / 2);
    Ok(match (n % 2 == 1, s % 2 == 1) {
        (true, true) => pow((ni - si) * (si + 1)) * g((ni - 1) / 2, (si - 1) / 2),
        (false, true) => {
            let minus = p % 4 == 1 || n.is_multiple_of(4);
            let factor = if minus { half_n - 1u32 } else { half_n + 1u32 };
            pow(ni * si - si * si - 1) * factor * g((ni - 2) / 2, (si - 1) / 2)
        }
        (true, false) => pow(si * (ni - si + 1)) * g((ni - 1) / 2, si / 2),
        (false, false) => pow(si * (ni - si)) * g(ni / 2, si / 2),
    })
}

/// Number of LCD codes of `Z_{p^e}^{n1} + Z_{p^(e-1)}^{n2}`, both trivial
/// codes included.
pub fn count_lcd_mixed(n1: u32, n2: u32, p: u64, e: u32) -> Result<BigUint> {
    if e < 2 {
        return Err(Error::InvalidParams("e must be at least 2".into()));
    }
    let e = e as u64;
    let mut total = BigUint::zero();
    for i in 0..=n1 {
        let li = lcd_field_count(n1, i, p)?;
        for j in 0..=n2 {
            let (iu, ju) = (i as u64, j as u64);
            let exp = (n1 - i) as u64 * (e - 1) * (iu + ju) + (n2 - j) as u64 * ((e - 1) * iu + (e - 2) * ju);
            total += &li * lcd_field_count(n2, j, p)? * big_pow(p, exp as u32);
        }
    }
    Ok(total)
}

/// The mixed count matching additive codes of length `n` over `params`.
pub fn additive_spec(params: &EisensteinParams, n: usize) -> Result<CountSpec> {
    if params.e < 2 {
        return Err(Error::Unsupported("additive counts need e >= 2".into()));
    }
    CountSpec::new(params.p, params.e, (n * params.hi_len()) as u32, (n * params.lo_len()) as u32)
}

/// Self-orthogonal additive codes of length `n`.
pub fn count_so_additive(params: &EisensteinParams, n: usize) -> Result<BigUint> {
    additive_spec(params, n)?.count_so_total()
}

/// Self-dual additive codes of length `n`.
pub fn count_sd_additive(params: &EisensteinParams, n: usize) -> Result<BigUint> {
    additive_spec(params, n)?.count_sd_total()
}

/// Whether a self-dual additive code of length `n` exists.
pub fn sd_exists_additive(params: &EisensteinParams, n: usize) -> Result<bool> {
    additive_spec(params, n)?.sd_exists()
}

/// ACD additive codes of length `n`, both trivial codes included.
pub fn count_acd_additive(params: &EisensteinParams, n: usize) -> Result<BigUint> {
    let spec = additive_spec(params, n)?;
    count_lcd_mixed(spec.n1, spec.n2, params.p, params.e)
}

/// Subtracts the zero code from a total.
pub fn nonzero(total: &BigUint) -> BigUint {
    if total.is_zero() {
        BigUint::zero()
    } else {
        total - 1u32
    }
}

/// Converts a small count for comparisons in tests and reports.
pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn ty(k: &[u32], l: &[u32]) -> TypeTuplePair {
        CodeType { ks: k.to_vec(), ls: l.to_vec() }
    }

    #[test]
    fn gauss_binom_examples() {
        assert_eq!(gauss_binom(2, 1, 3), b(4));
        assert_eq!(gauss_binom(5, 0, 7), b(1));
        assert_eq!(gauss_binom(4, 2, 3), b(130));
        assert_eq!(gauss_binom(2, 3, 3), b(0));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(4, 0, 3).unwrap(), b(1));
        assert_eq!(sigma(3, 1, 3).unwrap(), b(4));
        assert_eq!(sigma(2, 1, 3).unwrap(), b(0));
        assert_eq!(sigma(2, 1, 4), Err(Error::EvenFieldOrder(4)));
    }

    #[test]
    fn sd_exists_field_examples() {
        assert!(sd_exists_field(4, 3).unwrap());
        assert!(!sd_exists_field(2, 3).unwrap());
        assert!(sd_exists_field(2, 5).unwrap());
    }

    #[test]
    fn index_set_examples() {
        let k22 = k_set(2, 2);
        assert!(k22.contains(&vec![0, 1]) && k22.contains(&vec![1, 0]));
        assert!(!k22.contains(&vec![2, 1]));
        assert_eq!(l_set(2, 2), vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(k_set(0, 3), vec![vec![0, 0, 0]]);
        for n in 0..4 {
            for s in 1..5 {
                let ks = k_set(n, s);
                assert!(l_set(n, s).iter().all(|t| ks.contains(t)));
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta2(0, 1, 0, 2, 2), 0);
        assert_eq!(theta2(1, 0, 1, 2, 2), 1);
        let (k, l) = ([0, 0, 0, 1], [0, 0, 1]);
        assert_eq!(theta_mu(4, &k, &l, 2, 2, ThetaVariant::Printed).unwrap(), -1);
        assert_eq!(theta_mu(4, &k, &l, 2, 2, ThetaVariant::SignCorrected).unwrap(), 1);
        assert!(theta_mu(4, &k, &l[..2], 2, 2, ThetaVariant::Printed).is_err());
    }

    #[test]
    fn factor_examples() {
        let (k, l) = ([0, 0, 0, 1], [0, 0, 1]);
        assert_eq!(b_factor(&k, &l, 2, 2, 4, 3).unwrap(), b(16));
        assert_eq!(s_e(&k, &l, 2, 2, 4).unwrap(), 0);
        let (z, zl) = ([0u32; 4], [0u32; 3]);
        assert_eq!(delta_e(&z, &zl, 2, 2, 4, SELECTED_THETA).unwrap(), 0);
        assert_eq!(s_e(&z, &zl, 2, 2, 4).unwrap(), 0);
        assert_eq!(b_factor(&z, &zl, 2, 2, 4, 3).unwrap(), b(1));
        assert_eq!(f_factor(&z, &zl, 4, 3).unwrap(), b(1));
    }

    #[test]
    fn typed_examples() {
        let s = CountSpec::new(3, 2, 2, 2).unwrap();
        assert_eq!(s.count_so_typed(&ty(&[0, 1], &[0])).unwrap(), b(4));
        assert_eq!(s.count_so_typed(&ty(&[0, 2], &[0])).unwrap(), b(1));
        assert_eq!(s.count_so_typed(&ty(&[1, 0], &[0])).unwrap(), b(0));
        assert_eq!(CountSpec::new(9, 2, 2, 2).unwrap().count_so_typed(&ty(&[0, 0], &[0])).unwrap(), b(1));
        assert_eq!(CountSpec::new(4, 2, 2, 2).unwrap().count_so_total(), Err(Error::EvenFieldOrder(4)));
    }

    #[test]
    fn printed_theta_is_fractional() {
        let s = CountSpec::new(3, 4, 2, 2).unwrap();
        let t = ty(&[0, 0, 0, 1], &[0, 0, 1]);
        assert!(matches!(s.count_so_typed_with(&t, ThetaVariant::Printed), Err(Error::NonIntegral { .. })));
        assert_eq!(s.count_so_typed_with(&t, ThetaVariant::SignCorrected).unwrap(), b(48));
        assert_eq!(lift_count(3, 2, 2, &t, ThetaVariant::SignCorrected).unwrap(), b(48));
        assert_eq!(lift_count(3, 2, 2, &t, ThetaVariant::Amended).unwrap(), b(48));
    }

    #[test]
    fn sign_corrected_theta_undercounts() {
        let s = CountSpec::new(3, 4, 2, 2).unwrap();
        assert_eq!(s.count_so_total_with(ThetaVariant::SignCorrected).unwrap(), b(810));
        assert_eq!(s.count_so_typed_with(&ty(&[0, 0, 0, 0], &[0, 0, 1]), ThetaVariant::SignCorrected).unwrap(), b(4));
        assert_eq!(s.count_so_typed_with(&ty(&[0, 0, 0, 0], &[0, 0, 1]), ThetaVariant::Amended).unwrap(), b(36));
    }

    #[test]
    fn totals() {
        assert_eq!(CountSpec::new(3, 2, 2, 2).unwrap().count_so_total().unwrap(), b(6));
        assert_eq!(CountSpec::new(3, 2, 3, 3).unwrap().count_so_total().unwrap(), b(2636));
        assert_eq!(CountSpec::new(5, 2, 2, 2).unwrap().count_sd_total().unwrap(), b(22));
        assert_eq!(CountSpec::new(5, 3, 2, 2).unwrap().count_sd_total().unwrap(), b(172));
        assert_eq!(CountSpec::new(3, 3, 2, 2).unwrap().count_so_total().unwrap(), b(212));
        assert_eq!(CountSpec::new(3, 3, 3, 3).unwrap().count_so_total().unwrap(), b(2064152));
        assert_eq!(CountSpec::new(3, 4, 2, 2).unwrap().count_so_total().unwrap(), b(1066));
        assert_eq!(CountSpec::new(3, 5, 2, 1).unwrap().count_so_total().unwrap(), b(445));
        assert_eq!(CountSpec::new(3, 6, 2, 1).unwrap().count_so_total().unwrap(), b(1812));
        assert_eq!(CountSpec::new(5, 4, 1, 2).unwrap().count_sd_total().unwrap(), b(12));
        assert_eq!(CountSpec::new(5, 5, 2, 1).unwrap().count_sd_total().unwrap(), b(62));
    }

    #[test]
    fn prescribed_torsion_examples() {
        let s = CountSpec::new(3, 2, 2, 2).unwrap();
        assert_eq!(s.count_so_prescribed_torsion(&ty(&[0, 1], &[0])).unwrap(), b(1));
        assert_eq!(s.count_so_prescribed_torsion(&ty(&[0, 0], &[0])).unwrap(), b(1));
        let s = CountSpec::new(3, 2, 3, 3).unwrap();
        assert_eq!(s.count_so_prescribed_torsion(&ty(&[1, 0], &[0])).unwrap(), b(81));
        assert!(CountSpec::new(3, 4, 2, 2).unwrap().count_so_prescribed_torsion(&ty(&[0; 4], &[0; 3])).is_err());
    }

    #[test]
    fn lcd_examples() {
        assert_eq!(lcd_field_count(2, 1, 2).unwrap(), b(2));
        assert_eq!(lcd_field_count(2, 1, 3).unwrap(), b(4));
        assert_eq!(lcd_field_count(5, 0, 7).unwrap(), b(1));
        assert_eq!(count_lcd_mixed(2, 2, 2, 2).unwrap(), b(114));
        assert_eq!(count_lcd_mixed(2, 2, 3, 2).unwrap(), b(884));
        let mut direct = BigUint::zero();
        for j in 0..=3 {
            direct += lcd_field_count(3, j, 3).unwrap() * big_pow(3, (3 - j) * j);
        }
        assert_eq!(count_lcd_mixed(0, 3, 3, 3).unwrap(), direct);
    }

    #[test]
    fn additive_wrappers() {
        let r3 = EisensteinParams::rp(3).unwrap();
        assert_eq!(count_so_additive(&r3, 2).unwrap(), b(6));
        let z27 = EisensteinParams::new(3, 3, 1, 2, 1, None).unwrap();
        assert_eq!(count_so_additive(&z27, 2).unwrap(), b(212));
        let r2 = EisensteinParams::rp(2).unwrap();
        assert_eq!(count_acd_additive(&r2, 2).unwrap(), b(114));
        assert!(count_so_additive(&r2, 2).is_err());
        assert!(!sd_exists_additive(&r3, 2).unwrap());
        assert_eq!(count_sd_additive(&EisensteinParams::rp(5).unwrap(), 2).unwrap(), b(22));
    }
}
