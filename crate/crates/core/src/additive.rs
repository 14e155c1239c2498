//! Eisenstein-additive codes over `R_e`, stored through their `Psi` image.
//!
//! A word `(c_1, ..., c_N)` maps to the mixed word whose hi block lists the
//! hi coordinates of `c_1, ..., c_N` in order and whose lo block does the
//! same for the lo coordinates. Every operation runs on that image.

use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixedcode::{inner_product, MixedAmbient, MixedCode, MixedWord};
use crate::ringcore::{AdditiveElement, EisensteinParams, Modulus};

/// Ambient of the `Psi` image of `R_e^n`.
pub fn image_ambient(params: &EisensteinParams, n: usize) -> Result<MixedAmbient> {
    if params.e < 2 {
        return Err(Error::Unsupported("additive codes need e >= 2".into()));
    }
    MixedAmbient::new(params.p, params.e, n * params.hi_len(), n * params.lo_len())
}

/// `Psi` on a word of `R_e^n`.
pub fn psi_word(params: &EisensteinParams, word: &[AdditiveElement]) -> Result<MixedWord> {
    let amb = image_ambient(params, word.len())?;
    let mut hi = Vec::with_capacity(amb.n1);
    let mut lo = Vec::with_capacity(amb.n2);
    for a in word {
        if &a.params != params {
            return Err(Error::ShapeMismatch("element from a different ring".into()));
        }
        hi.extend(a.hi.iter().map(|&x| x as i64));
        lo.extend(a.lo.iter().map(|&x| x as i64));
    }
    MixedWord::new(amb, &hi, &lo)
}

/// Inverse of [`psi_word`].
pub fn psi_word_inverse(params: &EisensteinParams, w: &MixedWord) -> Result<Vec<AdditiveElement>> {
    let (h, l) = (params.hi_len(), params.lo_len());
    let n = w.hi.len().checked_div(h).unwrap_or(0);
    if w.hi.len() != n * h || w.lo.len() != n * l {
        return Err(Error::LengthMismatch { expected: n * (h + l), got: w.hi.len() + w.lo.len() });
    }
    (0..n).map(|i| crate::ringcore::psi_unpack(&w.hi[i * h..(i + 1) * h], &w.lo[i * l..(i + 1) * l], params)).collect()
}

/// Whether `chi_d(c) = 1`: the hi products plus `p` times the lo products
/// vanish mod `p^e`.
pub fn chi_orthogonal(d: &[AdditiveElement], c: &[AdditiveElement]) -> Result<bool> {
    if d.len() != c.len() {
        return Err(Error::LengthMismatch { expected: d.len(), got: c.len() });
    }
    let Some(first) = d.first().or(c.first()) else {
        return Ok(true);
    };
    let params = &first.params;
    Ok(inner_product(&psi_word(params, d)?, &psi_word(params, c)?)? == 0)
}

/// A code over `R_e^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveCode {
    pub params: EisensteinParams,
    pub n: usize,
    pub image: MixedCode,
}

impl AdditiveCode {
    /// The code generated by `words`, each a word of `n` ring elements.
    pub fn from_generators(params: &EisensteinParams, n: usize, words: &[Vec<AdditiveElement>]) -> Result<Self> {
        let amb = image_ambient(params, n)?;
        let mut rows = Vec::with_capacity(words.len());
        for w in words {
            if w.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: w.len() });
            }
            rows.push(psi_word(params, w)?);
        }
        Ok(Self { params: params.clone(), n, image: MixedCode::from_generators(amb, &rows)? })
    }

    /// The code whose `Psi` image is `image`.
    pub fn from_image(params: &EisensteinParams, n: usize, image: MixedCode) -> Result<Self> {
        if image.ambient != image_ambient(params, n)? {
            return Err(Error::ShapeMismatch(format!("image lives in {}, not in the image of R_e^{n}", image.ambient)));
        }
        Ok(Self { params: params.clone(), n, image })
    }

    pub fn zero(params: &EisensteinParams, n: usize) -> Result<Self> {
        Ok(Self { params: params.clone(), n, image: MixedCode::zero(image_ambient(params, n)?) })
    }

    pub fn full(params: &EisensteinParams, n: usize) -> Result<Self> {
        Ok(Self { params: params.clone(), n, image: MixedCode::full(image_ambient(params, n)?) })
    }

    pub fn cardinality(&self) -> BigUint {
        self.image.cardinality()
    }

    pub fn contains(&self, word: &[AdditiveElement]) -> Result<bool> {
        Ok(self.image.contains(&psi_word(&self.params, word)?))
    }

    /// Every codeword, as words of ring elements.
    pub fn codewords(&self) -> Vec<Vec<AdditiveElement>> {
        self.image.codewords().iter().map(|w| psi_word_inverse(&self.params, w).expect("image words have the right shape")).collect()
    }

    /// The dual under the `chi` pairing, computed as the dual of the image.
    pub fn chi_dual(&self) -> Self {
        Self { params: self.params.clone(), n: self.n, image: self.image.dual() }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.image.is_self_orthogonal()
    }

    pub fn is_self_dual(&self) -> bool {
        self.image.is_self_dual()
    }

    /// Whether the code meets its `chi` dual trivially.
    pub fn is_acd(&self) -> bool {
        self.image.is_lcd()
    }

    /// The code generated by `u` applied to every generator.
    pub fn monomial_image(&self, u: &MonomialMatrix) -> Result<Self> {
        let rows = self.image.generators().iter().map(|w| u.apply(&self.params, w)).collect::<Result<Vec<_>>>()?;
        Ok(Self { params: self.params.clone(), n: self.n, image: MixedCode::from_generators(self.image.ambient, &rows)? })
    }

    /// Least homogeneous weight of a nonzero codeword; `R_p` family only.
    pub fn hom_distance(&self) -> Result<u64> {
        if !self.params.is_rp_family() {
            return Err(Error::Unsupported("homogeneous weights are defined for the R_p family".into()));
        }
        self.image.min_hom_distance()
    }

    pub fn to_file(&self) -> AdditiveFile {
        let (h, l) = (self.params.hi_len(), self.params.lo_len());
        let generators = self
            .image
            .generators()
            .iter()
            .map(|w| {
                (0..self.n).flat_map(|i| w.hi[i * h..(i + 1) * h].iter().chain(&w.lo[i * l..(i + 1) * l])).map(|&x| x as i64).collect()
            })
            .collect();
        AdditiveFile {
            p: self.params.p,
            e: self.params.e,
            r: self.params.r,
            k: self.params.k,
            t: self.params.t,
            g: self.params.g_coeffs.clone(),
            n: self.n,
            generators,
        }
    }
}

/// A permutation of the `n` positions with one unit multiplier per position:
/// position `i` of the image is `units[i]` times position `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub units: Vec<u64>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, units: Vec<u64>, modulus: Modulus) -> Result<Self> {
        let n = perm.len();
        if units.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: units.len() });
        }
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParams(format!("{perm:?} is not a permutation")));
            }
        }
        let units: Vec<u64> = units.iter().map(|&u| modulus.reduce(u)).collect();
        if let Some(&u) = units.iter().find(|&&u| !modulus.is_unit(u)) {
            return Err(Error::NonUnit(u));
        }
        Ok(Self { perm, units })
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), units: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// The matrix applying `self` first and `next` second.
    pub fn then(&self, next: &Self, modulus: Modulus) -> Self {
        Self {
            perm: next.perm.iter().map(|&j| self.perm[j]).collect(),
            units: next.perm.iter().zip(&next.units).map(|(&j, &u)| modulus.mul(u, self.units[j])).collect(),
        }
    }

    /// Applies the matrix to the `Psi` image of a word.
    pub fn apply(&self, params: &EisensteinParams, w: &MixedWord) -> Result<MixedWord> {
        let (h, l) = (params.hi_len(), params.lo_len());
        let n = self.len();
        if w.hi.len() != n * h || w.lo.len() != n * l {
            return Err(Error::LengthMismatch { expected: n * (h + l), got: w.hi.len() + w.lo.len() });
        }
        let hm = params.hi_modulus();
        let lm = params.lo_modulus();
        let mut hi = Vec::with_capacity(n * h);
        let mut lo = Vec::with_capacity(n * l);
        for (&j, &u) in self.perm.iter().zip(&self.units) {
            hi.extend(w.hi[j * h..(j + 1) * h].iter().map(|&x| hm.mul(u, x) as i64));
            lo.extend(w.lo[j * l..(j + 1) * l].iter().map(|&x| lm.mul(lm.reduce(u), x) as i64));
        }
        MixedWord::new(w.ambient, &hi, &lo)
    }
}

/// Whether `d` is the largest multiple of `(p-1)p` not above
/// `(p-1)p n m / (m-1)`, the homogeneous Plotkin bound for `m` codewords of
/// length `n` over `R_p`.
pub fn plotkin_achieved(p: u64, n: u64, m: u64, d: u64) -> Result<bool> {
    if m < 2 {
        return Err(Error::InvalidParams("a code needs at least 2 codewords".into()));
    }
    let g = (p - 1) * p;
    Ok(d == (n * m) / (m - 1) * g)
}

/// On-disk description of an additive code: each generator lists, per
/// position, the `r t` hi coefficients then the `r (k - t)` lo coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveFile {
    pub p: u64,
    pub e: u32,
    pub r: usize,
    pub k: usize,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<u64>>,
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
}

impl AdditiveFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn params(&self) -> Result<EisensteinParams> {
        EisensteinParams::new(self.p, self.e, self.r, self.k, self.t, self.g.clone())
    }

    pub fn to_code(&self) -> Result<AdditiveCode> {
        let params = self.params()?;
        let width = params.r * params.k;
        let words = self
            .generators
            .iter()
            .map(|row| {
                if row.len() != self.n * width {
                    return Err(Error::LengthMismatch { expected: self.n * width, got: row.len() });
                }
                row.chunks(width).map(|c| AdditiveElement::from_coeffs(&params, c)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        AdditiveCode::from_generators(&params, self.n, &words)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(params: &EisensteinParams, c: &[i64]) -> AdditiveElement {
        AdditiveElement::from_coeffs(params, c).unwrap()
    }

    fn word(params: &EisensteinParams, w: &[[i64; 2]]) -> Vec<AdditiveElement> {
        w.iter().map(|c| el(params, c)).collect()
    }

    fn code(params: &EisensteinParams, gens: &[&[[i64; 2]]]) -> AdditiveCode {
        let n = gens[0].len();
        AdditiveCode::from_generators(params, n, &gens.iter().map(|g| word(params, g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn generator_examples() {
        let r3 = EisensteinParams::rp(3).unwrap();
        let c = code(&r3, &[&[[3, 0], [6, 0]]]);
        let amb = MixedAmbient::new(3, 2, 2, 2).unwrap();
        assert_eq!(c.image, MixedCode::from_int_rows(amb, &[vec![3, 6, 0, 0]]).unwrap());
        let r2 = EisensteinParams::rp(2).unwrap();
        assert_eq!(code(&r2, &[&[[2, 0], [2, 0], [0, 0]], &[[0, 1], [0, 1], [2, 0]]]).cardinality(), BigUint::from(4u32));
        assert!(AdditiveCode::from_generators(&r3, 2, &[]).unwrap().image.is_zero());
        assert!(AdditiveCode::from_generators(&r3, 2, &[word(&r3, &[[1, 0]])]).is_err());
    }

    #[test]
    fn chi_examples() {
        let r3 = EisensteinParams::rp(3).unwrap();
        let d = word(&r3, &[[3, 0], [6, 0]]);
        assert!(chi_orthogonal(&d, &d).unwrap());
        let z = word(&r3, &[[0, 0], [0, 0]]);
        let u = word(&r3, &[[1, 0], [0, 0]]);
        assert!(chi_orthogonal(&z, &u).unwrap());
        assert!(!chi_orthogonal(&u, &u).unwrap());
        assert!(chi_orthogonal(&u, &d[..1]).is_err());
    }

    #[test]
    fn chi_dual_examples() {
        let r3 = EisensteinParams::rp(3).unwrap();
        let c = code(&r3, &[&[[3, 0], [0, 0]]]);
        assert_eq!(c.chi_dual().cardinality(), BigUint::from(243u32));
        assert_eq!(AdditiveCode::zero(&r3, 2).unwrap().chi_dual(), AdditiveCode::full(&r3, 2).unwrap());
        assert_eq!(c.chi_dual().chi_dual(), c);
    }

    #[test]
    fn monomial_examples() {
        let r3 = EisensteinParams::rp(3).unwrap();
        let m = r3.hi_modulus();
        let c = code(&r3, &[&[[3, 0], [6, 0]]]);
        assert_eq!(c.monomial_image(&MonomialMatrix::identity(2)).unwrap(), c);
        let swap = MonomialMatrix::new(vec![1, 0], vec![1, 1], m).unwrap();
        assert_eq!(c.monomial_image(&swap).unwrap(), c);
        let c = code(&r3, &[&[[3, 0], [0, 0]]]);
        let scale = MonomialMatrix::new(vec![0, 1], vec![2, 1], m).unwrap();
        assert_eq!(c.monomial_image(&scale).unwrap(), c);
        assert_eq!(MonomialMatrix::new(vec![0, 1], vec![3, 1], m), Err(Error::NonUnit(3)));
        assert!(MonomialMatrix::new(vec![0, 0], vec![1, 1], m).is_err());
    }

    #[test]
    fn hom_distance_examples() {
        let r2 = EisensteinParams::rp(2).unwrap();
        assert_eq!(code(&r2, &[&[[2, 0], [2, 0], [0, 0]], &[[0, 1], [0, 1], [2, 0]]]).hom_distance().unwrap(), 8);
        let r3 = EisensteinParams::rp(3).unwrap();
        assert_eq!(code(&r3, &[&[[3, 0], [6, 0]]]).hom_distance().unwrap(), 18);
        assert_eq!(code(&r3, &[&[[3, 0], [0, 0]]]).hom_distance().unwrap(), 9);
        assert_eq!(AdditiveCode::zero(&r3, 2).unwrap().hom_distance(), Err(Error::ZeroCode));
        let other = EisensteinParams::new(3, 3, 1, 2, 1, None).unwrap();
        assert!(AdditiveCode::zero(&other, 1).unwrap().hom_distance().is_err());
    }

    #[test]
    fn plotkin_examples() {
        assert!(plotkin_achieved(2, 3, 4, 8).unwrap());
        assert!(plotkin_achieved(2, 4, 4, 10).unwrap());
        assert!(plotkin_achieved(3, 2, 3, 18).unwrap());
        assert!(!plotkin_achieved(2, 4, 4, 8).unwrap());
        assert!(plotkin_achieved(2, 4, 1, 8).is_err());
    }

    #[test]
    fn file_round_trip() {
        let r2 = EisensteinParams::rp(2).unwrap();
        let c = code(&r2, &[&[[2, 1], [0, 1], [2, 0], [0, 1]], &[[0, 1], [2, 1], [2, 0], [2, 0]]]);
        let f = AdditiveFile::parse(&c.to_file().to_json()).unwrap();
        assert_eq!(f.to_code().unwrap(), c);
    }
}
