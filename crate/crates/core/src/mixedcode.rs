//! Linear codes over `Z_{p^mu}^{n1} + Z_{p^(mu-1)}^{n2}`.
//!
//! A word `(c | d)` is embedded as the row `(c | p*d)` over `Z_{p^mu}`, so a
//! code is a submodule of `Z_{p^mu}^{n1+n2}` inside that image and its Howell
//! form is a canonical identity.

use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modmatrix::{howell_form, kernel, ResidueMatrix};
use crate::ringcore::{is_prime, Modulus};

/// The ambient `Z_{p^mu}^{n1} + Z_{p^(mu-1)}^{n2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedAmbient {
    pub p: u64,
    pub mu: u32,
    pub n1: usize,
    pub n2: usize,
}

impl MixedAmbient {
    pub fn new(p: u64, mu: u32, n1: usize, n2: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if mu < 2 {
            return Err(Error::InvalidParams("mu must be at least 2".into()));
        }
        if n1 + n2 == 0 {
            return Err(Error::InvalidParams("n1 + n2 must be positive".into()));
        }
        Modulus::new(p, mu)?;
        Ok(Self { p, mu, n1, n2 })
    }

    /// Modulus of the hi alphabet and of the embedding.
    pub fn modulus(&self) -> Modulus {
        Modulus { p: self.p, mu: self.mu }
    }

    /// Modulus of the lo alphabet.
    pub fn lo_modulus(&self) -> Modulus {
        Modulus { p: self.p, mu: self.mu - 1 }
    }

    pub fn len(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `log_p` of the ambient size, `mu*n1 + (mu-1)*n2`.
    pub fn log_cardinality(&self) -> u32 {
        self.mu * self.n1 as u32 + (self.mu - 1) * self.n2 as u32
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.p).pow(self.log_cardinality())
    }

    /// Ambient size as a machine integer, saturating.
    pub fn cardinality_u128(&self) -> u128 {
        (self.p as u128).checked_pow(self.log_cardinality()).unwrap_or(u128::MAX)
    }

    /// Embeds a word as a row over `Z_{p^mu}`.
    pub fn embed(&self, w: &MixedWord) -> Vec<u64> {
        let m = self.modulus();
        w.hi.iter().copied().chain(w.lo.iter().map(|&d| m.mul(self.p, d))).collect()
    }

    /// Reads an embedded row back as a word.
    pub fn unembed(&self, row: &[u64]) -> MixedWord {
        MixedWord { ambient: *self, hi: row[..self.n1].to_vec(), lo: row[self.n1..].iter().map(|&x| x / self.p).collect() }
    }

    /// Whether an embedded row lies in the image of the embedding.
    pub fn is_embedded(&self, row: &[u64]) -> bool {
        row.len() == self.len() && row[self.n1..].iter().all(|&x| x % self.p == 0)
    }
}

impl fmt::Display for MixedAmbient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.p.pow(self.mu);
        write!(f, "Z{}Z{} ({},{})", q, q / self.p, self.n1, self.n2)
    }
}

/// A word `(c_1..c_n1 | d_1..d_n2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedWord {
    pub ambient: MixedAmbient,
    pub hi: Vec<u64>,
    pub lo: Vec<u64>,
}

impl MixedWord {
    /// Builds a word, reducing each block by its own modulus.
    pub fn new(ambient: MixedAmbient, hi: &[i64], lo: &[i64]) -> Result<Self> {
        if hi.len() != ambient.n1 {
            return Err(Error::LengthMismatch { expected: ambient.n1, got: hi.len() });
        }
        if lo.len() != ambient.n2 {
            return Err(Error::LengthMismatch { expected: ambient.n2, got: lo.len() });
        }
        let (m, l) = (ambient.modulus(), ambient.lo_modulus());
        Ok(Self { ambient, hi: hi.iter().map(|&x| m.reduce_i64(x)).collect(), lo: lo.iter().map(|&x| l.reduce_i64(x)).collect() })
    }

    /// Builds a word from one row of `n1 + n2` integers.
    pub fn from_row(ambient: MixedAmbient, row: &[i64]) -> Result<Self> {
        if row.len() != ambient.len() {
            return Err(Error::LengthMismatch { expected: ambient.len(), got: row.len() });
        }
        Self::new(ambient, &row[..ambient.n1], &row[ambient.n1..])
    }

    pub fn zero(ambient: MixedAmbient) -> Self {
        Self { ambient, hi: vec![0; ambient.n1], lo: vec![0; ambient.n2] }
    }

    pub fn is_zero(&self) -> bool {
        self.hi.iter().chain(&self.lo).all(|&x| x == 0)
    }

    /// Hi entries followed by lo entries.
    pub fn to_row(&self) -> Vec<u64> {
        self.hi.iter().chain(&self.lo).copied().collect()
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "[{} | {}]", join(&self.hi), join(&self.lo))
    }
}

/// `sum c_i c'_i + p * sum d_j d'_j` mod `p^mu`.
pub fn inner_product(a: &MixedWord, b: &MixedWord) -> Result<u64> {
    if a.ambient != b.ambient {
        return Err(Error::ShapeMismatch("words from different ambients".into()));
    }
    let m = a.ambient.modulus();
    let l = a.ambient.lo_modulus();
    let hi = a.hi.iter().zip(&b.hi).fold(0, |acc, (&x, &y)| m.add(acc, m.mul(x, y)));
    let lo = a.lo.iter().zip(&b.lo).fold(0, |acc, (&x, &y)| l.add(acc, l.mul(x, y)));
    Ok(m.add(hi, m.mul(a.ambient.p, lo)))
}

/// The same pairing evaluated on embedded rows.
pub fn embedded_inner(amb: &MixedAmbient, x: &[u64], y: &[u64]) -> u64 {
    let m = amb.modulus();
    let q = m.value() as u128;
    let p = amb.p as u128;
    let mut acc = 0u128;
    for c in 0..amb.n1 {
        acc = (acc + x[c] as u128 * y[c] as u128) % q;
    }
    for c in amb.n1..amb.len() {
        acc = (acc + (x[c] as u128 / p) * (y[c] as u128 / p) % q * p) % q;
    }
    acc as u64
}

/// The type `{k_0..k_(mu-1); l_0..l_(mu-2)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodeType {
    #[serde(rename = "k")]
    pub ks: Vec<u32>,
    #[serde(rename = "l")]
    pub ls: Vec<u32>,
}

impl CodeType {
    pub fn zero(mu: u32) -> Self {
        Self { ks: vec![0; mu as usize], ls: vec![0; mu as usize - 1] }
    }

    /// `log_p` of the size of any code of this type.
    pub fn log_cardinality(&self) -> u32 {
        let mu = self.ks.len() as u32;
        let hi: u32 = self.ks.iter().enumerate().map(|(i, &k)| k * (mu - i as u32)).sum();
        let lo: u32 = self.ls.iter().enumerate().map(|(j, &l)| l * (mu - 1 - j as u32)).sum();
        hi + lo
    }

    /// Type of the dual inside an ambient of block lengths `n1, n2`.
    pub fn dual_type(&self, n1: usize, n2: usize) -> Self {
        let k_sum: u32 = self.ks.iter().sum();
        let l_sum: u32 = self.ls.iter().sum();
        let mut ks = vec![n1 as u32 - k_sum];
        ks.extend(self.ks[1..].iter().rev());
        let mut ls = vec![n2 as u32 - l_sum];
        ls.extend(self.ls[1..].iter().rev());
        Self { ks, ls }
    }
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.ks), join(&self.ls))
    }
}

/// Which block a torsion code is read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

/// Block-shaped generator matrix of a column-permuted copy of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardForm {
    /// New hi column `j` is old hi column `hi_perm[j]`.
    pub hi_perm: Vec<usize>,
    /// New lo column `j` is old lo column `lo_perm[j]`.
    pub lo_perm: Vec<usize>,
    /// Embedded rows of the permuted code: hi-pivot rows by valuation, then
    /// lo-pivot rows by valuation.
    pub matrix: ResidueMatrix,
    /// Per row, the pivot block and the valuation `i` of `p^i` (raw for lo).
    pub pivots: Vec<(Side, u32)>,
    /// The same rows before permuting columns.
    pub unpermuted: ResidueMatrix,
}

/// A code, stored as the Howell form of its embedded generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedCode {
    pub ambient: MixedAmbient,
    pub basis: ResidueMatrix,
}

impl MixedCode {
    /// The code spanned by `rows`.
    pub fn from_generators(ambient: MixedAmbient, rows: &[MixedWord]) -> Result<Self> {
        let mut embedded = Vec::with_capacity(rows.len());
        for w in rows {
            if w.ambient != ambient {
                return Err(Error::ShapeMismatch(format!("word from {} in {}", w.ambient, ambient)));
            }
            embedded.push(ambient.embed(w));
        }
        let g = ResidueMatrix::from_rows(ambient.modulus(), ambient.len(), &embedded)?;
        Self::from_embedded(ambient, &g)
    }

    /// The code spanned by integer rows of length `n1 + n2`.
    pub fn from_int_rows(ambient: MixedAmbient, rows: &[Vec<i64>]) -> Result<Self> {
        let words = rows.iter().map(|r| MixedWord::from_row(ambient, r)).collect::<Result<Vec<_>>>()?;
        Self::from_generators(ambient, &words)
    }

    /// The code spanned by already embedded rows.
    pub fn from_embedded(ambient: MixedAmbient, g: &ResidueMatrix) -> Result<Self> {
        if g.cols != ambient.len() || g.m != ambient.modulus() {
            return Err(Error::ShapeMismatch("embedded matrix does not fit the ambient".into()));
        }
        if !g.row_iter().all(|r| ambient.is_embedded(r)) {
            return Err(Error::InvalidParams("lo entries of an embedded row must be multiples of p".into()));
        }
        Ok(Self { ambient, basis: howell_form(g) })
    }

    /// Wraps a matrix already known to be an embedded Howell form.
    pub fn from_howell_unchecked(ambient: MixedAmbient, basis: ResidueMatrix) -> Self {
        Self { ambient, basis }
    }

    pub fn zero(ambient: MixedAmbient) -> Self {
        Self { ambient, basis: ResidueMatrix::empty(ambient.modulus(), ambient.len()) }
    }

    pub fn full(ambient: MixedAmbient) -> Self {
        let mut g = ResidueMatrix::identity(ambient.modulus(), ambient.len());
        for c in ambient.n1..ambient.len() {
            g.set(c, c, ambient.p);
        }
        Self { ambient, basis: g }
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows == 0
    }

    /// Howell rows read back as words.
    pub fn generators(&self) -> Vec<MixedWord> {
        self.basis.row_iter().map(|r| self.ambient.unembed(r)).collect()
    }

    /// Generators as integer rows, hi entries then lo entries.
    pub fn generator_rows(&self) -> Vec<Vec<u64>> {
        self.generators().iter().map(MixedWord::to_row).collect()
    }

    /// `log_p |C|`.
    pub fn log_cardinality(&self) -> u32 {
        (0..self.basis.rows).map(|i| self.ambient.mu - self.basis.pivot_valuation(i)).sum()
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.ambient.p).pow(self.log_cardinality())
    }

    /// Every codeword, embedded; exponential in the code size.
    pub fn codewords_embedded(&self) -> Vec<Vec<u64>> {
        self.basis.span_elements()
    }

    pub fn codewords(&self) -> Vec<MixedWord> {
        self.codewords_embedded().iter().map(|r| self.ambient.unembed(r)).collect()
    }

    pub fn contains(&self, w: &MixedWord) -> bool {
        w.ambient == self.ambient && self.basis.howell_contains(&self.ambient.embed(w))
    }

    pub fn contains_embedded(&self, row: &[u64]) -> bool {
        self.basis.howell_contains(row)
    }

    /// Whether `self` is a submodule of `other`.
    pub fn is_subcode_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.row_iter().all(|r| other.basis.howell_contains(r))
    }

    /// The Euclidean dual `{m : <m, c> = 0 for all c in C}`.
    pub fn dual(&self) -> Self {
        let amb = self.ambient;
        let g = if self.basis.rows == 0 { ResidueMatrix::zeros(amb.modulus(), 1, amb.len()) } else { self.basis.clone() };
        let mut k = kernel(&g);
        for i in 0..k.rows {
            for c in amb.n1..amb.len() {
                let x = k.get(i, c);
                k.set(i, c, amb.modulus().mul(amb.p, x));
            }
        }
        Self { ambient: amb, basis: howell_form(&k) }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    /// Module sum.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { ambient: self.ambient, basis: howell_form(&self.basis.vstack(&other.basis)?) })
    }

    /// Intersection, as the dual of the sum of the duals.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Gram matrix of the Howell rows under the Euclidean pairing.
    pub fn gram_is_zero(&self) -> bool {
        let b = &self.basis;
        (0..b.rows).all(|i| (i..b.rows).all(|j| embedded_inner(&self.ambient, b.row(i), b.row(j)) == 0))
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gram_is_zero()
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.log_cardinality() == self.ambient.log_cardinality() && self.gram_is_zero()
    }

    pub fn is_lcd(&self) -> bool {
        let s = self.sum(&self.dual()).expect("same ambient");
        s.log_cardinality() == self.ambient.log_cardinality()
    }

    /// Smith-style reduction with row operations and in-block column
    /// permutations. Each step pivots on an entry of least embedded
    /// valuation, preferring a lo column on ties.
    pub fn standard_form(&self) -> StandardForm {
        let amb = self.ambient;
        let m = amb.modulus();
        let n = amb.len();
        let mut rows: Vec<Vec<u64>> = self.basis.to_rows();
        let mut used_col = vec![false; n];
        let mut pivots: Vec<(usize, u32, Vec<u64>)> = Vec::new();
        loop {
            let mut best: Option<(u32, bool, usize, usize)> = None;
            for (ri, r) in rows.iter().enumerate() {
                for (c, &x) in r.iter().enumerate() {
                    if used_col[c] || x == 0 {
                        continue;
                    }
                    let key = (m.valuation(x), c < amb.n1, c, ri);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let Some((v, _, c, ri)) = best else { break };
            let mut piv = rows.swap_remove(ri);
            let (_, u) = m.split(piv[c]);
            let uinv = m.inv(u).expect("unit part is invertible");
            piv.iter_mut().for_each(|x| *x = m.mul(*x, uinv));
            let pv = m.p_pow(v);
            for r in rows.iter_mut() {
                if r[c] != 0 {
                    let q = r[c] / pv;
                    for (x, &y) in r.iter_mut().zip(&piv) {
                        *x = m.sub(*x, m.mul(q, y));
                    }
                }
            }
            rows.retain(|r| r.iter().any(|&x| x != 0));
            used_col[c] = true;
            pivots.push((c, v, piv));
        }
        for j in 0..pivots.len() {
            let (c, v, src) = (pivots[j].0, pivots[j].1, pivots[j].2.clone());
            let pv = m.p_pow(v);
            for (i, (_, _, row)) in pivots.iter_mut().enumerate() {
                if i != j && row[c] >= pv {
                    let q = row[c] / pv;
                    for (x, &y) in row.iter_mut().zip(&src) {
                        *x = m.sub(*x, m.mul(q, y));
                    }
                }
            }
        }
        pivots.sort_by_key(|&(c, v, _)| (c >= amb.n1, v, c));
        let mut hi_perm: Vec<usize> = pivots.iter().filter(|t| t.0 < amb.n1).map(|t| t.0).collect();
        hi_perm.extend((0..amb.n1).filter(|c| !used_col[*c]));
        let mut lo_perm: Vec<usize> = pivots.iter().filter(|t| t.0 >= amb.n1).map(|t| t.0 - amb.n1).collect();
        lo_perm.extend((0..amb.n2).filter(|c| !used_col[amb.n1 + *c]));
        let perm: Vec<usize> = hi_perm.iter().copied().chain(lo_perm.iter().map(|c| c + amb.n1)).collect();
        let unpermuted =
            ResidueMatrix::from_rows(m, n, &pivots.iter().map(|t| t.2.clone()).collect::<Vec<_>>()).expect("consistent widths");
        let kinds = pivots.iter().map(|&(c, v, _)| if c < amb.n1 { (Side::X, v) } else { (Side::Y, v - 1) }).collect();
        StandardForm { matrix: unpermuted.permute_columns(&perm), hi_perm, lo_perm, pivots: kinds, unpermuted }
    }

    /// The unique type of the code.
    pub fn type_of(&self) -> CodeType {
        let mut t = CodeType::zero(self.ambient.mu);
        for (side, v) in self.standard_form().pivots {
            match side {
                Side::X => t.ks[v as usize] += 1,
                Side::Y => t.ls[v as usize] += 1,
            }
        }
        t
    }

    /// Generator matrix over `F_p` of the `i`-th torsion code of one side.
    pub fn torsion(&self, i: usize, side: Side) -> Result<ResidueMatrix> {
        let amb = self.ambient;
        let hi = match side {
            Side::X => amb.mu as usize,
            Side::Y => amb.mu as usize - 1,
        };
        if i < 1 || i > hi {
            return Err(Error::IndexOutOfRange { index: i, lo: 1, hi });
        }
        let f = Modulus { p: amb.p, mu: 1 };
        let sf = self.standard_form();
        let (cols, width) = match side {
            Side::X => (0..amb.n1, amb.n1),
            Side::Y => (amb.n1..amb.len(), amb.n2),
        };
        let mut rows = Vec::new();
        for (r, &(s, v)) in sf.unpermuted.row_iter().zip(&sf.pivots) {
            if s == side && (v as usize) < i {
                let shift = match side {
                    Side::X => v,
                    Side::Y => v + 1,
                };
                let d = amb.modulus().p_pow(shift);
                rows.push(r[cols.clone()].iter().map(|&x| (x / d) % amb.p).collect());
            }
        }
        Ok(howell_form(&ResidueMatrix::from_rows(f, width, &rows)?))
    }

    /// Least homogeneous weight of a nonzero codeword.
    pub fn min_hom_distance(&self) -> Result<u64> {
        check_hom_ambient(&self.ambient)?;
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let amb = self.ambient;
        Ok(self
            .codewords_embedded()
            .iter()
            .filter(|r| r.iter().any(|&x| x != 0))
            .map(|r| hom_weight_word(&amb.unembed(r)).expect("checked ambient"))
            .min()
            .expect("nonzero code has a nonzero word"))
    }

    /// Description suitable for a code file.
    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            p: self.ambient.p,
            e: self.ambient.mu,
            n1: self.ambient.n1,
            n2: self.ambient.n2,
            generators: self.generator_rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect(),
        }
    }
}

fn check_hom_ambient(amb: &MixedAmbient) -> Result<()> {
    if amb.mu != 2 || amb.n1 != amb.n2 {
        return Err(Error::Unsupported("homogeneous weight needs mu = 2 and n1 = n2".into()));
    }
    Ok(())
}

/// Homogeneous weight of one symbol `(a0 | a1)` of `Z_{p^2} + Z_p`.
pub fn hom_weight_symbol(p: u64, a0: u64, a1: u64) -> u64 {
    if a0 == 0 && a1 == 0 {
        0
    } else if a1 == 0 && a0.is_multiple_of(p) {
        p * p
    } else {
        (p - 1) * p
    }
}

/// Homogeneous weight of a word, pairing hi coordinate `i` with lo coordinate `i`.
pub fn hom_weight_word(w: &MixedWord) -> Result<u64> {
    check_hom_ambient(&w.ambient)?;
    Ok(w.hi.iter().zip(&w.lo).map(|(&a, &b)| hom_weight_symbol(w.ambient.p, a, b)).sum())
}

/// On-disk description of a mixed code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub p: u64,
    pub e: u32,
    pub n1: usize,
    pub n2: usize,
    pub generators: Vec<Vec<i64>>,
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_code(&self) -> Result<MixedCode> {
        let amb = MixedAmbient::new(self.p, self.e, self.n1, self.n2)?;
        MixedCode::from_int_rows(amb, &self.generators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
