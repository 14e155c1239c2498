//! Dense matrices over `Z_{p^mu}`: Howell canonical form, kernels, span
//! sizes, the mixed pairing `G <> H^T = A1 A2^T + gamma B1 B2^T`, and the
//! symmetrization map `B -> A B^T + B A^T` over a prime field.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ringcore::Modulus;

/// Row-major matrix with entries reduced mod `p^mu`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueMatrix {
    pub m: Modulus,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {}^{} [", self.m.p, self.m.mu)?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

impl ResidueMatrix {
    /// Builds a matrix, reducing every entry.
    pub fn new(m: Modulus, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, got: entries.len() });
        }
        let entries = entries.into_iter().map(|x| m.reduce(x)).collect();
        Ok(Self { m, rows, cols, entries })
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(m: Modulus, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: r.len() });
            }
            entries.extend(r.iter().map(|&x| m.reduce(x)));
        }
        Ok(Self { m, rows: rows.len(), cols, entries })
    }

    pub fn zeros(m: Modulus, rows: usize, cols: usize) -> Self {
        Self { m, rows, cols, entries: vec![0; rows * cols] }
    }

    /// The `0 x cols` matrix, generator of the zero module.
    pub fn empty(m: Modulus, cols: usize) -> Self {
        Self::zeros(m, 0, cols)
    }

    pub fn identity(m: Modulus, n: usize) -> Self {
        let mut a = Self::zeros(m, n, n);
        for i in 0..n {
            a.entries[i * n + i] = 1;
        }
        a
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.entries[i * self.cols + j] = self.m.reduce(x);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.row_iter().map(<[u64]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.m, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Matrix product over the common modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.m != other.m {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.m, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u128;
                for l in 0..self.cols {
                    acc += self.get(i, l) as u128 * other.get(l, j) as u128;
                }
                out.entries[i * other.cols + j] = (acc % self.m.value() as u128) as u64;
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols || self.m != other.m {
            return Err(Error::ShapeMismatch("vstack of incompatible matrices".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self { m: self.m, rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Columns reordered so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.m, self.rows, perm.len());
        for i in 0..self.rows {
            for (j, &src) in perm.iter().enumerate() {
                out.entries[i * perm.len() + j] = self.get(i, src);
            }
        }
        out
    }

    /// Same integer entries read under another modulus.
    pub fn with_modulus(&self, m: Modulus) -> Self {
        Self { m, rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|&x| m.reduce(x)).collect() }
    }

    /// Whether `v` lies in the row span; `self` must be in Howell form.
    pub fn howell_contains(&self, v: &[u64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|&x| self.m.reduce(x)).collect();
        reduce_by_howell(self, &mut w)
    }

    /// Every element of the row span, for tiny modules only.
    pub fn span_elements(&self) -> Vec<Vec<u64>> {
        let h = howell_form(self);
        let mut out = vec![vec![0u64; self.cols]];
        for (i, row) in h.row_iter().enumerate() {
            let order = self.m.p_pow(self.m.mu - h.pivot_valuation(i));
            let mut next = Vec::with_capacity(out.len() * order as usize);
            for base in &out {
                for c in 0..order {
                    next.push(base.iter().zip(row).map(|(&b, &r)| self.m.add(b, self.m.mul(c, r))).collect());
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Column of the first nonzero entry of row `i`.
    pub fn pivot_col(&self, i: usize) -> Option<usize> {
        self.row(i).iter().position(|&x| x != 0)
    }

    /// Valuation of the leading entry of row `i`.
    pub fn pivot_valuation(&self, i: usize) -> u32 {
        self.pivot_col(i).map_or(self.m.mu, |c| self.m.valuation(self.get(i, c)))
    }
}

/// Reduces `w` in place by a Howell basis and reports whether it reached zero.
fn reduce_by_howell(h: &ResidueMatrix, w: &mut [u64]) -> bool {
    let m = h.m;
    for i in 0..h.rows {
        let Some(c) = h.pivot_col(i) else { continue };
        if w[c] == 0 {
            continue;
        }
        let pv = h.get(i, c);
        if !w[c].is_multiple_of(pv) {
            return false;
        }
        let q = w[c] / pv;
        for (x, &r) in w.iter_mut().zip(h.row(i)) {
            *x = m.sub(*x, m.mul(q, r));
        }
    }
    w.iter().all(|&x| x == 0)
}

fn scale_row(m: Modulus, row: &mut [u64], s: u64) {
    for x in row.iter_mut() {
        *x = m.mul(*x, s);
    }
}

fn axpy(m: Modulus, dst: &mut [u64], q: u64, src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = m.sub(*d, m.mul(q, s));
    }
}

/// The Howell canonical form: echelon rows, each pivot normalized to `p^v`,
/// entries above a pivot reduced into `0..p^v`, and closed under the
/// annihilator multiples `p^(mu-v) * row`. Zero rows are dropped.
pub fn howell_form(a: &ResidueMatrix) -> ResidueMatrix {
    let m = a.m;
    let n = a.cols;
    let mut work: Vec<Vec<u64>> = a.row_iter().filter(|r| r.iter().any(|&x| x != 0)).map(<[u64]>::to_vec).collect();
    let mut out: Vec<(usize, Vec<u64>)> = Vec::new();
    for c in 0..n {
        let best = work.iter().enumerate().filter(|(_, r)| r[c] != 0).min_by_key(|(_, r)| m.valuation(r[c])).map(|(i, _)| i);
        let Some(idx) = best else { continue };
        let mut piv = work.swap_remove(idx);
        let (v, u) = m.split(piv[c]);
        scale_row(m, &mut piv, m.inv(u).expect("unit part is invertible"));
        let pv = m.p_pow(v);
        for r in work.iter_mut() {
            if r[c] != 0 {
                let q = r[c] / pv;
                axpy(m, r, q, &piv);
            }
        }
        if v > 0 {
            let mut closure = piv.clone();
            scale_row(m, &mut closure, m.p_pow(m.mu - v));
            work.push(closure);
        }
        work.retain(|r| r.iter().any(|&x| x != 0));
        out.push((c, piv));
    }
    for i in 0..out.len() {
        let (c, pivot_row) = (out[i].0, out[i].1.clone());
        let pv = pivot_row[c];
        for (_, row) in out.iter_mut().take(i) {
            if row[c] >= pv {
                let q = row[c] / pv;
                axpy(m, row, q, &pivot_row);
            }
        }
    }
    let entries = out.iter().flat_map(|(_, r)| r.iter().copied()).collect();
    ResidueMatrix { m, rows: out.len(), cols: n, entries }
}

/// Howell basis of `{x : M x^T = 0}`.
pub fn kernel(a: &ResidueMatrix) -> ResidueMatrix {
    let (r, n) = (a.rows, a.cols);
    let width = r + n;
    let mut aug = ResidueMatrix::zeros(a.m, n, width);
    for j in 0..n {
        for i in 0..r {
            aug.entries[j * width + i] = a.get(i, j);
        }
        aug.entries[j * width + r + j] = 1;
    }
    let h = howell_form(&aug);
    let rows: Vec<Vec<u64>> = h.row_iter().filter(|row| row[..r].iter().all(|&x| x == 0)).map(|row| row[r..].to_vec()).collect();
    howell_form(&ResidueMatrix::from_rows(a.m, n, &rows).expect("consistent widths"))
}

/// `log_p` of the size of the row span.
pub fn span_log(a: &ResidueMatrix) -> u32 {
    let h = howell_form(a);
    (0..h.rows).map(|i| a.m.mu - h.pivot_valuation(i)).sum()
}

/// Size of the row span, `p^(sum of (mu - v_i))` over the Howell pivots.
pub fn span_cardinality(a: &ResidueMatrix) -> BigUint {
    BigUint::from(a.m.p).pow(span_log(a))
}

/// Rank of a matrix over the prime field (`mu = 1`).
pub fn field_rank(a: &ResidueMatrix) -> usize {
    howell_form(a).rows
}

/// `G <> H^T = A1 A2^T + gamma B1 B2^T`, where the first `n1` columns of
/// each operand form the `A` block over `Z_{p^mu}` and the remaining columns
/// form the `B` block, read mod `p^(mu-1)`.
pub fn diamond(g: &ResidueMatrix, h: &ResidueMatrix, n1: usize, gamma: u64) -> Result<ResidueMatrix> {
    if g.cols != h.cols || n1 > g.cols || g.m != h.m {
        return Err(Error::ShapeMismatch(format!("split at {n1} of {} and {} columns", g.cols, h.cols)));
    }
    let m = g.m;
    if m.mu < 2 && n1 < g.cols {
        return Err(Error::Unsupported("lo block needs mu >= 2".into()));
    }
    let lo = m.lower();
    let mut out = ResidueMatrix::zeros(m, g.rows, h.rows);
    for i in 0..g.rows {
        for j in 0..h.rows {
            let (gi, hj) = (g.row(i), h.row(j));
            let a: u128 = (0..n1).map(|c| gi[c] as u128 * hj[c] as u128).sum();
            let b: u128 = (n1..g.cols).map(|c| lo.reduce(gi[c]) as u128 * lo.reduce(hj[c]) as u128).sum();
            let b = (b % lo.value() as u128) as u64;
            out.set(i, j, m.add((a % m.value() as u128) as u64, m.mul(gamma, b)));
        }
    }
    Ok(out)
}

/// `A B^T + B A^T` over the prime field.
pub fn symmetrize(a: &ResidueMatrix, b: &ResidueMatrix) -> Result<ResidueMatrix> {
    if a.rows != b.rows || a.cols != b.cols || a.m != b.m {
        return Err(Error::ShapeMismatch("symmetrize needs equal shapes".into()));
    }
    let abt = a.mul(&b.transpose())?;
    let bat = b.mul(&a.transpose())?;
    let entries = abt.entries.iter().zip(&bat.entries).map(|(&x, &y)| a.m.add(x, y)).collect();
    ResidueMatrix::new(a.m, a.rows, a.rows, entries)
}

/// Number of `X` with `A X = J` for a full-row-rank `s x n` matrix `A` over
/// `F_q`: `q^((n-s) l)` where `l` is the column count of `J`.
pub fn count_solutions(a: &ResidueMatrix, j: &ResidueMatrix) -> Result<BigUint> {
    if a.rows != j.rows || a.m != j.m {
        return Err(Error::ShapeMismatch("A and J need the same row count".into()));
    }
    if a.m.mu != 1 {
        return Err(Error::Unsupported("count_solutions works over a prime field".into()));
    }
    if field_rank(a) != a.rows {
        return Err(Error::RankDeficient);
    }
    Ok(BigUint::from(a.m.p).pow(((a.cols - a.rows) * j.cols) as u32))
}

/// Exhaustive count of `X` with `A X = J`; exponential, test sizes only.
pub fn count_solutions_brute(a: &ResidueMatrix, j: &ResidueMatrix) -> Result<u64> {
    if a.rows != j.rows || a.m != j.m {
        return Err(Error::ShapeMismatch("A and J need the same row count".into()));
    }
    let (n, l) = (a.cols, j.cols);
    let q = a.m.value();
    let total = q.pow((n * l) as u32);
    let mut count = 0;
    for code in 0..total {
        let mut x = ResidueMatrix::zeros(a.m, n, l);
        let mut c = code;
        for e in x.entries.iter_mut() {
            *e = c % q;
            c /= q;
        }
        if a.mul(&x)? == *j {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(p: u64, mu: u32) -> Modulus {
        Modulus::new(p, mu).unwrap()
    }

    fn mat(m: Modulus, rows: &[&[u64]]) -> ResidueMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ResidueMatrix::from_rows(m, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn howell_examples() {
        let m4 = md(2, 2);
        assert_eq!(howell_form(&mat(m4, &[&[1, 2], &[2, 0]])), mat(m4, &[&[1, 2]]));
        assert_eq!(howell_form(&mat(m4, &[&[2, 0], &[0, 2]])), mat(m4, &[&[2, 0], &[0, 2]]));
        assert_eq!(howell_form(&ResidueMatrix::zeros(m4, 3, 2)).rows, 0);
        let m9 = md(3, 2);
        assert_eq!(howell_form(&mat(m9, &[&[3, 1]])), mat(m9, &[&[3, 1], &[0, 3]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&mat(md(2, 2), &[&[2]])), mat(md(2, 2), &[&[2]]));
        assert_eq!(kernel(&ResidueMatrix::identity(md(3, 2), 3)).rows, 0);
        assert_eq!(kernel(&mat(md(3, 2), &[&[3, 0]])), mat(md(3, 2), &[&[3, 0], &[0, 1]]));
    }

    #[test]
    fn cardinality_examples() {
        let m9 = md(3, 2);
        assert_eq!(span_cardinality(&mat(m9, &[&[3, 0]])), BigUint::from(3u32));
        assert_eq!(span_cardinality(&ResidueMatrix::empty(m9, 2)), BigUint::from(1u32));
        assert_eq!(span_cardinality(&ResidueMatrix::identity(m9, 2)), BigUint::from(81u32));
    }

    #[test]
    fn diamond_examples() {
        let m9 = md(3, 2);
        let g = mat(m9, &[&[3, 0, 0, 0]]);
        assert_eq!(diamond(&g, &g, 2, 3).unwrap(), mat(m9, &[&[0]]));
        let g = mat(m9, &[&[1, 0, 1, 0]]);
        assert_eq!(diamond(&g, &g, 2, 3).unwrap(), mat(m9, &[&[4]]));
        let g = mat(m9, &[&[3, 6, 0, 0]]);
        assert_eq!(diamond(&g, &g, 2, 3).unwrap(), mat(m9, &[&[0]]));
        assert!(diamond(&g, &mat(m9, &[&[1, 2]]), 2, 3).is_err());
    }

    #[test]
    fn diamond_is_bilinear() {
        let m9 = md(3, 2);
        let rows: Vec<Vec<u64>> = vec![vec![1, 4, 2, 1], vec![3, 8, 0, 2], vec![5, 5, 1, 1]];
        let one = |r: &Vec<u64>| mat(m9, &[r]);
        let h = one(&rows[2]);
        let sum: Vec<u64> = rows[0].iter().zip(&rows[1]).map(|(&a, &b)| m9.add(m9.mul(2, a), b)).collect();
        let lhs = diamond(&one(&sum), &h, 2, 3).unwrap().get(0, 0);
        let a = diamond(&one(&rows[0]), &h, 2, 3).unwrap().get(0, 0);
        let b = diamond(&one(&rows[1]), &h, 2, 3).unwrap().get(0, 0);
        assert_eq!(lhs, m9.add(m9.mul(2, a), b));
    }

    #[test]
    fn symmetrize_examples() {
        let f3 = md(3, 1);
        assert_eq!(symmetrize(&mat(f3, &[&[1, 0]]), &mat(f3, &[&[0, 1]])).unwrap(), mat(f3, &[&[0]]));
        assert_eq!(symmetrize(&mat(f3, &[&[1, 0]]), &mat(f3, &[&[1, 0]])).unwrap(), mat(f3, &[&[2]]));
        let i2 = ResidueMatrix::identity(f3, 2);
        assert_eq!(symmetrize(&i2, &i2).unwrap(), mat(f3, &[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn count_solution_examples() {
        let f3 = md(3, 1);
        let one = BigUint::from(1u32);
        assert_eq!(count_solutions(&mat(f3, &[&[1, 0]]), &mat(f3, &[&[0]])).unwrap(), BigUint::from(3u32));
        assert_eq!(count_solutions(&ResidueMatrix::identity(f3, 2), &mat(f3, &[&[2], &[1]])).unwrap(), one);
        let a = mat(f3, &[&[1, 0, 0]]);
        let j = mat(f3, &[&[1]]);
        assert_eq!(count_solutions(&a, &j).unwrap(), BigUint::from(9u32));
        assert_eq!(count_solutions_brute(&a, &j).unwrap(), 9);
        assert_eq!(count_solutions(&mat(f3, &[&[1, 1], &[2, 2]]), &mat(f3, &[&[0], &[0]])), Err(Error::RankDeficient));
    }
}
