//! Exhaustive checks shared by the property tests and the acceptance run.
//! Each check panics on the first violation.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigUint;

use chaincode::additive::{chi_orthogonal, plotkin_achieved, psi_word_inverse};
use chaincode::census::{enumerate_codes, DEFAULT_BUDGET};
use chaincode::counting::{lcd_field_count, sigma};
use chaincode::mixedcode::inner_product;
use chaincode::modmatrix::{diamond, howell_form};
use chaincode::{AdditiveCode, AdditiveElement, EisensteinParams, MixedAmbient, MixedCode, ResidueMatrix, Side};

pub fn small_ambients() -> Vec<MixedAmbient> {
    vec![MixedAmbient::new(3, 2, 2, 2).unwrap(), MixedAmbient::new(2, 2, 2, 2).unwrap()]
}

pub fn all_codes(amb: MixedAmbient) -> Vec<MixedCode> {
    enumerate_codes(amb, DEFAULT_BUDGET).unwrap()
}

pub fn rp(p: u64) -> EisensteinParams {
    EisensteinParams::new(p, 2, 1, 2, 1, None).unwrap()
}

/// Involution, cardinality product, dual type and orthogonality of the dual.
pub fn check_duality(amb: MixedAmbient) {
    let whole = amb.cardinality();
    for c in all_codes(amb) {
        let d = c.dual();
        assert_eq!(d.dual(), c);
        assert_eq!(c.cardinality() * d.cardinality(), whole);
        assert_eq!(d.type_of(), c.type_of().dual_type(amb.n1, amb.n2));
        assert!(d.generators().iter().all(|w| c.generators().iter().all(|v| inner_product(w, v).unwrap() == 0)));
    }
}

/// `G <> G^T = 0` exactly when every generator lies in the dual.
pub fn check_diamond(amb: MixedAmbient) {
    for c in all_codes(amb) {
        let g = ResidueMatrix::from_rows(amb.modulus(), amb.len(), &c.generator_rows()).unwrap();
        let by_diamond = diamond(&g, &g, amb.n1, amb.p).unwrap().is_zero();
        let dual = c.dual();
        let by_containment = c.generators().iter().all(|w| dual.contains(w));
        assert_eq!(by_diamond, by_containment, "{:?}", c.generator_rows());
        assert_eq!(by_diamond, c.is_self_orthogonal());
    }
}

fn field_orthogonal(a: &ResidueMatrix, b: &ResidueMatrix, p: u64) -> bool {
    a.row_iter().all(|x| b.row_iter().all(|y| x.iter().zip(y).map(|(u, v)| u * v).sum::<u64>() % p == 0))
}

/// Torsion towers of self-orthogonal codes nest and pair off orthogonally.
pub fn check_torsion_nesting(amb: MixedAmbient) {
    let mu = amb.mu as usize;
    for c in all_codes(amb).into_iter().filter(MixedCode::is_self_orthogonal) {
        let x: Vec<_> = (1..=mu).map(|i| c.torsion(i, Side::X).unwrap()).collect();
        let y: Vec<_> = (1..mu).map(|i| c.torsion(i, Side::Y).unwrap()).collect();
        for i in 1..mu {
            assert!(howell_form(&x[i - 1].vstack(&x[i]).unwrap()) == x[i], "X towers nest");
        }
        for i in 2..mu {
            assert!(howell_form(&y[i - 2].vstack(&y[i - 1]).unwrap()) == y[i - 1], "Y towers nest");
        }
        for i in 1..=mu {
            assert!(field_orthogonal(&x[i - 1], &x[mu - i], amb.p), "Tor_{i} against Tor_{} on X", mu - i + 1);
        }
        for i in 1..=mu.div_ceil(2) {
            assert!(field_orthogonal(&x[i - 1], &x[i - 1], amb.p));
        }
        for i in 1..mu {
            assert!(field_orthogonal(&y[i - 1], &y[mu - 1 - i], amb.p), "Tor_{i} against Tor_{} on Y", mu - i);
        }
    }
}

/// The `chi` dual taken through the image equals the set of words `chi`
/// orthogonal to every generator.
pub fn check_chi_dual_direct(c: &AdditiveCode, words: &[Vec<AdditiveElement>]) {
    let gens: Vec<_> = c.image.generators().iter().map(|w| psi_word_inverse(&c.params, w).unwrap()).collect();
    let dual = c.chi_dual();
    let mut direct = 0u64;
    for d in words {
        if gens.iter().all(|g| chi_orthogonal(d, g).unwrap()) {
            direct += 1;
            assert!(dual.contains(d).unwrap());
        }
    }
    assert_eq!(BigUint::from(direct), dual.cardinality());
}

pub fn all_words(params: &EisensteinParams, n: usize) -> Vec<Vec<AdditiveElement>> {
    (0..n).map(|_| AdditiveElement::all(params)).multi_cartesian_product().collect()
}

/// Every code of `R_3^2`.
pub fn check_chi_dual_exhaustive() {
    let params = rp(3);
    let words = all_words(&params, 2);
    for image in all_codes(MixedAmbient::new(3, 2, 2, 2).unwrap()) {
        check_chi_dual_direct(&AdditiveCode::from_image(&params, 2, image).unwrap(), &words);
    }
}

/// Every subspace of `F_q^n` of dimension `s`, as a reduced row echelon
/// basis.
pub fn subspaces(q: u64, n: usize, s: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for pivots in (0..n).combinations(s) {
        let free: Vec<(usize, usize)> =
            (0..s).flat_map(|i| ((pivots[i] + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j))).collect();
        for values in (0..free.len()).map(|_| 0..q).multi_cartesian_product() {
            let mut basis = vec![vec![0; n]; s];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for (&(i, j), &v) in free.iter().zip(&values) {
                basis[i][j] = v;
            }
            out.push(basis);
        }
    }
    out
}

fn span(basis: &[Vec<u64>], q: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0; n]];
    for b in basis {
        out = out.iter().flat_map(|v| (0..q).map(move |m| v.iter().zip(b).map(|(x, y)| (x + m * y) % q).collect())).collect();
    }
    out
}

fn dot(a: &[u64], b: &[u64], q: u64) -> u64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<u64>() % q
}

/// Self-orthogonal and LCD subspace counts over `F_q` against a walk of
/// every subspace, `n <= 4`, `q` in {2, 3, 5}.
pub fn check_field_counts() {
    for q in [2u64, 3, 5] {
        for n in 1..=4usize {
            let mut total = 0;
            for s in 0..=n {
                let subs = subspaces(q, n, s);
                total += subs.len();
                let mut so = 0u64;
                let mut lcd = 0u64;
                for basis in &subs {
                    if basis.iter().all(|a| basis.iter().all(|b| dot(a, b, q) == 0)) {
                        so += 1;
                    }
                    if span(basis, q, n).iter().all(|a| a.iter().all(|&x| x == 0) || basis.iter().any(|b| dot(a, b, q) != 0)) {
                        lcd += 1;
                    }
                }
                let (nu, su) = (n as u32, s as u32);
                assert_eq!(lcd_field_count(nu, su, q).unwrap(), BigUint::from(lcd), "L_{q}({n},{s})");
                if q % 2 == 1 {
                    assert_eq!(sigma(nu, su, q).unwrap(), BigUint::from(so), "sigma_{q}({n},{s})");
                }
            }
            if (q, n) == (5, 4) {
                assert_eq!(total, 1 + 156 + 806 + 156 + 1);
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
pub enum Mark {
    None,
    SelfOrthogonal,
    Lcd,
}

/// One line of the table of Plotkin-optimal additive codes over `R_2`.
pub struct TableRow {
    pub generators: [&'static str; 2],
    pub n: usize,
    pub m: u64,
    pub d: u64,
    pub mark: Mark,
}

pub const TABLE: [TableRow; 10] = [
    TableRow { generators: ["2,2,0", "y,y,2"], n: 3, m: 4, d: 8, mark: Mark::SelfOrthogonal },
    TableRow { generators: ["2,2,0", "y,2+y,2"], n: 3, m: 4, d: 8, mark: Mark::SelfOrthogonal },
    TableRow { generators: ["2,y,y", "y,2+y,2"], n: 3, m: 4, d: 8, mark: Mark::Lcd },
    TableRow { generators: ["2,y,2+y", "y,2+y,2"], n: 3, m: 4, d: 8, mark: Mark::Lcd },
    TableRow { generators: ["2+y,y,2,2", "y,2,2+y,y"], n: 4, m: 4, d: 10, mark: Mark::Lcd },
    TableRow { generators: ["2+y,2,0,2", "y,y,2,2"], n: 4, m: 4, d: 10, mark: Mark::Lcd },
    TableRow { generators: ["2+y,y,2,y", "y,2+y,2,2"], n: 4, m: 4, d: 10, mark: Mark::None },
    TableRow { generators: ["0,2,2+y,2", "2,0,y,2"], n: 4, m: 4, d: 10, mark: Mark::None },
    TableRow { generators: ["2,y,y,y", "0,2,2,2+y"], n: 4, m: 4, d: 10, mark: Mark::None },
    TableRow { generators: ["2,0,2,2", "y,2,y,y"], n: 4, m: 4, d: 10, mark: Mark::None },
];

/// Reads `a`, `y`, `a+y` as the coefficient pair `(a, b)` of `a + b y`.
fn element(params: &EisensteinParams, s: &str) -> AdditiveElement {
    let (a, b) = match s.split_once('+') {
        Some((a, "y")) => (a.parse().unwrap(), 1),
        None if s == "y" => (0, 1),
        None => (s.parse().unwrap(), 0),
        _ => panic!("unexpected element {s}"),
    };
    AdditiveElement::from_coeffs(params, &[a, b]).unwrap()
}

pub fn table_code(row: &TableRow) -> AdditiveCode {
    let params = EisensteinParams::rp(2).unwrap();
    let words: Vec<Vec<AdditiveElement>> = row.generators.iter().map(|g| g.split(',').map(|s| element(&params, s)).collect()).collect();
    AdditiveCode::from_generators(&params, row.n, &words).unwrap()
}

pub fn check_table() {
    for row in &TABLE {
        let c = table_code(row);
        let label = row.generators.join(" / ");
        assert_eq!(c.cardinality(), row.m.into(), "{label}");
        assert_eq!(c.hom_distance().unwrap(), row.d, "{label}");
        assert!(plotkin_achieved(2, row.n as u64, row.m, row.d).unwrap(), "{label}");
        match row.mark {
            Mark::SelfOrthogonal => assert!(c.is_self_orthogonal(), "{label}"),
            Mark::Lcd => assert!(c.is_acd(), "{label}"),
            Mark::None => {}
        }
    }
}
