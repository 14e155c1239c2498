//! Self-orthogonal lifts from the `(mu-2)`-ladder to the `mu`-ladder.
//!
//! A code `C` over `Z_{p^mu} + Z_{p^(mu-1)}` lies over the code
//! `{w : p w in C}` reduced mod `p^(mu-2)`, whose torsion tower is that of
//! `C` shifted down by one. The lifts of a code `L` of a given type are the
//! self-orthogonal codes of that type lying over `L`; they are found by
//! walking the self-orthogonal census of the upper ambient, independently of
//! any counting formula.

use std::collections::BTreeMap;

use crate::census::fold_codes;
use crate::counting::{contract, in_k_set};
use crate::error::{Error, Result};
use crate::mixedcode::{CodeType, MixedAmbient, MixedCode, MixedWord};
use crate::modmatrix::ResidueMatrix;

/// The ambient two steps down the ladder.
pub fn lower_ambient(amb: &MixedAmbient) -> Result<MixedAmbient> {
    if amb.mu < 4 {
        return Err(Error::InvalidParams(format!("lifts need mu >= 4, got {}", amb.mu)));
    }
    MixedAmbient::new(amb.p, amb.mu - 2, amb.n1, amb.n2)
}

/// The ambient two steps up the ladder.
pub fn upper_ambient(amb: &MixedAmbient) -> Result<MixedAmbient> {
    MixedAmbient::new(amb.p, amb.mu + 2, amb.n1, amb.n2)
}

/// The code `C` lies over: `{w : p w in C}` reduced mod `p^(mu-2)`.
pub fn reduce_code(c: &MixedCode) -> Result<MixedCode> {
    let amb = c.ambient;
    let lower = lower_ambient(&amb)?;
    let p = amb.p as i64;
    let mut gens = Vec::with_capacity(amb.len());
    for i in 0..amb.len() {
        let mut hi = vec![0i64; amb.n1];
        let mut lo = vec![0i64; amb.n2];
        if i < amb.n1 {
            hi[i] = p;
        } else {
            lo[i - amb.n1] = p;
        }
        gens.push(MixedWord::new(amb, &hi, &lo)?);
    }
    let meet = c.intersect(&MixedCode::from_generators(amb, &gens)?)?;
    let lm = lower.modulus();
    let rows: Vec<Vec<u64>> = meet.basis.row_iter().map(|r| r.iter().map(|&x| lm.reduce(x / amb.p)).collect()).collect();
    MixedCode::from_embedded(lower, &ResidueMatrix::from_rows(lm, amb.len(), &rows)?)
}

/// The contracted type `(k_0+k_1, k_2, ..., k_(mu-2); l_0+l_1, l_2, ..., l_(mu-3))`.
pub fn contracted_type(t: &CodeType) -> CodeType {
    CodeType { ks: contract(&t.ks, 1), ls: contract(&t.ls, 1) }
}

fn check_lift_request(lower: &MixedCode, target: &CodeType) -> Result<MixedAmbient> {
    let upper = upper_ambient(&lower.ambient)?;
    if !lower.is_self_orthogonal() {
        return Err(Error::InvalidParams("the base code is not self-orthogonal".into()));
    }
    let mu = upper.mu as usize;
    if target.ks.len() != mu || target.ls.len() + 1 != mu {
        return Err(Error::LengthMismatch { expected: mu, got: target.ks.len() });
    }
    if !in_k_set(upper.n1 as u32, &target.ks) || !in_k_set(upper.n2 as u32, &target.ls) {
        return Err(Error::InvalidParams(format!("type {target} lies outside the index sets")));
    }
    Ok(upper)
}

/// Every self-orthogonal code of type `target` over the ambient two steps
/// above `lower` that lies over `lower`, sorted.
pub fn lift_enumerate(lower: &MixedCode, target: &CodeType, budget: u128) -> Result<Vec<MixedCode>> {
    let upper = check_lift_request(lower, target)?;
    if contracted_type(target) != lower.type_of() {
        return Ok(Vec::new());
    }
    let mut out = fold_codes(
        upper,
        true,
        budget,
        Vec::new,
        |acc, c| {
            if &c.type_of() == target && reduce_code(c).as_ref() == Ok(lower) {
                acc.push(c.clone());
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    out.sort();
    Ok(out)
}

/// Number of lifts of every self-orthogonal code of the lower ambient to
/// every type over `upper`, keyed by (base code, target type).
pub fn lift_tally(upper: MixedAmbient, budget: u128) -> Result<BTreeMap<(MixedCode, CodeType), u64>> {
    lower_ambient(&upper)?;
    fold_codes(
        upper,
        true,
        budget,
        BTreeMap::new,
        |acc, c| {
            let base = reduce_code(c).expect("upper ambient has mu >= 4");
            *acc.entry((base, c.type_of())).or_insert(0) += 1;
        },
        |mut a, b| {
            for (key, n) in b {
                *a.entry(key).or_insert(0) += n;
            }
            a
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::DEFAULT_BUDGET;

    fn ty(k: &[u32], l: &[u32]) -> CodeType {
        CodeType { ks: k.to_vec(), ls: l.to_vec() }
    }

    #[test]
    fn zero_code_lifts() {
        let z = MixedCode::zero(MixedAmbient::new(3, 2, 2, 2).unwrap());
        let lifts = lift_enumerate(&z, &ty(&[0, 0, 0, 1], &[0, 0, 1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(lifts.len(), 48);
        assert!(lifts.iter().all(|c| c.is_self_orthogonal()));
        let trivial = lift_enumerate(&z, &ty(&[0; 4], &[0; 3]), DEFAULT_BUDGET).unwrap();
        assert_eq!(trivial, vec![MixedCode::zero(MixedAmbient::new(3, 4, 2, 2).unwrap())]);
    }

    #[test]
    fn reduction_shifts_the_type() {
        let amb = MixedAmbient::new(3, 4, 2, 2).unwrap();
        let c = MixedCode::from_int_rows(amb, &[vec![3, 0, 1, 0]]).unwrap();
        let t = c.type_of();
        assert_eq!(reduce_code(&c).unwrap().type_of(), contracted_type(&t));
    }

    #[test]
    fn bad_requests() {
        let amb = MixedAmbient::new(3, 2, 2, 2).unwrap();
        let not_so = MixedCode::from_int_rows(amb, &[vec![1, 0, 0, 0]]).unwrap();
        assert!(lift_enumerate(&not_so, &ty(&[0; 4], &[0; 3]), DEFAULT_BUDGET).is_err());
        let z = MixedCode::zero(amb);
        assert!(lift_enumerate(&z, &ty(&[0; 3], &[0; 2]), DEFAULT_BUDGET).is_err());
        assert!(lift_enumerate(&z, &ty(&[0, 0, 0, 3], &[0; 3]), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn tally_sums_to_census() {
        let t = lift_tally(MixedAmbient::new(3, 4, 2, 2).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.values().sum::<u64>(), 1066);
        assert!(t.keys().all(|(base, _)| base.is_self_orthogonal()));
    }
}
