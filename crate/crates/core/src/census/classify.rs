//! Orbits of codes under monomial-type equivalence.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::additive::{plotkin_achieved, AdditiveCode, MonomialMatrix};
use crate::census::{enumerate_matching, Predicate};
use crate::error::{Error, Result};
use crate::mixedcode::{CodeType, MixedAmbient, MixedCode};
use crate::ringcore::{units, EisensteinParams};

/// Every monomial-type matrix of size `n` over `R_e`.
#[derive(Clone, Debug)]
pub struct EquivalenceGroup {
    pub params: EisensteinParams,
    pub n: usize,
    pub elements: Vec<MonomialMatrix>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for i in (0..n).filter(|i| !p.contains(i)) {
                let mut q = p.clone();
                q.push(i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn tuples(alphabet: &[u64], n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            for &a in alphabet {
                let mut u = t.clone();
                u.push(a);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

impl EquivalenceGroup {
    pub fn new(params: &EisensteinParams, n: usize) -> Result<Self> {
        let scalings = tuples(&units(params.hi_modulus()), n);
        let mut elements = Vec::with_capacity(scalings.len());
        for perm in permutations(n) {
            for s in &scalings {
                elements.push(MonomialMatrix::new(perm.clone(), s.clone(), params.hi_modulus())?);
            }
        }
        Ok(Self { params: params.clone(), n, elements })
    }

    /// The group of `Z_{p^mu}[y]/<y^2 - p, p^(mu-1) y>`, whose image
    /// ambients have `n1 = n2 = n`.
    pub fn for_ambient(amb: &MixedAmbient) -> Result<Self> {
        if amb.n1 != amb.n2 {
            return Err(Error::Unsupported(format!("{amb} is not the image of a length-n code over a two-coordinate ring")));
        }
        Self::new(&EisensteinParams::new(amb.p, amb.mu, 1, 2, 1, None)?, amb.n1)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn check(&self, c: &MixedCode) -> Result<()> {
        let amb = c.ambient;
        if amb.p != self.params.p
            || amb.mu != self.params.e
            || amb.n1 != self.n * self.params.hi_len()
            || amb.n2 != self.n * self.params.lo_len()
        {
            return Err(Error::ShapeMismatch(format!("{amb} does not match the group context")));
        }
        Ok(())
    }

    /// All images of `c`, duplicates included.
    fn images(&self, c: &MixedCode) -> Vec<MixedCode> {
        let a = AdditiveCode { params: self.params.clone(), n: self.n, image: c.clone() };
        self.elements.iter().map(|u| a.monomial_image(u).expect("checked context").image).collect()
    }

    /// The distinct codes equivalent to `c`, sorted.
    pub fn orbit(&self, c: &MixedCode) -> Result<Vec<MixedCode>> {
        self.check(c)?;
        let mut v = self.images(c);
        v.sort();
        v.dedup();
        Ok(v)
    }

    /// The least code equivalent to `c` under the order on Howell bases.
    pub fn canonical_rep(&self, c: &MixedCode) -> Result<MixedCode> {
        self.check(c)?;
        Ok(self.images(c).into_iter().min().expect("the group is nonempty"))
    }
}

/// One orbit meeting the predicate class. Unit scalings need not preserve
/// the Euclidean form, so an orbit may leave the class; the representative
/// is its least member inside the class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub generators: Vec<Vec<u64>>,
    #[serde(rename = "type")]
    pub code_type: CodeType,
    /// Number of codes in the whole orbit.
    pub size: usize,
    /// Number of orbit members satisfying the predicate.
    pub class_size: usize,
    #[serde(with = "crate::census::decimal")]
    pub cardinality: BigUint,
    pub hom_distance: Option<u64>,
    pub plotkin: Option<bool>,
}

/// Orbit representatives of the codes matching a predicate, sorted by
/// basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub ambient: MixedAmbient,
    pub predicate: Predicate,
    pub nonzero: bool,
    pub group_order: usize,
    pub codes: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Number of orbits per homogeneous distance, ascending.
    pub fn by_distance(&self) -> Vec<(u64, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for o in &self.orbits {
            if let Some(d) = o.hom_distance {
                *m.entry(d).or_insert(0) += 1;
            }
        }
        m.into_iter().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["ambient", "predicate", "generators", "k", "l", "size", "class_size", "cardinality", "hom_distance", "plotkin"])
            .expect("in-memory write");
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let opt = |x: Option<String>| x.unwrap_or_default();
        for o in &self.orbits {
            let gens =
                o.generators.iter().map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ");
            w.write_record([
                self.ambient.to_string(),
                self.predicate.name().to_string(),
                gens,
                join(&o.code_type.ks),
                join(&o.code_type.ls),
                o.size.to_string(),
                o.class_size.to_string(),
                o.cardinality.to_string(),
                opt(o.hom_distance.map(|d| d.to_string())),
                opt(o.plotkin.map(|b| b.to_string())),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// Classifies the codes of `amb` satisfying `pred` up to equivalence under
/// `group`. With `nonzero`, the zero code is left out.
pub fn classify(amb: MixedAmbient, pred: Predicate, group: &EquivalenceGroup, nonzero: bool, budget: u128) -> Result<OrbitReport> {
    group.check(&MixedCode::zero(amb))?;
    let codes: Vec<MixedCode> = enumerate_matching(amb, pred, budget)?.into_iter().filter(|c| !nonzero || !c.is_zero()).collect();
    let hom = amb.mu == 2 && group.params.is_rp_family();
    let mut seen: HashSet<MixedCode> = HashSet::new();
    let mut classes = Vec::new();
    for c in &codes {
        if seen.contains(c) {
            continue;
        }
        let orbit = group.orbit(c)?;
        let members: Vec<&MixedCode> = orbit.iter().filter(|d| pred.holds(d) && (!nonzero || !d.is_zero())).collect();
        classes.push((members[0].clone(), orbit.len(), members.len()));
        seen.extend(orbit.iter().cloned());
    }
    classes.sort();
    let mut orbits = Vec::with_capacity(classes.len());
    for (rep, size, class_size) in classes {
        let (hom_distance, plotkin) = if hom && !rep.is_zero() {
            let d = rep.min_hom_distance()?;
            let plotkin = match u64::try_from(rep.cardinality()) {
                Ok(m) if m >= 2 => Some(plotkin_achieved(amb.p, group.n as u64, m, d)?),
                _ => None,
            };
            (Some(d), plotkin)
        } else {
            (None, None)
        };
        orbits.push(Orbit {
            generators: rep.generator_rows(),
            code_type: rep.type_of(),
            size,
            class_size,
            cardinality: rep.cardinality(),
            hom_distance,
            plotkin,
        });
    }
    Ok(OrbitReport { ambient: amb, predicate: pred, nonzero, group_order: group.order(), codes: codes.len(), orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::DEFAULT_BUDGET;

    fn z9z3() -> MixedAmbient {
        MixedAmbient::new(3, 2, 2, 2).unwrap()
    }

    #[test]
    fn group_order() {
        assert_eq!(EquivalenceGroup::for_ambient(&z9z3()).unwrap().order(), 72);
        assert!(EquivalenceGroup::for_ambient(&MixedAmbient::new(3, 2, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn canonical_rep_examples() {
        let g = EquivalenceGroup::for_ambient(&z9z3()).unwrap();
        let a = MixedCode::from_int_rows(z9z3(), &[vec![3, 6, 0, 0]]).unwrap();
        let b = MixedCode::from_int_rows(z9z3(), &[vec![6, 3, 0, 0]]).unwrap();
        assert_eq!(g.canonical_rep(&a).unwrap(), g.canonical_rep(&b).unwrap());
        let z = MixedCode::zero(z9z3());
        assert_eq!(g.canonical_rep(&z).unwrap(), z);
        let other = MixedCode::zero(MixedAmbient::new(3, 3, 2, 2).unwrap());
        assert!(g.canonical_rep(&other).is_err());
    }

    #[test]
    fn self_orthogonal_orbits() {
        let g = EquivalenceGroup::for_ambient(&z9z3()).unwrap();
        let r = classify(z9z3(), Predicate::SelfOrthogonal, &g, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.orbit_count(), 3);
        assert_eq!(r.by_distance(), vec![(9, 2), (18, 1)]);
        assert_eq!(r.orbits.iter().map(|o| o.class_size).sum::<usize>(), r.codes);
        assert!(r.orbits.iter().all(|o| 72 % o.size == 0));
    }

    #[test]
    fn lcd_orbits() {
        let g = EquivalenceGroup::for_ambient(&z9z3()).unwrap();
        let r = classify(z9z3(), Predicate::Lcd, &g, true, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.codes, r.orbit_count()), (883, 203));
        assert_eq!(r.by_distance(), vec![(6, 114), (9, 48), (12, 38), (15, 3)]);
        let z4z2 = MixedAmbient::new(2, 2, 2, 2).unwrap();
        let g = EquivalenceGroup::for_ambient(&z4z2).unwrap();
        let r = classify(z4z2, Predicate::Lcd, &g, true, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.codes, r.orbit_count()), (113, 61));
        assert_eq!(r.by_distance(), vec![(2, 45), (4, 14), (6, 2)]);
    }
}
