//! Brute-force ground truth: exhaustive census, orbit classification,
//! self-orthogonal lifts, and the formula audit.

pub mod audit;
pub mod classify;
mod enumerate;
pub mod lift;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixedcode::{CodeType, MixedAmbient, MixedCode};

pub use enumerate::{enumerate_by_closure, enumerate_codes, enumerate_matching, fold_codes};

/// Default cap on the ambient size a census may walk.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "CHAINCODE_BUDGET";

/// The budget from `CHAINCODE_BUDGET`, or the default.
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Fails when the ambient has more elements than `budget`.
pub fn check_budget(amb: &MixedAmbient, budget: u128) -> Result<()> {
    let needed = amb.cardinality_u128();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Which codes a census keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    All,
    SelfOrthogonal,
    SelfDual,
    Lcd,
}

impl Predicate {
    pub fn holds(self, c: &MixedCode) -> bool {
        match self {
            Predicate::All => true,
            Predicate::SelfOrthogonal => c.is_self_orthogonal(),
            Predicate::SelfDual => c.is_self_dual(),
            Predicate::Lcd => c.is_lcd(),
        }
    }

    /// Whether the search may prune to self-orthogonal codes.
    pub fn implies_self_orthogonal(self) -> bool {
        matches!(self, Predicate::SelfOrthogonal | Predicate::SelfDual)
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::All => "all",
            Predicate::SelfOrthogonal => "self_orthogonal",
            Predicate::SelfDual => "self_dual",
            Predicate::Lcd => "lcd",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Predicate::All),
            "so" | "self_orthogonal" => Ok(Predicate::SelfOrthogonal),
            "sd" | "self_dual" => Ok(Predicate::SelfDual),
            "lcd" | "acd" => Ok(Predicate::Lcd),
            other => Err(Error::Parse(format!("unknown predicate {other}"))),
        }
    }
}

/// Serde helpers writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Count of codes of one type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCount {
    pub k: Vec<u32>,
    pub l: Vec<u32>,
    #[serde(with = "decimal")]
    pub count: BigUint,
}

/// Result of a census.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub ambient: MixedAmbient,
    pub predicate: Predicate,
    #[serde(with = "decimal")]
    pub total: BigUint,
    pub by_type: Vec<TypeCount>,
    /// Wall time of the walk; left out of serialized reports.
    #[serde(skip_serializing, default)]
    pub elapsed_secs: f64,
}

impl CensusReport {
    /// Count for one type, zero when absent.
    pub fn count_of(&self, t: &CodeType) -> BigUint {
        self.by_type.iter().find(|c| c.k == t.ks && c.l == t.ls).map_or_else(BigUint::default, |c| c.count.clone())
    }

    /// The same census with the zero code left out, if it was counted.
    pub fn without_zero(&self) -> Self {
        let mut out = self.clone();
        let zero = CodeType::zero(self.ambient.mu);
        if let Some(i) = out.by_type.iter().position(|c| c.k == zero.ks && c.l == zero.ls) {
            out.by_type[i].count -= 1u32;
            out.total -= 1u32;
            if out.by_type[i].count == BigUint::default() {
                out.by_type.remove(i);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// CSV with one row per type; the total is the sum of the counts.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["ambient", "predicate", "k", "l", "count"]).expect("in-memory write");
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        for t in &self.by_type {
            let amb = self.ambient.to_string();
            w.write_record([amb.as_str(), self.predicate.name(), &join(&t.k), &join(&t.l), &t.count.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// Counts the codes of `amb` satisfying `pred`, split by type.
pub fn census_count(amb: MixedAmbient, pred: Predicate, budget: u128) -> Result<CensusReport> {
    let start = Instant::now();
    let map = fold_codes(
        amb,
        pred.implies_self_orthogonal(),
        budget,
        BTreeMap::<CodeType, u64>::new,
        |a, c| {
            if pred.holds(c) {
                *a.entry(c.type_of()).or_default() += 1;
            }
        },
        |mut a, b| {
            for (t, n) in b {
                *a.entry(t).or_default() += n;
            }
            a
        },
    )?;
    let total: u64 = map.values().sum();
    Ok(CensusReport {
        ambient: amb,
        predicate: pred,
        total: BigUint::from(total),
        by_type: map.into_iter().map(|(t, n)| TypeCount { k: t.ks, l: t.ls, count: BigUint::from(n) }).collect(),
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}
