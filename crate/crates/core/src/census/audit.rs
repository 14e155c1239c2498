//! Closed-form counters checked against the census.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::census::{census_count, CensusReport, Predicate};
use crate::counting::{count_lcd_mixed, nonzero, CountSpec, ThetaVariant, SELECTED_THETA};
use crate::error::Result;
use crate::mixedcode::{CodeType, MixedAmbient};

/// One ambient and predicate of the audit grid, with the published count of
/// non-zero codes where one exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub p: u64,
    pub mu: u32,
    pub n1: usize,
    pub n2: usize,
    pub predicate: Predicate,
    pub published_nonzero: Option<u64>,
}

const fn point(p: u64, mu: u32, n: usize, predicate: Predicate, published_nonzero: Option<u64>) -> GridPoint {
    GridPoint { p, mu, n1: n, n2: n, predicate, published_nonzero }
}

/// The default grid.
pub const GRID: [GridPoint; 7] = [
    point(3, 2, 2, Predicate::SelfOrthogonal, Some(5)),
    point(3, 2, 3, Predicate::SelfOrthogonal, Some(2635)),
    point(5, 2, 2, Predicate::SelfDual, Some(22)),
    point(5, 3, 2, Predicate::SelfDual, Some(172)),
    point(3, 3, 2, Predicate::SelfOrthogonal, Some(499)),
    point(2, 2, 2, Predicate::Lcd, Some(113)),
    point(3, 2, 2, Predicate::Lcd, Some(883)),
];

/// The point added by the extended tier.
pub const EXTENDED: GridPoint = point(3, 3, 3, Predicate::SelfOrthogonal, Some(2064151));

/// The ambient on which the `Theta_mu` variants are compared.
pub const THETA_AMBIENT: (u64, u32, usize, usize) = (3, 4, 2, 2);

/// Formula against census at one grid point. Self-dual totals count codes
/// directly; the other totals include the zero code on both sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditLine {
    pub ambient: MixedAmbient,
    pub predicate: Predicate,
    #[serde(with = "crate::census::decimal")]
    pub formula: BigUint,
    #[serde(with = "crate::census::decimal")]
    pub census: BigUint,
    pub matches: bool,
    pub published_nonzero: Option<u64>,
    pub published_agrees: Option<bool>,
}

/// How one `Theta_mu` variant fares on [`THETA_AMBIENT`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaCheck {
    pub variant: ThetaVariant,
    /// Count for the probe type, or the error it raised.
    pub probe_count: std::result::Result<String, String>,
    pub probe_census: u64,
    pub total: std::result::Result<String, String>,
    pub census_total: u64,
    /// Types where the variant fails or disagrees with the census.
    pub mismatched_types: Vec<CodeType>,
    pub reconciles: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub lines: Vec<AuditLine>,
    pub theta_probe_type: CodeType,
    pub theta: Vec<ThetaCheck>,
    /// First variant reconciling every type, if any.
    pub selected: Option<ThetaVariant>,
}

impl AuditReport {
    /// True when every grid point matches and the audit picks the variant
    /// the counters use.
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.matches) && self.selected == Some(SELECTED_THETA)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["ambient", "predicate", "formula", "census", "matches", "published_nonzero", "published_agrees"])
            .expect("in-memory write");
        let opt = |x: Option<String>| x.unwrap_or_default();
        for l in &self.lines {
            w.write_record([
                l.ambient.to_string(),
                l.predicate.name().to_string(),
                l.formula.to_string(),
                l.census.to_string(),
                l.matches.to_string(),
                opt(l.published_nonzero.map(|x| x.to_string())),
                opt(l.published_agrees.map(|x| x.to_string())),
            ])
            .expect("in-memory write");
        }
        for t in &self.theta {
            let show = |r: &std::result::Result<String, String>| r.clone().unwrap_or_else(|e| format!("error: {e}"));
            w.write_record([
                format!("theta {}", t.variant.name()),
                format!("{}", self.theta_probe_type),
                show(&t.total),
                t.census_total.to_string(),
                t.reconciles.to_string(),
                show(&t.probe_count),
                t.probe_census.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// Closed-form total for a grid point.
pub fn formula_total(amb: &MixedAmbient, pred: Predicate) -> Result<BigUint> {
    let (n1, n2) = (amb.n1 as u32, amb.n2 as u32);
    match pred {
        Predicate::Lcd => count_lcd_mixed(n1, n2, amb.p, amb.mu),
        Predicate::SelfDual => CountSpec::new(amb.p, amb.mu, n1, n2)?.count_sd_total(),
        Predicate::SelfOrthogonal => CountSpec::new(amb.p, amb.mu, n1, n2)?.count_so_total(),
        Predicate::All => Err(crate::error::Error::Unsupported("no closed form for the whole lattice".into())),
    }
}

/// Formula and census at one point.
pub fn audit_point(g: &GridPoint, budget: u128) -> Result<AuditLine> {
    let amb = MixedAmbient::new(g.p, g.mu, g.n1, g.n2)?;
    let formula = formula_total(&amb, g.predicate)?;
    let census = census_count(amb, g.predicate, budget)?.total;
    let census_nonzero = if g.predicate == Predicate::SelfDual { census.clone() } else { nonzero(&census) };
    Ok(AuditLine {
        ambient: amb,
        predicate: g.predicate,
        matches: formula == census,
        formula,
        published_agrees: g.published_nonzero.map(|x| census_nonzero == BigUint::from(x)),
        published_nonzero: g.published_nonzero,
        census,
    })
}

fn as_u64(x: &BigUint) -> u64 {
    u64::try_from(x).expect("census counts fit in u64")
}

/// Compares every `Theta_mu` variant with a census of self-orthogonal codes
/// over an ambient with `mu >= 4`.
pub fn theta_checks(census: &CensusReport, probe: &CodeType) -> Result<Vec<ThetaCheck>> {
    let amb = census.ambient;
    let spec = CountSpec::new(amb.p, amb.mu, amb.n1 as u32, amb.n2 as u32)?;
    let mut out = Vec::new();
    for variant in ThetaVariant::ALL {
        let mut mismatched = Vec::new();
        for t in spec.index_types() {
            match spec.count_so_typed_with(&t, variant) {
                Ok(n) if n == census.count_of(&t) => {}
                _ => mismatched.push(t),
            }
        }
        let probe_count = spec.count_so_typed_with(probe, variant).map(|n| n.to_string()).map_err(|e| e.to_string());
        let total = spec.count_so_total_with(variant).map(|n| n.to_string()).map_err(|e| e.to_string());
        out.push(ThetaCheck {
            variant,
            probe_count,
            probe_census: as_u64(&census.count_of(probe)),
            reconciles: mismatched.is_empty() && total.as_deref() == Ok(census.total.to_string().as_str()),
            total,
            census_total: as_u64(&census.total),
            mismatched_types: mismatched,
        });
    }
    Ok(out)
}

/// Runs the grid, plus the extended point when asked, and the `Theta_mu`
/// comparison.
pub fn audit(budget: u128, extended: bool) -> Result<AuditReport> {
    let mut points = GRID.to_vec();
    if extended {
        points.push(EXTENDED);
    }
    let lines = points.iter().map(|g| audit_point(g, budget)).collect::<Result<Vec<_>>>()?;
    let (p, mu, n1, n2) = THETA_AMBIENT;
    let census = census_count(MixedAmbient::new(p, mu, n1, n2)?, Predicate::SelfOrthogonal, budget)?;
    let probe = CodeType { ks: vec![0, 0, 0, 1], ls: vec![0, 0, 1] };
    let theta = theta_checks(&census, &probe)?;
    let selected = theta.iter().find(|t| t.reconciles).map(|t| t.variant);
    Ok(AuditReport { lines, theta_probe_type: probe, theta, selected })
}
