//! Pairwise verdicts on invariant germs.
//!
//! Two independent paths reach a verdict. The computing path scans the truncated zeta series of
//! both germs channel by channel and consults their tails. The rule path reads the verdict off
//! the normal-form parameters. [`compare`] runs both and refuses to answer when they disagree.
//!
//! Invariants:
//! - a `Distinct` verdict from the computing path always carries a witness whose two values differ
//!   by a nonzero atom-free class, and both values are confirmed by the recursion oracle
//! - `Conditional` lists every atom identity that the verdict depends on, oriented (first, second)
//! - `ZetaEqual` is never reported on computed coefficients alone; a shared tail rule backs it

mod rules;

pub use rules::rule_verdict;

use std::collections::BTreeMap;
use std::fmt;

use crate::arccoef::tails::PairKind;
use crate::arccoef::{default_order, zeta_truncated, CoeffChannel};
use crate::error::{Error, Result};
use crate::germs::{pair_route, Family, GermNormalForm, PairRoute};
use crate::oracle::oracle_coefficient;
use crate::qring::{series_compare, AtomCondition, Channel, SeriesComparison, SeriesValue};
use crate::sign::Sign;

/// Descriptive names of the clauses a verdict can rest on.
pub mod clause {
    pub const SAME: &str = "identical-normal-forms";
    pub const UNDERLYING_DIFFERS: &str = "underlying-classes-differ";
    pub const NO_FORMULAS: &str = "no-arc-formulas-for-family";
    pub const ODD_POWER_SIGN: &str = "odd-power-sign-is-absorbed";
    pub const SMOOTH: &str = "smooth-germ-ignores-acted-sign";
    pub const ACTED_SQUARE_SIGN: &str = "acted-square-sign-seen-at-degree-two";
    pub const NOT_DOMINANT: &str = "acted-sign-not-dominant";
    pub const EXCEEDS_BY_ONE: &str = "acted-sign-exceeds-by-one";
    pub const AB_ODD_OPPOSITE: &str = "ab-odd-index-opposite-signs";
    pub const AB_MATCHING: &str = "ab-dominant-matching-signs";
    pub const AB_EVEN_OPPOSITE: &str = "ab-even-index-opposite-signs";
    pub const CD_ODD_NEGATIVE: &str = "cd-odd-index-negative-power";
    pub const CD_EVEN_MATCHING: &str = "cd-even-index-matching-signs";
    pub const CD_EVEN_OPPOSITE: &str = "cd-even-index-opposite-signs";
    pub const CD_ODD_POSITIVE: &str = "cd-odd-index-positive-power";
    pub const EF_DOMINANT: &str = "ef-dominant-acted-sign";
    pub const COEFFICIENT_SCAN: &str = "coefficient-scan";
}

/// The first coefficient at which two series provably differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub channel: Channel,
    pub m: u32,
    pub lhs: SeriesValue,
    pub rhs: SeriesValue,
}

/// Why two germs are known to be distinct.
#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// Differing zeta coefficients.
    Witness(Witness),
    /// Differing invariants of the germs with the involution forgotten.
    Invariant(String),
    /// The rule table's prediction of where the series first differ.
    Predicted { channel: Channel, m: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    SameNormalForm,
    /// Equivalent through an explicit change of variables.
    Equivalent(String),
    Distinct(Evidence),
    /// Equal zeta functions in every channel.
    ZetaEqual {
        rules: Vec<String>,
    },
    /// Equal zeta functions provided the listed residual classes agree.
    Conditional {
        rules: Vec<String>,
        conditions: Vec<AtomCondition>,
    },
    OutOfPaperScope(String),
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::SameNormalForm => "same-normal-form",
            Verdict::Equivalent(_) => "equivalent",
            Verdict::Distinct(_) => "distinct",
            Verdict::ZetaEqual { .. } => "zeta-equal",
            Verdict::Conditional { .. } => "conditional",
            Verdict::OutOfPaperScope(_) => "out-of-scope",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SameNormalForm => f.write_str("same normal form"),
            Verdict::Equivalent(why) => write!(f, "equivalent ({why})"),
            Verdict::Distinct(Evidence::Witness(w)) => write!(
                f,
                "distinct: {} coefficient of T^{} is {} vs {}",
                w.channel, w.m, w.lhs, w.rhs
            ),
            Verdict::Distinct(Evidence::Invariant(why)) => write!(f, "distinct: {why}"),
            Verdict::Distinct(Evidence::Predicted { channel, m }) => {
                write!(f, "distinct: {channel} coefficients differ at T^{m}")
            }
            Verdict::ZetaEqual { rules } => write!(f, "zeta functions equal ({})", rules.join(", ")),
            Verdict::Conditional { conditions, .. } => {
                let cs: Vec<String> = conditions.iter().map(|c| c.to_string()).collect();
                write!(f, "zeta functions equal if {}", cs.join(" and "))
            }
            Verdict::OutOfPaperScope(why) => write!(f, "out of scope: {why}"),
        }
    }
}

/// A verdict and the clauses it rests on, most specific first.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub verdict: Verdict,
    pub provenance: Vec<String>,
}

impl Decision {
    fn new(verdict: Verdict, clause: &str) -> Decision {
        Decision {
            verdict,
            provenance: vec![clause.to_string()],
        }
    }
}

/// The verdict of the computing path alone.
pub fn computed_verdict(g1: &GermNormalForm, g2: &GermNormalForm) -> Result<Decision> {
    match pair_route(g1, g2) {
        PairRoute::WithinFamily => {
            if let Some(d) = rules::structural_equivalence(g1, g2) {
                return Ok(d);
            }
            scan(g1, g2)
        }
        PairRoute::CrossAB | PairRoute::CrossCD | PairRoute::CrossEF => scan(g1, g2),
        // structural verdicts need no coefficients and the table states them directly
        _ => rule_verdict(g1, g2),
    }
}

fn scan(g1: &GermNormalForm, g2: &GermNormalForm) -> Result<Decision> {
    let order = default_order(g1).min(default_order(g2));
    let mut first: Option<Witness> = None;
    let mut rules = Vec::new();
    let mut conditions = Vec::new();
    let mut open = Vec::new();
    for ch in Channel::ALL {
        let a = zeta_truncated(g1, ch, order)?;
        let b = zeta_truncated(g2, ch, order)?;
        match series_compare(&a, &b) {
            Ok(SeriesComparison::FirstDifference { m, lhs, rhs }) => {
                if first.as_ref().is_none_or(|w| m < w.m) {
                    first = Some(Witness {
                        channel: ch,
                        m,
                        lhs,
                        rhs,
                    });
                }
            }
            Ok(SeriesComparison::Equal { rule, .. }) => rules.push(rule),
            Ok(SeriesComparison::ConditionallyEqual {
                rule, conditions: c, ..
            }) => {
                rules.push(rule);
                conditions.extend(c);
            }
            Err(Error::IncomparableTails) => open.push(ch),
            Err(e) => return Err(e),
        }
    }
    let mut d = Decision::new(Verdict::SameNormalForm, clause::COEFFICIENT_SCAN);
    if let Some(w) = first {
        confirm_witness(g1, g2, &w)?;
        d.verdict = Verdict::Distinct(Evidence::Witness(w));
        return Ok(d);
    }
    if !open.is_empty() {
        let chs: Vec<String> = open.iter().map(|c| c.to_string()).collect();
        return Err(Error::NoClause(format!(
            "{g1} against {g2}: {} agree up to T^{order} with no rule past it",
            chs.join(", ")
        )));
    }
    rules.dedup();
    conditions.sort();
    conditions.dedup();
    d.provenance.extend(rules.iter().cloned());
    d.verdict = if conditions.is_empty() {
        Verdict::ZetaEqual { rules }
    } else {
        Verdict::Conditional { rules, conditions }
    };
    Ok(d)
}

/// Recomputes both witness values by the recursion.
fn confirm_witness(g1: &GermNormalForm, g2: &GermNormalForm, w: &Witness) -> Result<()> {
    let ch = CoeffChannel::from(w.channel);
    for (g, v) in [(g1, &w.lhs), (g2, &w.rhs)] {
        let o = oracle_coefficient(g, w.m, ch)?
            .total
            .laurent_shift(-((w.m * g.n) as i64));
        if &o != v {
            return Err(Error::DualPathMismatch {
                what: format!("{ch} coefficient of T^{} for {g}", w.m),
                closed: v.to_string(),
                oracle: o.to_string(),
            });
        }
    }
    Ok(())
}

/// Whether two decisions state the same verdict. A witness matches a prediction with the same
/// channel and degree; conditions are compared as sets.
pub fn verdicts_agree(a: &Verdict, b: &Verdict) -> bool {
    use Verdict::*;
    match (a, b) {
        (Distinct(Evidence::Witness(w)), Distinct(Evidence::Predicted { channel, m }))
        | (Distinct(Evidence::Predicted { channel, m }), Distinct(Evidence::Witness(w))) => {
            w.channel == *channel && w.m == *m
        }
        (ZetaEqual { .. }, ZetaEqual { .. }) => true,
        (Conditional { conditions: x, .. }, Conditional { conditions: y, .. }) => {
            let mut x = x.clone();
            let mut y = y.clone();
            x.sort();
            y.sort();
            x == y
        }
        (x, y) => x == y,
    }
}

/// Verdict for a pair, checked against the rule table.
pub fn compare(g1: &GermNormalForm, g2: &GermNormalForm) -> Result<Decision> {
    let computed = computed_verdict(g1, g2)?;
    let table = rule_verdict(g1, g2)?;
    if !verdicts_agree(&computed.verdict, &table.verdict) {
        return Err(Error::DualPathMismatch {
            what: format!("verdict for {g1} against {g2}"),
            closed: computed.verdict.to_string(),
            oracle: table.verdict.to_string(),
        });
    }
    let mut provenance = table.provenance;
    for p in computed.provenance {
        if !provenance.contains(&p) {
            provenance.push(p);
        }
    }
    Ok(Decision {
        verdict: computed.verdict,
        provenance,
    })
}

/// One pair of a table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub first: usize,
    pub second: usize,
    pub decision: Decision,
}

/// Verdicts for every unordered pair of distinct positions.
pub fn classify_table(germs: &[GermNormalForm]) -> Result<Vec<TableEntry>> {
    let mut out = Vec::new();
    for i in 0..germs.len() {
        for j in i + 1..germs.len() {
            out.push(TableEntry {
                first: i,
                second: j,
                decision: compare(&germs[i], &germs[j])?,
            });
        }
    }
    Ok(out)
}

/// Germs of the two families of a cross pair with pair index `2..=k_max` and `p + q <= pq_max`,
/// grouped by underlying class. Groups and their members come in a fixed order.
pub fn pair_grid(kind: PairKind, k_max: u32, pq_max: u32) -> Vec<Vec<GermNormalForm>> {
    let members: Vec<(Family, u32)> = match kind {
        PairKind::AB => (2..=k_max)
            .flat_map(|k| [(Family::A, 2 * k - 1), (Family::B, k)])
            .collect(),
        PairKind::CD => (3..=k_max).flat_map(|k| [(Family::C, k), (Family::D, k + 1)]).collect(),
        PairKind::EF => vec![(Family::E6, 6), (Family::F4, 4)],
    };
    let mut classes: BTreeMap<_, Vec<GermNormalForm>> = BTreeMap::new();
    for (family, k) in members {
        let etas: Vec<Option<Sign>> = if family.has_acted_square() {
            Sign::ALL.map(Some).to_vec()
        } else {
            vec![None]
        };
        for p in 0..=pq_max {
            for q in 0..=pq_max - p {
                for eps in Sign::ALL {
                    for &eta in &etas {
                        if let Ok(g) = GermNormalForm::new(family, k, eps, eta, p, q) {
                            classes.entry(g.underlying_class()).or_default().push(g);
                        }
                    }
                }
            }
        }
    }
    classes
        .into_values()
        .map(|mut v| {
            v.sort();
            v.dedup();
            v
        })
        .collect()
}

/// `xi` for a sign channel.
pub fn channel_sign(ch: Channel) -> Option<Sign> {
    match ch {
        Channel::Naive => None,
        Channel::Plus => Some(Sign::Plus),
        Channel::Minus => Some(Sign::Minus),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::parse_germ;

    fn g(s: &str) -> GermNormalForm {
        parse_germ(s).unwrap()
    }

    fn verdict(a: &str, b: &str) -> Verdict {
        compare(&g(a), &g(b)).unwrap().verdict
    }

    #[test]
    fn pair_grid_groups_by_class() {
        let grid = pair_grid(PairKind::AB, 3, 2);
        assert!(grid
            .iter()
            .all(|c| c.iter().all(|g| g.underlying_class() == c[0].underlying_class())));
        assert!(grid
            .iter()
            .any(|c| c.iter().any(|g| g.family == Family::A) && c.iter().any(|g| g.family == Family::B)));
        assert_eq!(pair_grid(PairKind::EF, 0, 1).concat().len(), 8);
    }

    #[test]
    fn same_and_structural() {
        assert_eq!(verdict("x1^2 + x2^3", "x2^3 + x1^2"), Verdict::SameNormalForm);
        assert!(matches!(verdict("x1^2 + x2^3", "x1^2 - x2^3"), Verdict::Equivalent(_)));
        assert!(matches!(
            verdict("x1^2 + x2^3", "x1^2 + x2^4"),
            Verdict::Distinct(Evidence::Invariant(_))
        ));
    }

    #[test]
    fn balanced_within_family_differs_on_the_plus_channel() {
        match verdict("x1^2 + x2^4 - x3^2", "-x1^2 + x2^4 + x3^2") {
            Verdict::Distinct(Evidence::Witness(w)) => assert_eq!((w.channel, w.m), (Channel::Plus, 2)),
            v => panic!("{v}"),
        }
    }

    #[test]
    fn smooth_germs_agree_whatever_the_acted_sign() {
        assert!(matches!(
            verdict("x1^2 + x2 - x3^2", "-x1^2 + x2 + x3^2"),
            Verdict::ZetaEqual { .. }
        ));
    }

    #[test]
    fn cross_pairs() {
        // dominant acted sign with matching eps
        assert!(matches!(
            verdict("x1^2 + x2^4 + x3^2 + x4^2", "x1^4 + x2^2 + x3^2 + x4^2"),
            Verdict::ZetaEqual { .. }
        ));
        // odd B index with opposite signs
        match verdict("x1^2 - x2^6 + x3^2 + x4^2", "-x1^6 + x2^2 + x3^2 + x4^2") {
            Verdict::Distinct(Evidence::Witness(w)) => assert_eq!((w.channel, w.m), (Channel::Naive, 6)),
            v => panic!("{v}"),
        }
        // even B index with opposite signs
        match verdict("x1^2 - x2^4 + x3^2 + x4^2", "-x1^4 + x2^2 + x3^2 + x4^2") {
            Verdict::Conditional { conditions, .. } => assert_eq!(conditions.len(), 2),
            v => panic!("{v}"),
        }
    }
}
