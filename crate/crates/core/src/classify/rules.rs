//! The verdict table: what the pair rules predict from the normal-form parameters alone.
//!
//! Nothing here evaluates a coefficient. Conditional verdicts name their residual sets through
//! the level-set rules, which is how the identities are stated.

use super::{clause, Decision, Evidence, Verdict};
use crate::arccoef::tails::{pair_data, residual_conditions, tail_rule, PairData, PairKind, TailRule};
use crate::error::{Error, Result};
use crate::germs::{pair_route, Family, GermNormalForm, PairRoute};
use crate::qring::{AtomCondition, Channel};
use crate::sign::Sign;

/// The verdict the rule table gives for a pair.
pub fn rule_verdict(g1: &GermNormalForm, g2: &GermNormalForm) -> Result<Decision> {
    match pair_route(g1, g2) {
        PairRoute::SameNormalForm => Ok(Decision::new(Verdict::SameNormalForm, clause::SAME)),
        PairRoute::CrossDistinct(why) => Ok(Decision::new(
            Verdict::Distinct(Evidence::Invariant(why)),
            clause::UNDERLYING_DIFFERS,
        )),
        PairRoute::OutOfPaperScope(why) => Ok(Decision::new(Verdict::OutOfPaperScope(why), clause::NO_FORMULAS)),
        PairRoute::WithinFamily => within_family(g1, g2),
        PairRoute::CrossAB | PairRoute::CrossCD | PairRoute::CrossEF => cross_pair(g1, g2),
    }
}

fn within_family(g1: &GermNormalForm, g2: &GermNormalForm) -> Result<Decision> {
    if let Some(v) = structural_equivalence(g1, g2) {
        return Ok(v);
    }
    if g1.family == Family::A && g1.k == 0 {
        return Ok(Decision::new(
            Verdict::ZetaEqual {
                rules: vec![crate::arccoef::tails::rule::SMOOTH.to_string()],
            },
            clause::SMOOTH,
        ));
    }
    if g1.eta() == g2.eta() {
        return Err(Error::NoClause(format!("{g1} against {g2}")));
    }
    let s = g1.quadratic_signature();
    let channel = if s.p == s.q { Channel::Plus } else { Channel::Naive };
    Ok(Decision::new(
        Verdict::Distinct(Evidence::Predicted { channel, m: 2 }),
        clause::ACTED_SQUARE_SIGN,
    ))
}

/// Pairs told apart by neither the class nor the acted sign: equivalent by a change of variables.
pub(super) fn structural_equivalence(g1: &GermNormalForm, g2: &GermNormalForm) -> Option<Decision> {
    let odd_power = g1.family == Family::A && g1.k.is_multiple_of(2);
    let only_eps = g1.eta() == g2.eta() && (g1.p, g1.q) == (g2.p, g2.q) && g1.eps != g2.eps;
    (odd_power && only_eps).then(|| {
        Decision::new(
            Verdict::Equivalent("x2 -> -x2 changes the sign of the odd power".into()),
            clause::ODD_POWER_SIGN,
        )
    })
}

fn cross_pair(g1: &GermNormalForm, g2: &GermNormalForm) -> Result<Decision> {
    let acted = if g1.family.has_acted_square() { g1 } else { g2 };
    let d: PairData = pair_data(acted).ok_or_else(|| Error::NoClause(format!("{g1} against {g2}")))?;
    let eta = d.eta.expect("acted side carries eta");
    let (p, q) = (acted.p, acted.q);
    let distinct = |channel, m, c| Ok(Decision::new(Verdict::Distinct(Evidence::Predicted { channel, m }), c));
    if (p <= q && eta == Sign::Plus) || (q <= p && eta == Sign::Minus) {
        return distinct(Channel::Naive, 2, clause::NOT_DOMINANT);
    }
    if p == q + 1 {
        return distinct(Channel::Plus, 2, clause::EXCEEDS_BY_ONE);
    }
    if q == p + 1 {
        return distinct(Channel::Minus, 2, clause::EXCEEDS_BY_ONE);
    }
    let k_even = d.k.is_multiple_of(2);
    let same = d.eps == eta;
    let c = match d.kind {
        PairKind::AB if !k_even && !same => return distinct(Channel::Naive, 2 * d.k, clause::AB_ODD_OPPOSITE),
        PairKind::AB if same => clause::AB_MATCHING,
        PairKind::AB => clause::AB_EVEN_OPPOSITE,
        PairKind::CD if !k_even && d.eps == Sign::Minus => {
            return distinct(Channel::Naive, d.k, clause::CD_ODD_NEGATIVE)
        }
        PairKind::CD if k_even && same => clause::CD_EVEN_MATCHING,
        PairKind::CD if k_even => clause::CD_EVEN_OPPOSITE,
        PairKind::CD => clause::CD_ODD_POSITIVE,
        PairKind::EF => clause::EF_DOMINANT,
    };
    let mut rules = Vec::new();
    let mut conditions: Vec<AtomCondition> = Vec::new();
    for ch in Channel::ALL {
        match tail_rule(&d, ch, true) {
            Some(TailRule::Equal(r)) => rules.push(r.to_string()),
            Some(TailRule::Conditional(r)) => {
                rules.push(r.to_string());
                let xi = if ch == Channel::Plus { Sign::Plus } else { Sign::Minus };
                conditions.extend(residual_conditions(g1, xi)?);
            }
            None => {
                return Err(Error::NoClause(format!(
                    "{g1} against {g2}: no rule for the {ch} channel"
                )))
            }
        }
    }
    rules.dedup();
    conditions.sort();
    conditions.dedup();
    let verdict = if conditions.is_empty() {
        Verdict::ZetaEqual { rules }
    } else {
        Verdict::Conditional { rules, conditions }
    };
    Ok(Decision::new(verdict, c))
}
