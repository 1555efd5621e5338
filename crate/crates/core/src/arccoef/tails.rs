//! What the pair rules say about the coefficients past the computed range.
//!
//! A germ of a cross pair (A/B, C/D, E6/F4) whose quadratic part has at least two more squares of
//! the acted sign than of the other sign has its higher coefficients determined by residual
//! level sets shared with its partner. The tail records the rule and, when those sets are only
//! known as atoms, the identities they would have to satisfy.
//!
//! Invariants:
//! - a tail is only attached at the critical degree, where the computed range ends (the smooth
//!   germ, whose formula covers every degree, carries its tail at any order)
//! - both members of a pair name the same rule and mirrored conditions

use crate::error::{Error, Result};
use crate::germs::{Family, GermNormalForm};
use crate::grim::{beta_level_set, Action};
use crate::qring::{atom_conditions, Atom, AtomCondition, AtomTemplate, AtomVariant, Channel, SeriesValue, Tail};
use crate::sign::Sign;

use super::{shape, validity_bound};

/// The three cross pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `eta x1^2 + eps x2^{2k} + Q` against `eps x1^{2k} + Q`.
    AB,
    /// `eta x1^2 + x2^2 x3 + eps x3^k + Q` against `x1^2 x2 + eps x2^k + Q`.
    CD,
    /// `eta x1^2 + x2^3 + eps x3^4 + Q` against `eps x1^4 + x2^3 + Q`.
    EF,
}

/// Data the pair rules are stated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairData {
    pub kind: PairKind,
    /// Index `k` of the pair: the B index, the C index (top degree), or 4.
    pub k: u32,
    pub eps: Sign,
    /// Sign of the acted square on the side that has one.
    pub eta: Option<Sign>,
    /// Whether this germ is the side with the acted square.
    pub acted_side: bool,
}

/// Pair data of a germ that can belong to a cross pair.
pub fn pair_data(g: &GermNormalForm) -> Option<PairData> {
    let (kind, k) = match g.family {
        Family::A if g.k >= 3 && g.k % 2 == 1 => (PairKind::AB, g.k.div_ceil(2)),
        Family::B => (PairKind::AB, g.k),
        Family::C => (PairKind::CD, g.k),
        Family::D => (PairKind::CD, g.k - 1),
        Family::E6 | Family::F4 => (PairKind::EF, 4),
        _ => return None,
    };
    let acted_side = g.family.has_acted_square();
    let eta = if acted_side { g.eta() } else { dominant_sign(g.p, g.q) };
    Some(PairData {
        kind,
        k,
        eps: g.eps,
        eta,
        acted_side,
    })
}

/// The sign with at least two more squares than the other, if any.
pub fn dominant_sign(p: u32, q: u32) -> Option<Sign> {
    if p > q + 1 {
        Some(Sign::Plus)
    } else if q > p + 1 {
        Some(Sign::Minus)
    } else {
        None
    }
}

/// Whether the acted sign dominates the quadratic part by at least two squares.
pub fn acted_sign_dominates(p: u32, q: u32, eta: Sign) -> bool {
    dominant_sign(p, q) == Some(eta)
}

/// Rule identifiers shared by both members of a pair.
pub mod rule {
    pub const AB_ZERO_FIBER: &str = "ab-zero-fiber-tail";
    pub const AB_LEVEL_SET: &str = "ab-level-set-tail";
    pub const AB_MIXED_LEVEL_SET: &str = "ab-mixed-level-set-tail";
    pub const CD_ZERO_FIBER: &str = "cd-zero-fiber-tail";
    pub const CD_LEVEL_SET: &str = "cd-level-set-tail";
    pub const CD_MIXED_LEVEL_SET: &str = "cd-mixed-level-set-tail";
    pub const CD_ODD_LEVEL_SET: &str = "cd-odd-level-set-tail";
    pub const EF_ZERO_FIBER: &str = "ef-zero-fiber-tail";
    pub const EF_CUBIC_QUARTIC: &str = "ef-cubic-quartic-tail";
    /// The smooth germ's coefficients do not depend on the acted sign at any degree.
    pub const SMOOTH: &str = "smooth-germ-uniform-tail";
}

/// What the rules say about one channel of a pair, before any atoms are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailRule {
    Equal(&'static str),
    Conditional(&'static str),
}

/// The rule governing the tail of `ch` for a pair with these data, if any.
pub fn tail_rule(d: &PairData, ch: Channel, dominated: bool) -> Option<TailRule> {
    if !dominated {
        return None;
    }
    let eta = d.eta?;
    let k_even = d.k.is_multiple_of(2);
    let same = d.eps == eta;
    use TailRule::*;
    match (d.kind, ch) {
        (PairKind::AB, Channel::Naive) => (same || k_even).then_some(Equal(rule::AB_ZERO_FIBER)),
        (PairKind::AB, _) if same => Some(Equal(rule::AB_LEVEL_SET)),
        (PairKind::AB, _) => k_even.then_some(Conditional(rule::AB_MIXED_LEVEL_SET)),
        (PairKind::CD, Channel::Naive) => (k_even || d.eps == Sign::Plus).then_some(Equal(rule::CD_ZERO_FIBER)),
        (PairKind::CD, _) if k_even && same => Some(Equal(rule::CD_LEVEL_SET)),
        (PairKind::CD, _) if k_even => Some(Conditional(rule::CD_MIXED_LEVEL_SET)),
        (PairKind::CD, _) => (d.eps == Sign::Plus).then_some(Conditional(rule::CD_ODD_LEVEL_SET)),
        (PairKind::EF, Channel::Naive) => Some(Equal(rule::EF_ZERO_FIBER)),
        (PairKind::EF, _) => Some(Conditional(rule::EF_CUBIC_QUARTIC)),
    }
}

/// Identities between this germ's residual classes and its partner's that the conditional rule
/// of channel `xi` needs, oriented as (this germ, partner). Identities the level-set rules
/// already settle are left out.
pub fn residual_conditions(g: &GermNormalForm, xi: Sign) -> Result<Vec<AtomCondition>> {
    let d = pair_data(g).ok_or_else(|| Error::InvalidParameter(format!("{g} belongs to no cross pair")))?;
    let eta = d
        .eta
        .ok_or_else(|| Error::InvalidParameter(format!("{g} has no dominant sign")))?;
    let sh = shape(g);
    let partner_top = match (d.kind, d.acted_side) {
        (PairKind::CD, true) => Action::Trivial,
        (_, true) => Action::FlipPower,
        (_, false) => Action::flip_square(eta),
    };
    let e = match d.kind {
        PairKind::AB => 2 * d.k,
        PairKind::CD => d.k,
        PairKind::EF => 4,
    };
    let own = beta_level_set(e, g.eps, sh.sig, xi, sh.top)?;
    let other = beta_level_set(e, g.eps, sh.sig, xi, partner_top)?;
    let mut out = conditions_between(&own, &other)?;
    if d.kind == PairKind::EF {
        let k = g.p.abs_diff(g.q);
        let (own_sq, other_sq) = if d.acted_side {
            (AtomVariant::FlipInsideSquares, AtomVariant::TrivialAction)
        } else {
            (AtomVariant::TrivialAction, AtomVariant::FlipInsideSquares)
        };
        let cubic = |v| Atom::new(AtomTemplate::CubicMixed, 3, k, eta * xi, v);
        out.insert(
            0,
            AtomCondition {
                lhs: cubic(own_sq),
                rhs: cubic(other_sq),
            },
        );
        let (own_qc, other_qc) = if d.acted_side {
            (AtomVariant::FlipInsideSquares, AtomVariant::FlipOnPowerVariable)
        } else {
            (AtomVariant::FlipOnPowerVariable, AtomVariant::FlipInsideSquares)
        };
        let qc = |v| Atom::new(AtomTemplate::QuarticCubicMixed, 4, k, eta * xi, v).with_aux(g.eps * eta);
        out.push(AtomCondition {
            lhs: qc(own_qc),
            rhs: qc(other_qc),
        });
    }
    Ok(out)
}

fn conditions_between(own: &SeriesValue, other: &SeriesValue) -> Result<Vec<AtomCondition>> {
    if own == other {
        return Ok(Vec::new());
    }
    atom_conditions(own, other).ok_or(Error::IncomparableTails)
}

/// Tail of the series of `g` in channel `ch` computed up to `order`.
pub fn tail_for(g: &GermNormalForm, ch: Channel, order: u32) -> Result<Tail> {
    if g.family == Family::A && g.k == 0 {
        return Ok(Tail::EqualByRule(rule::SMOOTH.to_string()));
    }
    let Some(d) = pair_data(g) else {
        return Ok(Tail::Unknown);
    };
    if validity_bound(g) != Some(order) {
        return Ok(Tail::Unknown);
    }
    let dominated = d.eta.is_some_and(|eta| acted_sign_dominates(g.p, g.q, eta));
    Ok(match tail_rule(&d, ch, dominated) {
        None => Tail::Unknown,
        Some(TailRule::Equal(r)) => Tail::EqualByRule(r.to_string()),
        Some(TailRule::Conditional(r)) => {
            let xi = match ch {
                Channel::Plus => Sign::Plus,
                _ => Sign::Minus,
            };
            Tail::ConditionalByRule(r.to_string(), residual_conditions(g, xi)?)
        }
    })
}
