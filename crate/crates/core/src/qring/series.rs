//! Truncated zeta series and their comparison.
//!
//! Invariants:
//! - coefficients are indexed `1..=valid_to` with no gaps
//! - a tail annotation is a claim about equality with the germ's partner, never a value
//! - a difference with no atoms is a proof of inequality; one with atoms is only a condition

use std::collections::BTreeMap;
use std::fmt;

use super::value::{Atom, SeriesValue};
use crate::error::{Error, Result};

/// Which arc count a series records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    /// Net classes `[L_m] - [A_m^0]`.
    Naive,
    /// Arcs with `f(gamma) = +t^m + ...`.
    Plus,
    /// Arcs with `f(gamma) = -t^m + ...`.
    Minus,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Naive, Channel::Plus, Channel::Minus];
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Naive => "naive",
            Channel::Plus => "plus",
            Channel::Minus => "minus",
        })
    }
}

/// A required identity between two residual classes, oriented as (first germ, second germ).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomCondition {
    pub lhs: Atom,
    pub rhs: Atom,
}

impl AtomCondition {
    pub fn mirrored(&self) -> AtomCondition {
        AtomCondition {
            lhs: self.rhs,
            rhs: self.lhs,
        }
    }
}

impl fmt::Display for AtomCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] = [{}]", self.lhs, self.rhs)
    }
}

/// What is known past the computed range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    Unknown,
    /// Every later coefficient agrees with the partner germ's.
    EqualByRule(String),
    /// Later coefficients agree with the partner's provided the listed classes agree.
    ConditionalByRule(String, Vec<AtomCondition>),
}

/// Coefficients `1..=valid_to` of one channel of a germ's zeta function.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaSeries {
    pub n: u32,
    pub channel: Channel,
    pub coeffs: BTreeMap<u32, SeriesValue>,
    pub valid_to: u32,
    pub tail: Tail,
}

impl ZetaSeries {
    pub fn coeff(&self, m: u32) -> Option<&SeriesValue> {
        self.coeffs.get(&m)
    }
}

/// Outcome of comparing two series of the same channel.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesComparison {
    Equal {
        upto: u32,
        rule: String,
    },
    FirstDifference {
        m: u32,
        lhs: SeriesValue,
        rhs: SeriesValue,
    },
    ConditionallyEqual {
        upto: u32,
        rule: String,
        conditions: Vec<AtomCondition>,
    },
}

/// Conditions under which `lhs == rhs`, when the two differ only through atoms.
///
/// Returns `None` when the difference is atom-free (a genuine inequality) or when the atom parts
/// cannot be paired one-to-one with equal coefficients.
pub fn atom_conditions(lhs: &SeriesValue, rhs: &SeriesValue) -> Option<Vec<AtomCondition>> {
    let d = lhs - rhs;
    if d.is_atom_free() || !d.rat.is_zero() {
        return None;
    }
    let only_l: Vec<_> = lhs
        .atoms()
        .iter()
        .filter(|(a, c)| rhs.atoms().get(a) != Some(c))
        .collect();
    let only_r: Vec<_> = rhs
        .atoms()
        .iter()
        .filter(|(a, c)| lhs.atoms().get(a) != Some(c))
        .collect();
    if only_l.len() != only_r.len() {
        return None;
    }
    let mut out = Vec::new();
    let mut used = vec![false; only_r.len()];
    for (la, lc) in &only_l {
        let pos = (0..only_r.len()).find(|&i| !used[i] && only_r[i].1 == *lc)?;
        used[pos] = true;
        out.push(AtomCondition {
            lhs: **la,
            rhs: *only_r[pos].0,
        });
    }
    Some(out)
}

/// Compares two series coefficient by coefficient, then consults the tails.
///
/// The first atom-free difference wins. Atom-only differences become conditions. When every
/// computed coefficient matches, the verdict rests on both tails naming the same rule.
pub fn series_compare(a: &ZetaSeries, b: &ZetaSeries) -> Result<SeriesComparison> {
    if a.channel != b.channel {
        return Err(Error::InvalidParameter(format!(
            "cannot compare channel {} with {}",
            a.channel, b.channel
        )));
    }
    let upto = a.valid_to.min(b.valid_to);
    let mut conditions: Vec<AtomCondition> = Vec::new();
    for m in 1..=upto {
        let (l, r) = (&a.coeffs[&m], &b.coeffs[&m]);
        if l == r {
            continue;
        }
        match atom_conditions(l, r) {
            Some(cs) => {
                for c in cs {
                    if !conditions.contains(&c) {
                        conditions.push(c);
                    }
                }
            }
            None if (l - r).is_atom_free() => {
                return Ok(SeriesComparison::FirstDifference {
                    m,
                    lhs: l.clone(),
                    rhs: r.clone(),
                })
            }
            // mixed rational and atom difference: no usable equality, and no proof of inequality
            None => return Err(Error::IncomparableTails),
        }
    }
    let rule = match (&a.tail, &b.tail) {
        (Tail::EqualByRule(x), Tail::EqualByRule(y)) if x == y => x.clone(),
        (Tail::ConditionalByRule(x, cx), Tail::ConditionalByRule(y, cy)) if x == y => {
            let mirrored: Vec<_> = cy.iter().map(AtomCondition::mirrored).collect();
            if cx.len() != mirrored.len() || cx.iter().any(|c| !mirrored.contains(c)) {
                return Err(Error::IncomparableTails);
            }
            for c in cx {
                if !conditions.contains(c) {
                    conditions.push(c.clone());
                }
            }
            x.clone()
        }
        _ => return Err(Error::IncomparableTails),
    };
    if conditions.is_empty() {
        Ok(SeriesComparison::Equal { upto, rule })
    } else {
        Ok(SeriesComparison::ConditionallyEqual { upto, rule, conditions })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::{AtomTemplate, AtomVariant, RatFunc};
    use crate::sign::Sign;

    fn series(vals: Vec<SeriesValue>, tail: Tail) -> ZetaSeries {
        ZetaSeries {
            n: 3,
            channel: Channel::Naive,
            valid_to: vals.len() as u32,
            coeffs: vals.into_iter().enumerate().map(|(i, v)| (i as u32 + 1, v)).collect(),
            tail,
        }
    }

    fn rat(e: i64) -> SeriesValue {
        RatFunc::u_pow(e).into()
    }

    fn atom(v: AtomVariant) -> SeriesValue {
        SeriesValue::atom(Atom::new(AtomTemplate::EvenMixed, 4, 2, Sign::Plus, v))
    }

    #[test]
    fn first_atom_free_difference() {
        let a = series(vec![rat(0), rat(1)], Tail::Unknown);
        let b = series(vec![rat(0), rat(2)], Tail::Unknown);
        match series_compare(&a, &b).unwrap() {
            SeriesComparison::FirstDifference { m, .. } => assert_eq!(m, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_tails_are_incomparable() {
        let a = series(vec![rat(0)], Tail::Unknown);
        assert_eq!(series_compare(&a, &a.clone()), Err(Error::IncomparableTails));
    }

    #[test]
    fn atom_difference_becomes_condition() {
        let t = Tail::EqualByRule("r".into());
        let a = series(vec![rat(0), atom(AtomVariant::FlipInsideSquares)], t.clone());
        let b = series(vec![rat(0), atom(AtomVariant::TrivialAction)], t);
        match series_compare(&a, &b).unwrap() {
            SeriesComparison::ConditionallyEqual { conditions, .. } => {
                assert_eq!(conditions.len(), 1);
                assert_eq!(conditions[0].lhs.variant, AtomVariant::FlipInsideSquares);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn later_difference_beats_earlier_condition() {
        let t = Tail::EqualByRule("r".into());
        let a = series(vec![atom(AtomVariant::FlipInsideSquares), rat(1)], t.clone());
        let b = series(vec![atom(AtomVariant::TrivialAction), rat(2)], t);
        assert!(matches!(
            series_compare(&a, &b).unwrap(),
            SeriesComparison::FirstDifference { m: 2, .. }
        ));
    }
}
