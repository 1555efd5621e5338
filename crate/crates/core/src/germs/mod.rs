//! Normal forms of simple germs invariant under `x1 -> -x1`, their parsing and rendering, and the
//! routing of a pair of germs to the comparison that applies to it.
//!
//! Invariants:
//! - `x1` is always the acted variable; the other variables are interchangeable
//! - `p`, `q` count the positive and negative squares, including `x1^2` when it is a square
//! - two germs with equal normal forms are equal as values of this type
//! - A_1 stores as `eps` the sign of an unacted positive square whenever one exists

mod parse;
mod render;

use std::fmt;
use std::str::FromStr;

pub use parse::parse_germ;
pub use render::render_germ;

use crate::error::{Error, Result};
use crate::grim::QuadSig;
use crate::sign::Sign;

/// Normal-form families of invariant simple germs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `eta x1^2 + eps x2^{k+1} + Q`
    A,
    /// `eps x1^{2k} + Q`
    B,
    /// `x1^2 x2 + eps x2^k + Q`
    C,
    /// `eta x1^2 + x2^2 x3 + eps x3^{k-1} + Q`
    D,
    /// `eta x1^2 + x2^3 + eps x3^4 + Q`
    E6,
    /// `eta x1^2 + x2^3 + x2 x3^3 + Q`
    E7,
    /// `eta x1^2 + x2^3 + x3^5 + Q`
    E8,
    /// `eps x1^4 + x2^3 + Q`
    F4,
}

impl Family {
    /// Whether `x1` enters through the square `eta x1^2`.
    pub fn has_acted_square(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E6 | Family::E7 | Family::E8)
    }

    /// Whether the family carries a free sign `eps`.
    pub fn has_eps(self) -> bool {
        !matches!(self, Family::E7 | Family::E8)
    }

    /// Number of variables not counted by the quadratic part.
    fn extra_vars(self) -> u32 {
        match self {
            Family::A | Family::B => 1,
            _ => 2,
        }
    }

    fn fixed_k(self) -> Option<u32> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            _ => None,
        }
    }

    fn min_k(self) -> u32 {
        match self {
            Family::A => 0,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
            other => other.fixed_k().unwrap(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F4" => Family::F4,
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

/// Canonical record of an invariant simple germ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GermNormalForm {
    pub family: Family,
    pub k: u32,
    pub eps: Sign,
    /// Sign of `x1^2` for families that contain it.
    pub acted_sign: Option<Sign>,
    pub p: u32,
    pub q: u32,
    pub n: u32,
}

impl GermNormalForm {
    /// Validates the parameters and returns the canonical record.
    pub fn new(family: Family, k: u32, eps: Sign, acted_sign: Option<Sign>, p: u32, q: u32) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if let Some(fk) = family.fixed_k() {
            if k != fk {
                return bad(format!("{family} has k = {fk}"));
            }
        } else if k < family.min_k() {
            return bad(format!("{family}_k needs k >= {}", family.min_k()));
        }
        match (family.has_acted_square(), acted_sign) {
            (true, None) => return bad(format!("{family} needs the sign of x1^2")),
            (false, Some(_)) => return bad(format!("{family} has no x1^2 term")),
            (true, Some(Sign::Plus)) if p == 0 => return bad("x1^2 positive needs p >= 1".into()),
            (true, Some(Sign::Minus)) if q == 0 => return bad("x1^2 negative needs q >= 1".into()),
            _ => {}
        }
        if matches!(family, Family::B | Family::F4) && p + q == 0 {
            return bad(format!("{family} needs at least one square besides x1"));
        }
        let eps = if family.has_eps() { eps } else { Sign::Plus };
        let mut g = GermNormalForm {
            family,
            k,
            eps,
            acted_sign,
            p,
            q,
            n: p + q + family.extra_vars(),
        };
        if family == Family::A && k == 1 {
            g = g.canonical_a1();
        }
        Ok(g)
    }

    /// A_1 is a quadratic form; keep the positive unacted square as `x2` when there is one.
    fn canonical_a1(self) -> Self {
        let eta = self.acted_sign.unwrap();
        let total = QuadSig::new(self.p, self.q).with_square(self.eps);
        let unacted_plus = total.p - u32::from(eta == Sign::Plus);
        let eps = if unacted_plus >= 1 { Sign::Plus } else { Sign::Minus };
        let rest = match eps {
            Sign::Plus => QuadSig::new(total.p - 1, total.q),
            Sign::Minus => QuadSig::new(total.p, total.q - 1),
        };
        GermNormalForm {
            eps,
            p: rest.p,
            q: rest.q,
            ..self
        }
    }

    pub fn sig(&self) -> QuadSig {
        QuadSig::new(self.p, self.q)
    }

    /// `eta`, for families with an acted square.
    pub fn eta(&self) -> Option<Sign> {
        self.acted_sign
    }

    /// Signature of the full quadratic part, counting the `x2^2` of A_1.
    pub fn quadratic_signature(&self) -> QuadSig {
        if self.family == Family::A && self.k == 1 {
            self.sig().with_square(self.eps)
        } else {
            self.sig()
        }
    }

    /// Class of the germ once the involution is forgotten: type, index, quadratic signature, and
    /// `eps` where it is an invariant.
    pub fn underlying_class(&self) -> (char, u32, QuadSig, Option<Sign>) {
        let s = self.quadratic_signature();
        match self.family {
            // every smooth germ in n variables is the same germ; only n is kept
            Family::A if self.k == 0 => ('A', 0, QuadSig::new(self.n, 0), None),
            Family::A => ('A', self.k, s, (self.k % 2 == 1 && self.k > 1).then_some(self.eps)),
            Family::B => ('A', 2 * self.k - 1, s, Some(self.eps)),
            Family::C => ('D', self.k + 1, s, Some(self.eps)),
            Family::D => ('D', self.k, s, Some(self.eps)),
            Family::E6 | Family::F4 => ('E', 6, s, Some(self.eps)),
            Family::E7 => ('E', 7, s, None),
            Family::E8 => ('E', 8, s, None),
        }
    }

    /// Structured one-line form, e.g. `A k=3 eps=+1 eta=-1 p=1 q=2`.
    pub fn structured(&self) -> String {
        let mut s = format!("{} k={}", self.family, self.k);
        if self.family.has_eps() {
            s += &format!(" eps={}", self.eps);
        }
        if let Some(eta) = self.acted_sign {
            s += &format!(" eta={eta}");
        }
        s + &format!(" p={} q={}", self.p, self.q)
    }
}

impl fmt::Display for GermNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_germ(self))
    }
}

impl FromStr for GermNormalForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_germ(s)
    }
}

/// Which comparison a pair of germs calls for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairRoute {
    SameNormalForm,
    /// Same family, differing only in `eta` (or in an `eps` that is not an invariant).
    WithinFamily,
    CrossAB,
    CrossCD,
    CrossEF,
    /// Already distinct once the involution is forgotten.
    CrossDistinct(String),
    OutOfPaperScope(String),
}

/// Routes a pair to its comparison.
pub fn pair_route(g1: &GermNormalForm, g2: &GermNormalForm) -> PairRoute {
    if g1 == g2 {
        return PairRoute::SameNormalForm;
    }
    let (c1, c2) = (g1.underlying_class(), g2.underlying_class());
    if c1 != c2 {
        return PairRoute::CrossDistinct(describe_class_difference(c1, c2));
    }
    use Family::*;
    match (g1.family, g2.family) {
        (a, b) if a == b && matches!(a, E7 | E8) => {
            PairRoute::OutOfPaperScope(format!("no arc-space formulas are available for the {a} family"))
        }
        (a, b) if a == b => PairRoute::WithinFamily,
        (A, B) | (B, A) => PairRoute::CrossAB,
        (C, D) | (D, C) => PairRoute::CrossCD,
        (E6, F4) | (F4, E6) => PairRoute::CrossEF,
        (a, b) => PairRoute::OutOfPaperScope(format!("no comparison is available for {a} against {b}")),
    }
}

fn describe_class_difference(c1: (char, u32, QuadSig, Option<Sign>), c2: (char, u32, QuadSig, Option<Sign>)) -> String {
    if (c1.0, c1.1) != (c2.0, c2.1) {
        format!("underlying types differ: {}{} vs {}{}", c1.0, c1.1, c2.0, c2.1)
    } else if (c1.0, c1.1) == ('A', 0) {
        format!("numbers of variables differ: {} vs {}", c1.2.p, c2.2.p)
    } else if c1.2 != c2.2 {
        format!(
            "quadratic signatures differ: ({}, {}) vs ({}, {})",
            c1.2.p, c1.2.q, c2.2.p, c2.2.q
        )
    } else {
        let s = |o: Option<Sign>| o.map_or("none".to_string(), |s| s.to_string());
        format!("sign of the leading term differs: {} vs {}", s(c1.3), s(c2.3))
    }
}
