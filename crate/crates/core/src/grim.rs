//! Equivariant virtual Poincare series of the basic varieties: points, affine spaces, spheres,
//! quadric cones `Y_{p,q} = {Q_{p,q} = 0}`, their level sets, and the weighted-diagonal sets
//! `{eps x^e + Q_{p,q} = c}` reached at the top arc degree.
//!
//! Invariants:
//! - `beta(X x R^d) = u^d beta(X)` and `beta(X x R*) = (u - 1) beta(X)` for any action
//! - a sign-changed `Q` is handled by swapping `p`, `q` together with the acted sign
//! - a level set the rules cannot evaluate comes back as an atom, never as a guess

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qring::{Atom, AtomTemplate, AtomVariant, IntPoly, RatFunc, SeriesValue};
use crate::sign::Sign;

/// Finite fixed configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Single,
    TwoFixed,
    TwoSwapped,
}

/// Numbers of positive and negative squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadSig {
    pub p: u32,
    pub q: u32,
}

impl QuadSig {
    pub fn new(p: u32, q: u32) -> QuadSig {
        QuadSig { p, q }
    }

    pub fn swapped(self) -> QuadSig {
        QuadSig { p: self.q, q: self.p }
    }

    pub fn rank(self) -> u32 {
        self.p + self.q
    }

    /// Signature after adding one square of sign `s`.
    pub fn with_square(self, s: Sign) -> QuadSig {
        match s {
            Sign::Plus => QuadSig::new(self.p + 1, self.q),
            Sign::Minus => QuadSig::new(self.p, self.q + 1),
        }
    }
}

/// Involution on the coordinates of a quadric or diagonal set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// Changes the sign of one positive square.
    FlipPlusSquare,
    /// Changes the sign of one negative square.
    FlipMinusSquare,
    /// Changes the sign of every coordinate.
    FlipAll,
    /// Changes the sign of the power variable `x` of `eps x^e + Q`.
    FlipPower,
    Trivial,
}

impl Action {
    /// Flip of a square with the given sign.
    pub fn flip_square(s: Sign) -> Action {
        match s {
            Sign::Plus => Action::FlipPlusSquare,
            Sign::Minus => Action::FlipMinusSquare,
        }
    }

    fn swapped(self) -> Action {
        match self {
            Action::FlipPlusSquare => Action::FlipMinusSquare,
            Action::FlipMinusSquare => Action::FlipPlusSquare,
            other => other,
        }
    }

    fn check_on(self, sig: QuadSig) -> Result<()> {
        let bad = match self {
            Action::FlipPlusSquare => sig.p == 0,
            Action::FlipMinusSquare => sig.q == 0,
            _ => false,
        };
        if bad {
            return Err(Error::IncompatibleAction {
                action: self.to_string(),
                what: format!("signature ({}, {})", sig.p, sig.q),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::FlipPlusSquare => "flip-plus",
            Action::FlipMinusSquare => "flip-minus",
            Action::FlipAll => "flip-all",
            Action::FlipPower => "flip-power",
            Action::Trivial => "trivial",
        })
    }
}

impl FromStr for Action {
    type Err = Error;
    fn from_str(s: &str) -> Result<Action> {
        Ok(match s {
            "flip-plus" | "case1" => Action::FlipPlusSquare,
            "flip-minus" | "case2" => Action::FlipMinusSquare,
            "flip-all" | "case3" => Action::FlipAll,
            "flip-power" => Action::FlipPower,
            "trivial" | "case4" => Action::Trivial,
            other => return Err(Error::InvalidParameter(format!("unknown action {other:?}"))),
        })
    }
}

pub fn beta_point(kind: PointKind) -> RatFunc {
    match kind {
        PointKind::Single => RatFunc::u_pow_over_u_minus_one(1),
        PointKind::TwoFixed => RatFunc::u_pow_over_u_minus_one(1).scale(2),
        PointKind::TwoSwapped => RatFunc::one(),
    }
}

/// `R^d` with any action: `u^{d+1}/(u - 1)`.
pub fn beta_affine(d: u32) -> RatFunc {
    RatFunc::u_pow_over_u_minus_one(d as i64 + 1)
}

/// Class of `X x R^d`.
pub fn times_affine(x: &RatFunc, d: u32) -> RatFunc {
    x.laurent_shift(d as i64)
}

/// Class of `X x R*`.
pub fn times_punctured_line(x: &RatFunc) -> RatFunc {
    x.mul_poly(&IntPoly::u_minus_one())
}

/// The sphere `S^d`: `1 + u + ... + u^d` without a fixed point, `2u/(u-1) + u + ... + u^d` with.
pub fn beta_sphere(d: u32, has_fixed_point: bool) -> RatFunc {
    let tail = (1..=d as i64).fold(RatFunc::zero(), |acc, i| &acc + &RatFunc::u_pow(i));
    if has_fixed_point {
        &beta_point(PointKind::TwoFixed) + &tail
    } else {
        &RatFunc::one() + &tail
    }
}

/// `(u^a - u^b + u^c)/(u - 1)`.
fn three_term(a: u32, b: u32, c: u32) -> RatFunc {
    let num =
        &(&IntPoly::monomial(1, a as usize) - &IntPoly::monomial(1, b as usize)) + &IntPoly::monomial(1, c as usize);
    RatFunc::new(num, IntPoly::u_minus_one())
}

/// Class of the quadric cone `{Q_{p,q} = 0}` with the given action.
pub fn beta_y(sig: QuadSig, action: Action) -> Result<RatFunc> {
    if action == Action::FlipPower {
        return Err(Error::IncompatibleAction {
            action: action.to_string(),
            what: "a quadric cone".into(),
        });
    }
    action.check_on(sig)?;
    let (sig, action) = if sig.q < sig.p {
        (sig.swapped(), action.swapped())
    } else {
        (sig, action)
    };
    let QuadSig { p, q } = sig;
    if p == 0 {
        return Ok(beta_point(PointKind::Single));
    }
    // the flipped square on the smaller side leaves only the origin fixed in the link
    let low = match (action, p == q) {
        (Action::FlipPlusSquare, _) => p - 1,
        (Action::FlipMinusSquare, true) => p - 1,
        _ => p + 1,
    };
    Ok(three_term(p + q, q, low))
}

/// `beta(Y_{p,q}) - beta(origin)`.
pub fn beta_y_punctured(sig: QuadSig, action: Action) -> Result<RatFunc> {
    Ok(&beta_y(sig, action)? - &beta_point(PointKind::Single))
}

/// Class of the level set `{Q_{p,q} = xi}`, through the projective closure.
pub fn beta_y_fiber(sig: QuadSig, xi: Sign, action: Action) -> Result<RatFunc> {
    if action == Action::FlipAll {
        return Err(Error::UnsupportedAction(
            "level sets of a quadric under the full sign change".into(),
        ));
    }
    if action == Action::FlipPower {
        return Err(Error::IncompatibleAction {
            action: action.to_string(),
            what: "a quadric level set".into(),
        });
    }
    action.check_on(sig)?;
    let bigger = sig.with_square(-xi);
    let d = &beta_y(bigger, action)? - &beta_y(sig, action)?;
    Ok(d.div_poly(&IntPoly::u_minus_one()))
}

/// Action induced on the chart `x = s, y = s v` of the blow-up at the origin, and the action it
/// restricts to on the exceptional quadric `{Q(v) = 0}`.
fn blow_up_step(a: Action) -> (Action, Action) {
    match a {
        Action::FlipPower => (Action::FlipAll, Action::FlipAll),
        Action::FlipAll => (Action::FlipPower, Action::Trivial),
        other => (other, other),
    }
}

/// Action on the merged quadric `eps x^2 + Q_{p,q}`.
fn merged_action(a: Action, eps: Sign) -> Action {
    match a {
        Action::FlipPower => Action::flip_square(eps),
        other => other,
    }
}

/// Class of `{eps x^e + Q_{p,q} = 0}`.
///
/// Even `e >= 4` is reduced by repeated blow-ups of the origin, each step contributing
/// `-beta({Q = 0}) + beta(origin)`. Odd `e` uses `beta(R^{p+q}) - e beta({Q = 0}) + e beta(origin)`.
pub fn beta_diagonal_zero(e: u32, sig: QuadSig, eps: Sign, action: Action) -> Result<RatFunc> {
    if e == 0 {
        return Err(Error::InvalidParameter("exponent must be positive".into()));
    }
    action.check_on(sig)?;
    if e % 2 == 1 {
        if matches!(action, Action::FlipPower | Action::FlipAll) {
            return Err(Error::IncompatibleAction {
                action: action.to_string(),
                what: format!("the odd power x^{e}"),
            });
        }
        let k = e as i128;
        let y = beta_y(sig, action)?;
        return Ok(&(&beta_affine(sig.rank()) - &y.scale(k)) + &beta_point(PointKind::Single).scale(k));
    }
    let mut a = action;
    let mut acc = RatFunc::zero();
    for _ in 0..(e / 2 - 1) {
        let (next, on_exceptional) = blow_up_step(a);
        acc = &(&acc - &beta_y(sig, on_exceptional)?) + &beta_point(PointKind::Single);
        a = next;
    }
    Ok(&acc + &beta_y(sig.with_square(eps), merged_action(a, eps))?)
}

/// Class of the plane curve `{x^2 z + eps z^{2l+1} = 0}`, with `x` flipped or not.
pub fn beta_curve_zero(l: u32, eps: Sign, flip_x: bool) -> Result<RatFunc> {
    if l == 0 {
        return Err(Error::InvalidParameter("curve index must be at least 1".into()));
    }
    let a = if flip_x {
        Action::FlipPlusSquare
    } else {
        Action::Trivial
    };
    let cone = beta_y(QuadSig::new(1, 0).with_square(eps), a)?;
    Ok(&(&cone - &beta_point(PointKind::Single)) + &beta_affine(1))
}

/// Class of `{x^2 z + z^{2l+1} = xi}`.
pub fn beta_cusp_fiber(l: u32) -> RatFunc {
    let _ = l;
    beta_affine(1)
}

/// Class of `{x^2 z + eps z^{2l+1} = xi}`; the `eps = -1` curve is left opaque.
pub fn beta_cusp_level(l: u32, eps: Sign, flip_x: bool) -> SeriesValue {
    match eps {
        Sign::Plus => beta_cusp_fiber(l).into(),
        // z -> -z exchanges the two values of xi, so the class does not depend on it
        Sign::Minus => SeriesValue::atom(Atom::new(
            AtomTemplate::CuspMixed,
            2 * l + 1,
            0,
            Sign::Plus,
            if flip_x {
                AtomVariant::FlipInsideSquares
            } else {
                AtomVariant::TrivialAction
            },
        )),
    }
}

/// Class of `{overall (x^e + sum_K y^2) = xi}` for `K >= 1`.
pub fn beta_definite_fiber(e: u32, k: u32, overall: Sign, xi: Sign, variant: AtomVariant) -> Result<RatFunc> {
    if k == 0 || e % 2 == 1 {
        return Err(Error::InvalidParameter(
            "definite fibers need an even exponent and K >= 1".into(),
        ));
    }
    let _ = variant;
    if overall != xi {
        return Ok(RatFunc::zero());
    }
    Ok(beta_sphere(k, true))
}

/// A residual class with coefficient one.
pub fn make_residual(template: AtomTemplate, e: u32, k: u32, xi: Sign, variant: AtomVariant) -> SeriesValue {
    SeriesValue::atom(Atom::new(template, e, k, xi, variant))
}

/// Class of `{eps x^e + Q_{p,q} = xi}` under `action`.
///
/// Unacted pairs of opposite squares are removed first, each through
/// `beta({F + s t = xi}) = u^{d+1} + u beta({F = xi})` with `d` the number of variables of `F`.
/// What is left is either definite, a point, or an opaque mixed set.
pub fn beta_level_set(e: u32, eps: Sign, sig: QuadSig, xi: Sign, action: Action) -> Result<SeriesValue> {
    if e == 0 {
        return Err(Error::InvalidParameter("exponent must be positive".into()));
    }
    action.check_on(sig)?;
    if action == Action::FlipAll {
        return Err(Error::UnsupportedAction("level sets under the full sign change".into()));
    }
    if e % 2 == 1 && action == Action::FlipPower {
        return Err(Error::IncompatibleAction {
            action: action.to_string(),
            what: format!("the odd power x^{e}"),
        });
    }
    if e == 2 {
        return Ok(beta_y_fiber(sig.with_square(eps), xi, merged_action(action, eps))?.into());
    }
    let acted_plus = u32::from(action == Action::FlipPlusSquare);
    let acted_minus = u32::from(action == Action::FlipMinusSquare);
    let (up, um) = (sig.p - acted_plus, sig.q - acted_minus);
    let pairs = up.min(um);
    let vars = 1 + sig.rank() as i64;
    let prefix = (1..=pairs as i64).fold(RatFunc::zero(), |acc, i| &acc + &RatFunc::u_pow(vars - i));
    let plus = up - pairs + acted_plus;
    let minus = um - pairs + acted_minus;
    let residual = residual_class(e, eps, plus, minus, xi, action)?;
    Ok(&SeriesValue::from(prefix) + &residual.laurent_shift(pairs as i64))
}

/// `{eps x^e + sum_plus y^2 - sum_minus z^2 = xi}` with no unacted opposite pair left.
fn residual_class(e: u32, eps: Sign, plus: u32, minus: u32, xi: Sign, action: Action) -> Result<SeriesValue> {
    let acted = match action {
        Action::FlipPlusSquare => Some(Sign::Plus),
        Action::FlipMinusSquare => Some(Sign::Minus),
        _ => None,
    };
    let square_variant = |acted_sign: Option<Sign>, inside: Sign| match acted_sign {
        Some(s) if s == inside => AtomVariant::FlipInsideSquares,
        Some(_) => AtomVariant::FlipSecondarySquare,
        None if action == Action::FlipPower => AtomVariant::FlipOnPowerVariable,
        None => AtomVariant::TrivialAction,
    };
    if e.is_multiple_of(2) {
        let opposite = match eps {
            Sign::Plus => minus,
            Sign::Minus => plus,
        };
        if opposite == 0 {
            if eps != xi {
                return Ok(SeriesValue::zero());
            }
            let k = plus + minus;
            let fixed = !(k == 0 && action == Action::FlipPower);
            return Ok(beta_sphere(k, fixed).into());
        }
        // normalise to -x^e + sum_K y^2 - sum_J z^2 = xi
        let (k, j, xi_n, inside) = match eps {
            Sign::Minus => (plus, minus, xi, Sign::Plus),
            Sign::Plus => (minus, plus, -xi, Sign::Minus),
        };
        let atom = Atom::new(AtomTemplate::EvenMixed, e, k, xi_n, square_variant(acted, inside)).with_secondary(j);
        return Ok(SeriesValue::atom(atom));
    }
    if plus + minus == 0 {
        return Ok(beta_point(PointKind::Single).into());
    }
    // x -> -x makes the power coefficient +1; a global sign change then puts the larger group first
    let flip = minus > plus || (minus == plus && acted == Some(Sign::Minus));
    let (k, j, xi_n, inside) = if flip {
        (minus, plus, -xi, Sign::Minus)
    } else {
        (plus, minus, xi, Sign::Plus)
    };
    let _ = eps;
    let atom = Atom::new(AtomTemplate::OddMixed, e, k, xi_n, square_variant(acted, inside)).with_secondary(j);
    Ok(SeriesValue::atom(atom))
}
