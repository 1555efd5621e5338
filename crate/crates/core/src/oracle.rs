//! Independent evaluation of the arc classes by stratifying the jet equations and recursing on
//! the degree.
//!
//! A stratum where the first coefficient of the quadratic variables is nonzero lies over `Y \ 0`
//! and every later equation is solved linearly. A stratum where it vanishes drops two degrees
//! and multiplies by the class of the freed coefficients. The recursion stops at degree 0, 1, 2
//! or at the degree where the power term enters.
//!
//! Invariants:
//! - nothing here calls the closed-form quadric classes or coefficient formulas; only the
//!   arithmetic layer and the leaf values (points, affine spaces, spheres) are shared
//! - a trace's steps sum to its total

use std::fmt;

use crate::arccoef::{validity_bound, CoeffChannel};
use crate::error::{Error, Result};
use crate::germs::{Family, GermNormalForm};
use crate::grim::{beta_affine, beta_point, beta_sphere, Action, PointKind, QuadSig};
use crate::qring::{Atom, AtomTemplate, AtomVariant, IntPoly, RatFunc, SeriesValue};
use crate::sign::Sign;

/// One stratum's contribution.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub label: String,
    pub value: SeriesValue,
}

/// The strata visited by one evaluation and their sum.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RecursionTrace {
    pub steps: Vec<TraceStep>,
    pub total: SeriesValue,
}

impl RecursionTrace {
    fn push(&mut self, label: impl Into<String>, value: SeriesValue) {
        self.total = &self.total + &value;
        self.steps.push(TraceStep {
            label: label.into(),
            value,
        });
    }
}

impl fmt::Display for RecursionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "  {}: {}", s.label, s.value)?;
        }
        write!(f, "  total: {}", self.total)
    }
}

fn u(e: i64) -> RatFunc {
    RatFunc::u_pow(e)
}

fn point() -> RatFunc {
    beta_point(PointKind::Single)
}

fn punctured_line(x: &RatFunc) -> RatFunc {
    x * &RatFunc::from_poly(IntPoly::u_minus_one())
}

fn validate(sig: QuadSig, action: Action) -> Result<()> {
    let bad = match action {
        Action::FlipPlusSquare => sig.p == 0,
        Action::FlipMinusSquare => sig.q == 0,
        Action::FlipPower => true,
        _ => false,
    };
    if bad {
        return Err(Error::IncompatibleAction {
            action: action.to_string(),
            what: format!("the quadric of signature ({}, {})", sig.p, sig.q),
        });
    }
    Ok(())
}

/// `[{Q_{p,q} = 0}]` by peeling off hyperbolic pairs down to `{y^2 = |z|^2}`, the cone over a
/// sphere.
pub fn oracle_y(sig: QuadSig, action: Action) -> Result<RatFunc> {
    validate(sig, action)?;
    let (sig, action) = if sig.q < sig.p {
        let a = match action {
            Action::FlipPlusSquare => Action::FlipMinusSquare,
            Action::FlipMinusSquare => Action::FlipPlusSquare,
            other => other,
        };
        (sig.swapped(), a)
    } else {
        (sig, action)
    };
    if sig.p == 0 {
        return Ok(point());
    }
    let rank = sig.rank() as i64;
    let pairs = (2..=sig.p as i64).fold(RatFunc::zero(), |acc, i| &acc + &u(rank + 1 - i));
    let link = if sig.p == sig.q {
        let swapped = matches!(action, Action::FlipPlusSquare | Action::FlipMinusSquare);
        beta_point(if swapped {
            PointKind::TwoSwapped
        } else {
            PointKind::TwoFixed
        })
    } else {
        beta_sphere(sig.q - sig.p, action != Action::FlipPlusSquare)
    };
    let base = &point() + &punctured_line(&link);
    Ok(&pairs + &(&base * &u(sig.p as i64 - 1)))
}

pub fn oracle_y_punctured(sig: QuadSig, action: Action) -> Result<RatFunc> {
    Ok(&oracle_y(sig, action)? - &point())
}

/// `[{Q_{p,q} = xi}]` as the difference of two punctured cones over `R*`.
pub fn oracle_y_fiber(sig: QuadSig, xi: Sign, action: Action) -> Result<RatFunc> {
    if action == Action::FlipAll {
        return Err(Error::UnsupportedAction(
            "level sets of a quadric under the full sign change".into(),
        ));
    }
    validate(sig, action)?;
    let d = &oracle_y(sig.with_square(-xi), action)? - &oracle_y(sig, action)?;
    Ok(d.div_poly(&IntPoly::u_minus_one()))
}

/// `[{eps x^e + Q = 0}]`; even exponents go through one blow-up of the origin per step.
fn oracle_diag_zero(e: u32, sig: QuadSig, eps: Sign, action: Action) -> Result<RatFunc> {
    if e % 2 == 1 {
        let y = oracle_y(sig, action)?;
        let e = e as i128;
        return Ok(&(&beta_affine(sig.rank()) - &y.scale(e)) + &point().scale(e));
    }
    if e == 2 {
        let merged = match action {
            Action::FlipPower => Action::flip_square(eps),
            other => other,
        };
        return oracle_y(sig.with_square(eps), merged);
    }
    // on the chart x = s, y = s v the power flip becomes a flip of everything and back again
    let (chart, exceptional) = match action {
        Action::FlipPower => (Action::FlipAll, Action::FlipAll),
        Action::FlipAll => (Action::FlipPower, Action::Trivial),
        other => (other, other),
    };
    let rest = oracle_diag_zero(e - 2, sig, eps, chart)?;
    Ok(&(&rest - &oracle_y(sig, exceptional)?) + &point())
}

/// `[{eps x^e + Q = xi}]`, removing one unacted opposite pair at a time.
fn oracle_level(e: u32, eps: Sign, sig: QuadSig, xi: Sign, action: Action) -> Result<SeriesValue> {
    if e == 2 {
        let merged = match action {
            Action::FlipPower => Action::flip_square(eps),
            other => other,
        };
        return Ok(oracle_y_fiber(sig.with_square(eps), xi, merged)?.into());
    }
    let free_plus = sig.p - u32::from(action == Action::FlipPlusSquare);
    let free_minus = sig.q - u32::from(action == Action::FlipMinusSquare);
    if free_plus > 0 && free_minus > 0 {
        // {F + s t = xi}: t is determined where s != 0, and s = 0 leaves {F = xi} times a line
        let vars = sig.rank() as i64 - 1;
        let inner = oracle_level(e, eps, QuadSig::new(sig.p - 1, sig.q - 1), xi, action)?;
        return Ok(&SeriesValue::from(u(vars + 1)) + &inner.laurent_shift(1));
    }
    let acted = match action {
        Action::FlipPlusSquare => Some(Sign::Plus),
        Action::FlipMinusSquare => Some(Sign::Minus),
        _ => None,
    };
    let variant = |group: Sign| match acted {
        Some(s) if s == group => AtomVariant::FlipInsideSquares,
        Some(_) => AtomVariant::FlipSecondarySquare,
        None if action == Action::FlipPower => AtomVariant::FlipOnPowerVariable,
        None => AtomVariant::TrivialAction,
    };
    let (p, q) = (sig.p, sig.q);
    if e.is_multiple_of(2) {
        let against = if eps == Sign::Plus { q } else { p };
        if against == 0 {
            // eps (x^e + |y|^2) = xi: empty or a sphere
            if eps != xi {
                return Ok(SeriesValue::zero());
            }
            let fixed = p + q > 0 || action != Action::FlipPower;
            return Ok(beta_sphere(p + q, fixed).into());
        }
        let atom = if eps == Sign::Minus {
            Atom::new(AtomTemplate::EvenMixed, e, p, xi, variant(Sign::Plus)).with_secondary(q)
        } else {
            Atom::new(AtomTemplate::EvenMixed, e, q, -xi, variant(Sign::Minus)).with_secondary(p)
        };
        return Ok(SeriesValue::atom(atom));
    }
    if p + q == 0 {
        return Ok(point().into());
    }
    let atom = if q > p || (q == p && acted == Some(Sign::Minus)) {
        Atom::new(AtomTemplate::OddMixed, e, q, -xi, variant(Sign::Minus)).with_secondary(p)
    } else {
        Atom::new(AtomTemplate::OddMixed, e, p, xi, variant(Sign::Plus)).with_secondary(q)
    };
    Ok(SeriesValue::atom(atom))
}

/// `[{x^2 z + eps z^{2l+1} = 0}]`: the line `z = 0` plus, for `eps = -1`, the two branches
/// `x = +-z^l` without the origin.
fn oracle_curve_zero(eps: Sign, flip_x: bool) -> RatFunc {
    let line = beta_affine(1);
    match eps {
        Sign::Plus => line,
        Sign::Minus => {
            let ends = beta_point(if flip_x {
                PointKind::TwoSwapped
            } else {
                PointKind::TwoFixed
            });
            &line + &punctured_line(&ends)
        }
    }
}

/// `[{x^2 z + eps z^{2l+1} = xi}]`: a graph over the `x` line when `eps = 1`.
fn oracle_cusp_level(l: u32, eps: Sign, flip_x: bool) -> SeriesValue {
    match eps {
        Sign::Plus => beta_affine(1).into(),
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

/// Actions on the quadratic part and on the top-degree set, and whether the C/D curve has `x`
/// flipped.
fn actions(g: &GermNormalForm) -> (Action, Action, bool) {
    match g.family {
        Family::B | Family::F4 => (Action::Trivial, Action::FlipPower, false),
        Family::C => (Action::Trivial, Action::Trivial, true),
        _ => {
            let a = Action::flip_square(g.eta().expect("family has an acted square"));
            (a, a, false)
        }
    }
}

/// The quadric data every recursion needs.
struct Quadric {
    rank: i64,
    y: RatFunc,
    yp: RatFunc,
    fiber: Option<RatFunc>,
}

impl Quadric {
    fn new(sig: QuadSig, action: Action, xi: Option<Sign>) -> Result<Quadric> {
        Ok(Quadric {
            rank: sig.rank() as i64,
            y: oracle_y(sig, action)?,
            yp: oracle_y_punctured(sig, action)?,
            fiber: xi.map(|x| oracle_y_fiber(sig, x, action)).transpose()?,
        })
    }
}

fn check(g: &GermNormalForm, m: u32, families: &[Family]) -> Result<()> {
    if !families.contains(&g.family) {
        return Err(Error::InvalidParameter(format!("{g} is not handled by this recursion")));
    }
    let bound = validity_bound(g);
    if m == 0 || bound.is_some_and(|b| m > b) {
        return Err(Error::OutOfRange {
            germ: g.to_string(),
            m,
            bound: bound.unwrap_or(u32::MAX),
        });
    }
    Ok(())
}

/// Degrees 0 and 1, shared by every germ of multiplicity two.
fn low_degree(n: u32, m: u32, xi: Option<Sign>) -> RatFunc {
    match (m, xi) {
        (0, None) => point(),
        (0, Some(_)) | (1, Some(_)) => RatFunc::zero(),
        _ => RatFunc::u_pow_over_u_minus_one(n as i64 + 1),
    }
}

/// `[A_m^0]` (`xi = None`) or `[A_m^xi]` for the A and B families.
pub fn oracle_ab(g: &GermNormalForm, m: u32, xi: Option<Sign>) -> Result<RecursionTrace> {
    check(g, m, &[Family::A, Family::B])?;
    let mut t = RecursionTrace::default();
    let n = g.n;
    if g.family == Family::A && g.k == 0 {
        // every equation solves for one coefficient of the linear variable
        t.push(
            format!("{m} linear equations"),
            RatFunc::u_pow_over_u_minus_one((m * n - m + 1) as i64).into(),
        );
        return Ok(t);
    }
    if g.family == Family::A && g.k == 1 && m == 2 {
        let full = g.quadratic_signature();
        let a = Action::flip_square(g.eta().unwrap());
        let quadric = match xi {
            None => oracle_y(full, a)?,
            Some(x) => oracle_y_fiber(full, x, a)?,
        };
        t.push("quadratic form on the linear terms", (&quadric * &u(n as i64)).into());
        return Ok(t);
    }
    let (quad, top, _) = actions(g);
    let qd = Quadric::new(g.sig(), quad, xi)?;
    let top_degree = match g.family {
        Family::B => Some(2 * g.k),
        _ if g.k % 2 == 1 && g.k >= 3 => Some(g.k + 1),
        _ => None,
    };
    let reaches_top = top_degree == Some(m);
    let descent = 2 + qd.rank;
    let mut level = m;
    let mut shift = 0i64;
    loop {
        let tag = |what: &str| format!("depth {}: {what}", shift / descent);
        if level <= 1 {
            t.push(tag("low degree"), low_degree(n, level, xi).laurent_shift(shift).into());
            break;
        }
        if level == 2 && reaches_top {
            let set = match xi {
                None => oracle_diag_zero(m, g.sig(), g.eps, top)?.into(),
                Some(x) => oracle_level(m, g.eps, g.sig(), x, top)?,
            };
            t.push(tag("power term enters"), set.laurent_shift(shift + qd.rank + 1));
            break;
        }
        if level == 2 {
            if let Some(f) = &qd.fiber {
                t.push(tag("quadric level set"), (f * &u(shift + qd.rank + 2)).into());
                break;
            }
        }
        let e = (level as i64 - 1) * qd.rank + 2;
        t.push(
            tag("first quadratic coefficient nonzero"),
            (&qd.yp * &u(shift + e)).into(),
        );
        level -= 2;
        shift += descent;
    }
    Ok(t)
}

/// `[A_m^0]` or `[A_m^xi]` for the C and D families.
pub fn oracle_cd(g: &GermNormalForm, m: u32, xi: Option<Sign>) -> Result<RecursionTrace> {
    check(g, m, &[Family::C, Family::D])?;
    let mut t = RecursionTrace::default();
    let n = g.n;
    let (quad, top, flip_x) = actions(g);
    let qd = Quadric::new(g.sig(), quad, xi)?;
    let top_degree = if g.family == Family::C { g.k } else { g.k - 1 };
    let reaches_top = m == top_degree;
    let descent = 3 + qd.rank;
    let mut level = m;
    let mut shift = 0i64;
    loop {
        let tag = |what: &str| format!("depth {}: {what}", shift / descent);
        if level <= 1 {
            t.push(tag("low degree"), low_degree(n, level, xi).laurent_shift(shift).into());
            break;
        }
        if reaches_top && m % 2 == 1 && level == 3 {
            let e = 2 * qd.rank + 5;
            t.push(
                tag("first quadratic coefficient nonzero"),
                (&qd.yp * &u(shift + e)).into(),
            );
            let curve = match xi {
                None => oracle_curve_zero(g.eps, flip_x).into(),
                Some(_) => oracle_cusp_level(m / 2, g.eps, flip_x),
            };
            t.push(tag("plane curve"), curve.laurent_shift(shift + 4 + 2 * qd.rank));
            break;
        }
        if reaches_top && m.is_multiple_of(2) && level == 2 {
            let set = match xi {
                None => oracle_diag_zero(m, g.sig(), g.eps, top)?.into(),
                Some(x) => oracle_level(m, g.eps, g.sig(), x, top)?,
            };
            t.push(tag("power term enters"), set.laurent_shift(shift + qd.rank + 3));
            break;
        }
        if level == 2 {
            if let Some(f) = &qd.fiber {
                t.push(tag("quadric level set"), (f * &u(shift + qd.rank + 4)).into());
                break;
            }
        }
        let lv = level as i64;
        t.push(
            tag("first quadratic coefficient nonzero"),
            (&qd.yp * &u(shift + (lv - 1) * qd.rank + lv + 2)).into(),
        );
        t.push(
            tag("first square coefficient nonzero"),
            u(shift + lv * (1 + qd.rank) - qd.rank + 2).into(),
        );
        level -= 2;
        shift += descent;
    }
    Ok(t)
}

/// `[A_m^0]` or `[A_m^xi]` for E6 and F4, `m <= 4`, and degree one of E7 and E8.
pub fn oracle_ef(g: &GermNormalForm, m: u32, xi: Option<Sign>) -> Result<RecursionTrace> {
    check(g, m, &[Family::E6, Family::E7, Family::E8, Family::F4])?;
    let mut t = RecursionTrace::default();
    let n = g.n as i64;
    if m == 1 {
        t.push("low degree", low_degree(g.n, 1, xi).into());
        return Ok(t);
    }
    let (quad, top, _) = actions(g);
    let qd = Quadric::new(g.sig(), quad, xi)?;
    let pp = qd.rank;
    match m {
        2 => {
            let quadric = qd.fiber.as_ref().unwrap_or(&qd.y);
            t.push("quadric", (quadric * &u(2 * n - pp)).into());
        }
        3 => {
            t.push(
                "first quadratic coefficient nonzero",
                (&qd.yp * &u(3 * n - pp - 1)).into(),
            );
            // the cubic fixes the first coefficient of the cube variable: zero, or the real cube root
            t.push("cube term", RatFunc::u_pow_over_u_minus_one(3 * n - pp).into());
        }
        _ => {
            t.push(
                "first quadratic coefficient nonzero",
                (&qd.yp * &u(4 * n - pp - 2)).into(),
            );
            let set = match xi {
                None => oracle_diag_zero(4, g.sig(), g.eps, top)?.into(),
                Some(x) => oracle_level(4, g.eps, g.sig(), x, top)?,
            };
            t.push("quartic term enters", set.laurent_shift(4 * n - 2 * pp - 2));
        }
    }
    Ok(t)
}

/// The class selected by `ch`, through the recursion for the germ's family.
pub fn oracle_coefficient(g: &GermNormalForm, m: u32, ch: CoeffChannel) -> Result<RecursionTrace> {
    let run = |m: u32, xi: Option<Sign>| match g.family {
        Family::A | Family::B => oracle_ab(g, m, xi),
        Family::C | Family::D => oracle_cd(g, m, xi),
        _ => oracle_ef(g, m, xi),
    };
    let lift = |m: u32| -> Result<RecursionTrace> {
        check(g, m, &[g.family])?;
        let below = if m == 1 {
            let mut t = RecursionTrace::default();
            t.push("point", point().into());
            t
        } else {
            run(m - 1, None)?
        };
        let mut t = RecursionTrace::default();
        for s in below.steps {
            t.push(format!("lifted {}", s.label), s.value.laurent_shift(g.n as i64));
        }
        Ok(t)
    };
    match ch {
        CoeffChannel::Zero => run(m, None),
        CoeffChannel::Sign(xi) => run(m, Some(xi)),
        CoeffChannel::Lift => lift(m),
        CoeffChannel::Net => {
            let mut t = lift(m)?;
            for s in run(m, None)?.steps {
                t.push(format!("minus {}", s.label), -&s.value);
            }
            Ok(t)
        }
    }
}
