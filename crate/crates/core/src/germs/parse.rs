//! Polynomial text to normal form.
//!
//! Invariants:
//! - variables are `x1 .. xn` with no unused index in between
//! - every coefficient is `+1` or `-1` after like terms are collected
//! - matching is up to permutation of `x2 .. xn`; `x1` is pinned

use std::collections::BTreeMap;

use super::{Family, GermNormalForm};
use crate::error::{Error, Result};
use crate::sign::Sign;

/// Exponent vector as `(variable index, exponent)` pairs in increasing index order.
type Mono = Vec<(u32, u32)>;

/// Parses a germ, either as a polynomial (`x1^2 + x2^4 - x3^2`) or in the structured form
/// `A k=3 eps=+1 eta=-1 p=1 q=2`.
pub fn parse_germ(text: &str) -> Result<GermNormalForm> {
    let t = text.trim();
    match t.chars().next() {
        Some(c) if c.is_ascii_alphabetic() && c != 'x' => parse_structured(t),
        _ => match_template(&parse_poly(t)?),
    }
}

fn parse_structured(t: &str) -> Result<GermNormalForm> {
    let mut words = t.split_whitespace();
    let family: Family = words.next().unwrap_or_default().parse()?;
    let (mut k, mut eps, mut eta, mut p, mut q) = (None, Sign::Plus, None, 0, 0);
    for w in words {
        let (key, val) = w
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, found {w:?}")))?;
        let num = || {
            val.parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("{key} must be a nonnegative integer")))
        };
        match key {
            "k" => k = Some(num()?),
            "eps" => eps = val.parse()?,
            "eta" => eta = Some(val.parse()?),
            "p" => p = num()?,
            "q" => q = num()?,
            other => return Err(Error::InvalidParameter(format!("unknown key {other:?}"))),
        }
    }
    let k = match (k, family) {
        (Some(k), _) => k,
        (None, Family::E6) => 6,
        (None, Family::E7) => 7,
        (None, Family::E8) => 8,
        (None, Family::F4) => 4,
        (None, _) => return Err(Error::InvalidParameter("missing k".into())),
    };
    GermNormalForm::new(family, k, eps, eta, p, q)
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax {
                pos: start,
                msg: "number too large".into(),
            })
    }
}

/// Parses into collected monomials with integer coefficients.
fn parse_poly(text: &str) -> Result<BTreeMap<Mono, i64>> {
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut out: BTreeMap<Mono, i64> = BTreeMap::new();
    if lx.peek().is_none() {
        return Err(lx.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let sign = match lx.peek() {
            Some(b'+') => {
                lx.pos += 1;
                1
            }
            Some(b'-') => {
                lx.pos += 1;
                -1
            }
            None => break,
            Some(_) if first => 1,
            Some(c) => return Err(lx.err(format!("expected + or -, found {:?}", c as char))),
        };
        first = false;
        let (coeff, mono) = parse_term(&mut lx)?;
        *out.entry(mono).or_insert(0) += sign * coeff;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

fn parse_term(lx: &mut Lexer) -> Result<(i64, Mono)> {
    let mut coeff: i64 = 1;
    let mut vars: BTreeMap<u32, u32> = BTreeMap::new();
    let mut any = false;
    loop {
        match lx.peek() {
            Some(b'x') => {
                lx.pos += 1;
                let at = lx.pos;
                let idx = lx.number()?;
                if idx == 0 || idx > 64 {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: format!("variable index {idx} out of range 1..=64"),
                    });
                }
                let e = exponent(lx)?;
                *vars.entry(idx as u32).or_insert(0) += e;
            }
            Some(c) if c.is_ascii_digit() => {
                let c = lx.number()? as i64;
                let e = exponent(lx)?;
                coeff = coeff
                    .checked_mul(c.checked_pow(e).ok_or_else(|| lx.err("coefficient too large"))?)
                    .ok_or_else(|| lx.err("coefficient too large"))?;
            }
            Some(b'*') if any => {
                lx.pos += 1;
                continue;
            }
            Some(c) if !any => return Err(lx.err(format!("expected a term, found {:?}", c as char))),
            None if !any => return Err(lx.err("expected a term")),
            _ => break,
        }
        any = true;
    }
    Ok((coeff, vars.into_iter().collect()))
}

fn exponent(lx: &mut Lexer) -> Result<u32> {
    if lx.peek() == Some(b'^') {
        lx.pos += 1;
        let e = lx.number()?;
        if e == 0 || e > 1000 {
            return Err(lx.err(format!("exponent {e} out of range 1..=1000")));
        }
        Ok(e as u32)
    } else {
        Ok(1)
    }
}

fn not_template(msg: impl Into<String>) -> Error {
    Error::NotATemplate(msg.into())
}

fn show(m: &Mono) -> String {
    m.iter()
        .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Matches collected monomials against the normal-form templates.
fn match_template(poly: &BTreeMap<Mono, i64>) -> Result<GermNormalForm> {
    for (m, &c) in poly {
        if m.is_empty() {
            return Err(not_template("the germ has a constant term"));
        }
        if c != 1 && c != -1 {
            return Err(Error::NonUnitCoefficient(c));
        }
    }
    let n = poly.keys().flatten().map(|&(v, _)| v).max().unwrap_or(0);
    for v in 1..=n {
        if !poly.keys().flatten().any(|&(w, _)| w == v) {
            return Err(Error::Syntax {
                pos: 0,
                msg: format!("variable x{v} is unused but x{n} appears"),
            });
        }
    }
    if n == 0 {
        return Err(not_template("the germ is zero"));
    }
    for m in poly.keys() {
        if m.iter().any(|&(v, e)| v == 1 && e % 2 == 1) {
            return Err(Error::NotInvariant(format!("monomial {} is odd in x1", show(m))));
        }
    }

    let sign_of = |c: i64| if c > 0 { Sign::Plus } else { Sign::Minus };
    let mut squares: BTreeMap<u32, Sign> = BTreeMap::new();
    let mut special: Vec<(Mono, Sign)> = Vec::new();
    for (m, &c) in poly {
        if m.len() == 1 && m[0].1 == 2 {
            squares.insert(m[0].0, sign_of(c));
        } else {
            special.push((m.clone(), sign_of(c)));
        }
    }

    // a variable is either a square or part of the higher terms, never both
    let special_vars: Vec<u32> = {
        let mut v: Vec<u32> = special.iter().flat_map(|(m, _)| m.iter().map(|&(x, _)| x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for v in &special_vars {
        if squares.contains_key(v) {
            return Err(not_template(format!(
                "x{v} appears both as a square and in a higher term"
            )));
        }
    }

    let count = |skip: Option<u32>| {
        squares
            .iter()
            .filter(|(v, _)| Some(**v) != skip)
            .fold((0u32, 0u32), |(p, q), (_, s)| match s {
                Sign::Plus => (p + 1, q),
                Sign::Minus => (p, q + 1),
            })
    };
    let x1_square = squares.get(&1).copied();
    let single = |m: &Mono| (m.len() == 1).then(|| m[0]);
    let need_x1_square = || x1_square.ok_or_else(|| not_template("expected the square x1^2"));
    let refuse_x1_square = || {
        if x1_square.is_some() {
            Err(not_template("x1 may not appear as a square in this template"))
        } else {
            Ok(())
        }
    };
    let plus_one = |s: Sign, m: &Mono| {
        if s == Sign::Plus {
            Ok(())
        } else {
            Err(not_template(format!("the term {} must have coefficient +1", show(m))))
        }
    };

    match special.as_slice() {
        [] => {
            // A_1: a nondegenerate quadratic form in at least two variables
            let eta = need_x1_square()?;
            if n < 2 {
                return Err(not_template("a single square x1^2 is not a simple germ of this kind"));
            }
            let (p, q) = count(None);
            let eps = if p - u32::from(eta == Sign::Plus) >= 1 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let (p, q) = match eps {
                Sign::Plus => (p - 1, q),
                Sign::Minus => (p, q - 1),
            };
            GermNormalForm::new(Family::A, 1, eps, Some(eta), p, q)
        }
        [(m, s)] => match single(m) {
            Some((v, e)) if v != 1 => {
                let eta = need_x1_square()?;
                let (p, q) = count(None);
                // e == 1 gives A_0, e >= 3 gives A_{e-1}
                GermNormalForm::new(Family::A, e - 1, *s, Some(eta), p, q)
            }
            Some((1, e)) if e >= 4 => {
                refuse_x1_square()?;
                let (p, q) = count(None);
                GermNormalForm::new(Family::B, e / 2, *s, None, p, q)
            }
            _ => Err(not_template(format!(
                "no template has the single higher term {}; expected A_k (x2^(k+1)) or B_k (x1^(2k))",
                show(m)
            ))),
        },
        [(m1, s1), (m2, s2)] => {
            let pair = [(m1, *s1), (m2, *s2)];
            let find = |pred: &dyn Fn(&Mono) -> bool| pair.iter().find(|(m, _)| pred(m)).copied();
            // C_k: x1^2 x_j + eps x_j^k
            if let Some((mc, sc)) = find(&|m: &Mono| m.len() == 2 && m[0] == (1, 2) && m[1].1 == 1) {
                let j = mc[1].0;
                let (mp, sp) = find(&|m: &Mono| m.len() == 1 && m[0].0 == j)
                    .ok_or_else(|| not_template("C_k needs the power x_j^k of the variable in x1^2*x_j"))?;
                plus_one(sc, mc)?;
                refuse_x1_square()?;
                let k = mp[0].1;
                let (p, q) = count(None);
                return GermNormalForm::new(Family::C, k, sp, None, p, q)
                    .map_err(|e| not_template(format!("C_k template: {e}")));
            }
            // F4: eps x1^4 + x_a^3
            if let Some((m4, s4)) = find(&|m: &Mono| m.as_slice() == [(1, 4)]) {
                let (m3, s3) = find(&|m: &Mono| m.len() == 1 && m[0].0 != 1 && m[0].1 == 3)
                    .ok_or_else(|| not_template("with x1^4 the other term must be a cube x_a^3 (F4)"))?;
                let _ = m4;
                plus_one(s3, m3)?;
                refuse_x1_square()?;
                let (p, q) = count(None);
                return GermNormalForm::new(Family::F4, 4, s4, None, p, q)
                    .map_err(|e| not_template(format!("F4 template: {e}")));
            }
            let eta = need_x1_square()?;
            let (p, q) = count(None);
            // D_k: x_a^2 x_b + eps x_b^{k-1}
            if let Some((md, sd)) =
                find(&|m: &Mono| m.len() == 2 && ((m[0].1 == 2 && m[1].1 == 1) || (m[0].1 == 1 && m[1].1 == 2)))
            {
                let b = if md[0].1 == 1 { md[0].0 } else { md[1].0 };
                let (mp, sp) = find(&|m: &Mono| m.len() == 1 && m[0].0 == b && m[0].1 >= 3)
                    .ok_or_else(|| not_template("D_k needs the power x_b^(k-1) of the linear variable in x_a^2*x_b"))?;
                plus_one(sd, md)?;
                return GermNormalForm::new(Family::D, mp[0].1 + 1, sp, Some(eta), p, q);
            }
            let (mc, sc) = find(&|m: &Mono| m.len() == 1 && m[0].1 == 3)
                .ok_or_else(|| not_template(format!("no template has the terms {} and {}", show(m1), show(m2))))?;
            plus_one(sc, mc)?;
            let a = mc[0].0;
            let (mo, so) = if std::ptr::eq(mc, m1) { (m2, *s2) } else { (m1, *s1) };
            match mo.as_slice() {
                [(b, 4)] if *b != a => GermNormalForm::new(Family::E6, 6, so, Some(eta), p, q),
                [(b, 5)] if *b != a => {
                    plus_one(so, mo)?;
                    GermNormalForm::new(Family::E8, 8, Sign::Plus, Some(eta), p, q)
                }
                [(x, 1), (y, 3)] | [(y, 3), (x, 1)] if *x == a && *y != a => {
                    plus_one(so, mo)?;
                    GermNormalForm::new(Family::E7, 7, Sign::Plus, Some(eta), p, q)
                }
                _ => Err(not_template(format!(
                    "with the cube {} expected x_b^4 (E6), x_a*x_b^3 (E7) or x_b^5 (E8), found {}",
                    show(mc),
                    show(mo)
                ))),
            }
        }
        _ => Err(not_template(format!(
            "{} higher-order terms; every template has at most two",
            special.len()
        ))),
    }
}
