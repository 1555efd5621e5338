//! Series values: a rational function plus opaque residual classes.
//!
//! Invariants:
//! - an atom stands for the class of one specific level set that no rule here evaluates
//! - atoms are never compared by value, only by key; two different keys are never assumed equal
//! - the atom map holds no zero coefficients

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::ratfunc::RatFunc;
use crate::sign::Sign;

/// Shape of a residual level set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomTemplate {
    /// `{-x^e + sum_K y^2 - sum_J z^2 = xi}`, `e` even.
    EvenMixed,
    /// `{x^e + sum_K y^2 - sum_J z^2 = xi}`, `e` odd.
    OddMixed,
    /// `{x^3 + sum_K y^2 = xi}` inside `R^(K+2)`.
    CubicMixed,
    /// `{x^3 + aux*z^4 + sum_K y^2 = xi}`.
    QuarticCubicMixed,
    /// `{x^2 z - z^e = xi}`, `e` odd.
    CuspMixed,
}

/// Which coordinate the involution flips on the residual set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomVariant {
    /// One of the `K` squares.
    FlipInsideSquares,
    /// The coordinate carrying the power term (or the extra ambient coordinate).
    FlipOnPowerVariable,
    TrivialAction,
    /// One of the `J` squares.
    FlipSecondarySquare,
}

/// Key of an unresolved residual class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub template: AtomTemplate,
    pub exponent: u32,
    pub k: u32,
    pub j: u32,
    /// Coefficient sign of the quartic term; `Plus` for templates without one.
    pub aux: Sign,
    pub xi: Sign,
    pub variant: AtomVariant,
}

impl Atom {
    pub fn new(template: AtomTemplate, exponent: u32, k: u32, xi: Sign, variant: AtomVariant) -> Atom {
        Atom {
            template,
            exponent,
            k,
            j: 0,
            aux: Sign::Plus,
            xi,
            variant,
        }
    }

    pub fn with_secondary(mut self, j: u32) -> Atom {
        self.j = j;
        self
    }

    pub fn with_aux(mut self, aux: Sign) -> Atom {
        self.aux = aux;
        self
    }
}

impl fmt::Display for AtomVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtomVariant::FlipInsideSquares => "flip-square",
            AtomVariant::FlipOnPowerVariable => "flip-power",
            AtomVariant::TrivialAction => "trivial",
            AtomVariant::FlipSecondarySquare => "flip-secondary-square",
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(e={}, K={}", self.template, self.exponent, self.k)?;
        if self.j != 0 {
            write!(f, ", J={}", self.j)?;
        }
        if self.template == AtomTemplate::QuarticCubicMixed {
            write!(f, ", eps={}", self.aux)?;
        }
        write!(f, ", xi={}, {})", self.xi, self.variant)
    }
}

/// `rat + sum coeff_i * atom_i`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SeriesValue {
    pub rat: RatFunc,
    atoms: BTreeMap<Atom, RatFunc>,
}

impl SeriesValue {
    pub fn zero() -> Self {
        SeriesValue::default()
    }

    pub fn atom(a: Atom) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(a, RatFunc::one());
        SeriesValue {
            rat: RatFunc::zero(),
            atoms,
        }
    }

    pub fn atoms(&self) -> &BTreeMap<Atom, RatFunc> {
        &self.atoms
    }

    pub fn is_atom_free(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The rational part when there are no atoms.
    pub fn as_rat(&self) -> Option<&RatFunc> {
        self.is_atom_free().then_some(&self.rat)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return SeriesValue::zero();
        }
        SeriesValue {
            rat: &self.rat * c,
            atoms: self.atoms.iter().map(|(a, v)| (*a, v * c)).collect(),
        }
    }

    pub fn laurent_shift(&self, k: i64) -> Self {
        SeriesValue {
            rat: self.rat.laurent_shift(k),
            atoms: self.atoms.iter().map(|(a, v)| (*a, v.laurent_shift(k))).collect(),
        }
    }

    fn combine(&self, other: &SeriesValue, sign: i128) -> Self {
        let rat = if sign > 0 {
            &self.rat + &other.rat
        } else {
            &self.rat - &other.rat
        };
        let mut atoms = self.atoms.clone();
        for (a, v) in &other.atoms {
            let v = v.scale(sign);
            let slot = atoms.entry(*a).or_insert_with(RatFunc::zero);
            *slot = &*slot + &v;
        }
        atoms.retain(|_, v| !v.is_zero());
        SeriesValue { rat, atoms }
    }
}

impl From<RatFunc> for SeriesValue {
    fn from(rat: RatFunc) -> Self {
        SeriesValue {
            rat,
            atoms: BTreeMap::new(),
        }
    }
}

impl Add for &SeriesValue {
    type Output = SeriesValue;
    fn add(self, rhs: &SeriesValue) -> SeriesValue {
        self.combine(rhs, 1)
    }
}

impl Sub for &SeriesValue {
    type Output = SeriesValue;
    fn sub(self, rhs: &SeriesValue) -> SeriesValue {
        self.combine(rhs, -1)
    }
}

impl Add for SeriesValue {
    type Output = SeriesValue;
    fn add(self, rhs: SeriesValue) -> SeriesValue {
        self.combine(&rhs, 1)
    }
}

impl Sub for SeriesValue {
    type Output = SeriesValue;
    fn sub(self, rhs: SeriesValue) -> SeriesValue {
        self.combine(&rhs, -1)
    }
}

impl Neg for &SeriesValue {
    type Output = SeriesValue;
    fn neg(self) -> SeriesValue {
        SeriesValue::zero().combine(self, -1)
    }
}

impl fmt::Display for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.rat.is_zero() || self.atoms.is_empty() {
            write!(f, "{}", self.rat)?;
            first = false;
        }
        for (a, c) in &self.atoms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c == RatFunc::one() {
                write!(f, "[{a}]")?;
            } else {
                write!(f, "({c})*[{a}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesValue({self})")
    }
}
