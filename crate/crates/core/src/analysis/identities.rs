//! Functional equations relating `f` to the merge maps `f01`, `f02`, `f12`.
//!
//! Both sides are evaluated in exact rational arithmetic. Wherever `1 - x`
//! appears as an argument it is the digitwise complement of `x` (each digit
//! `d` replaced by `2 - d`). For a terminating `x` that expansion ends in 2s,
//! and `f` is applied to it as written: at ternary-rational points `f` jumps,
//! so folding `1 - x` to its terminating form first would evaluate `f` on the
//! other side of the discontinuity.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{half, int, ratio, Rational};
use crate::transducer::{builtin, eval, DigitMap};
use crate::trit::TernaryRep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// `f(x) = 2x - 3 f01(x)`
    Ff2,
    /// `f(x) = 3/2 - x - 3 f12(x)`
    Ff3,
    /// `f(x) = x/2 + 3/2 f02(x)`
    Ff4,
    /// `f(x) - f(1-x) = f01(x) - f12(x)`
    Ff5,
    /// `f(x) + f(1-x) = 1/2 + 3 f02(x)`
    Ff6,
    /// `f01(x) + f02(x) + f12(x) = 1/2`
    Ff7,
    /// `2 f01(x) + f02(x) = x`
    Ff8,
    /// `f01(x) - f12(x) = x - 1/2`
    Ff9,
    /// `f(x) - f(1-x) = x - 1/2`
    Symmetry,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Ff2,
        Identity::Ff3,
        Identity::Ff4,
        Identity::Ff5,
        Identity::Ff6,
        Identity::Ff7,
        Identity::Ff8,
        Identity::Ff9,
        Identity::Symmetry,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::Ff2 => "ff2",
            Identity::Ff3 => "ff3",
            Identity::Ff4 => "ff4",
            Identity::Ff5 => "ff5",
            Identity::Ff6 => "ff6",
            Identity::Ff7 => "ff7",
            Identity::Ff8 => "ff8",
            Identity::Ff9 => "ff9",
            Identity::Symmetry => "thm",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Identity::Ff2 => "f(x) = 2x - 3f01(x)",
            Identity::Ff3 => "f(x) = 3/2 - x - 3f12(x)",
            Identity::Ff4 => "f(x) = x/2 + 3/2 f02(x)",
            Identity::Ff5 => "f(x) - f(1-x) = f01(x) - f12(x)",
            Identity::Ff6 => "f(x) + f(1-x) = 1/2 + 3f02(x)",
            Identity::Ff7 => "f01(x) + f02(x) + f12(x) = 1/2",
            Identity::Ff8 => "2f01(x) + f02(x) = x",
            Identity::Ff9 => "f01(x) - f12(x) = x - 1/2",
            Identity::Symmetry => "f(x) - f(1-x) = x - 1/2",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub x: TernaryRep,
    pub lhs: Rational,
    pub rhs: Rational,
    /// `lhs - rhs`
    pub residual: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Values of every map an identity may reference, at one point.
struct Values {
    x: Rational,
    f: Rational,
    f_mirror: Rational,
    f01: Rational,
    f02: Rational,
    f12: Rational,
}

struct Maps {
    f: DigitMap,
    f01: DigitMap,
    f02: DigitMap,
    f12: DigitMap,
}

impl Maps {
    fn load() -> Maps {
        let get = |n| builtin(n).expect("builtin map");
        Maps {
            f: get("f"),
            f01: get("f01"),
            f02: get("f02"),
            f12: get("f12"),
        }
    }

    fn values(&self, x: &TernaryRep) -> Values {
        Values {
            x: x.to_rational(),
            f: eval(&self.f, x),
            f_mirror: eval(&self.f, &x.complement_raw()),
            f01: eval(&self.f01, x),
            f02: eval(&self.f02, x),
            f12: eval(&self.f12, x),
        }
    }
}

fn sides(identity: Identity, v: &Values) -> (Rational, Rational) {
    let three = int(3);
    match identity {
        Identity::Ff2 => (v.f.clone(), int(2) * &v.x - &three * &v.f01),
        Identity::Ff3 => (v.f.clone(), ratio(3, 2) - &v.x - &three * &v.f12),
        Identity::Ff4 => (v.f.clone(), &v.x * half() + ratio(3, 2) * &v.f02),
        Identity::Ff5 => (&v.f - &v.f_mirror, &v.f01 - &v.f12),
        Identity::Ff6 => (&v.f + &v.f_mirror, half() + &three * &v.f02),
        Identity::Ff7 => (&v.f01 + &v.f02 + &v.f12, half()),
        Identity::Ff8 => (int(2) * &v.f01 + &v.f02, v.x.clone()),
        Identity::Ff9 => (&v.f01 - &v.f12, &v.x - half()),
        Identity::Symmetry => (&v.f - &v.f_mirror, &v.x - half()),
    }
}

fn make_check(identity: Identity, x: &TernaryRep, v: &Values) -> IdentityCheck {
    let (lhs, rhs) = sides(identity, v);
    let residual = &lhs - &rhs;
    IdentityCheck {
        identity,
        x: x.clone(),
        lhs,
        rhs,
        residual,
    }
}

pub fn check_identity(identity: Identity, x: &TernaryRep) -> IdentityCheck {
    let v = Maps::load().values(x);
    make_check(identity, x, &v)
}

pub fn check_identity_by_id(id: &str, x: &TernaryRep) -> Result<IdentityCheck> {
    Ok(check_identity(id.parse()?, x))
}

/// Checks every identity at `x`, sharing the map evaluations.
pub fn check_all(x: &TernaryRep) -> Vec<IdentityCheck> {
    let v = Maps::load().values(x);
    Identity::ALL
        .into_iter()
        .map(|id| make_check(id, x, &v))
        .collect()
}
