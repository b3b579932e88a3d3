//! One-sided limits at ternary-rational points, the modulus-of-continuity
//! bound, and difference quotients under single-digit perturbations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{half, int, pow3_inv, ratio, Rational};
use crate::transducer::{eval, DigitMap};
use crate::trit::{Trit, TernaryRep};

/// Jump of a digit map at a terminating point `x0 = 0.a_1 ... a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpReport {
    pub point: TernaryRep,
    pub left_limit: Rational,
    pub right_limit: Rational,
    /// `right_limit - left_limit`
    pub jump: Rational,
    /// Jump predicted from the last digit alone.
    pub closed_form: Rational,
    /// Position of the last nonzero digit.
    pub position_n: usize,
    pub last_digit: Trit,
}

impl JumpReport {
    pub fn matches_closed_form(&self) -> bool {
        self.jump == self.closed_form
    }
}

/// The jump of `f` itself: `+1/(2*3^(n-1))` for a last digit 1 and
/// `-1/(2*3^(n-1))` for a last digit 2.
pub fn f_jump_formula(position_n: usize, last_digit: Trit) -> Rational {
    let magnitude = half() * pow3_inv(position_n as u32 - 1);
    match last_digit.value() {
        1 => magnitude,
        2 => -magnitude,
        _ => int(0),
    }
}

/// Jump predicted digitwise for any map:
/// `(phi(a_n) - phi(a_n - 1) + (phi(0) - phi(2)) / 2) / 3^n`.
pub fn jump_formula(m: &DigitMap, position_n: usize, last_digit: Trit) -> Rational {
    let phi = |d: u8| int(m.map(Trit::new(d).expect("digit")).value() as i64);
    let a = last_digit.value();
    let numerator = phi(a) - phi(a - 1) + (phi(0) - phi(2)) * half();
    numerator * pow3_inv(position_n as u32)
}

/// Left and right limits of `m` at a terminating point strictly inside `(0, 1)`.
///
/// The right limit is the image of `0.a_1 ... a_n 000...`, the left limit the
/// image of the other expansion `0.a_1 ... (a_n - 1) 222...`.
pub fn one_sided_limits(m: &DigitMap, x0: &TernaryRep) -> Result<JumpReport> {
    if x0.is_zero() || x0.is_one() {
        return Err(Error::Endpoint(x0.to_string()));
    }
    let n = x0
        .last_nonzero_position()
        .ok_or_else(|| Error::NotTerminating(x0.to_string()))?;
    let last_digit = x0.digit(n);

    let right_limit = eval(m, &TernaryRep::raw(x0.digits(n), Vec::new()));
    let mut lower = x0.digits(n);
    lower[n - 1] = Trit::new(last_digit.value() - 1).expect("nonzero digit");
    let left_limit = eval(m, &TernaryRep::raw(lower, vec![Trit::TWO]));

    let jump = &right_limit - &left_limit;
    Ok(JumpReport {
        point: x0.clone(),
        left_limit,
        right_limit,
        jump,
        closed_form: jump_formula(m, n, last_digit),
        position_n: n,
        last_digit,
    })
}

/// First digit position where two distinct canonical representations differ.
pub fn first_difference(a: &TernaryRep, b: &TernaryRep) -> Option<usize> {
    if a == b {
        return None;
    }
    let horizon = a.preperiod().len().max(b.preperiod().len())
        + a.period().len().max(1) * b.period().len().max(1);
    (1..=horizon).find(|&n| a.digit(n) != b.digit(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityBound {
    pub first_difference: usize,
    /// `3^-(n0 - 1)`
    pub bound: Rational,
    /// `|f(x) - f(x0)|`
    pub distance: Rational,
}

impl ContinuityBound {
    pub fn holds(&self) -> bool {
        self.distance <= self.bound
    }
}

/// `|f(x) - f(x0)| <= 3^-(n0 - 1)` where `n0` is the first differing digit.
pub fn continuity_bound(m: &DigitMap, x0: &TernaryRep, x: &TernaryRep) -> Result<ContinuityBound> {
    let n0 = first_difference(x0, x).ok_or_else(|| Error::EqualPoints(x0.to_string()))?;
    let distance = (eval(m, x) - eval(m, x0)).abs();
    Ok(ContinuityBound {
        first_difference: n0,
        bound: pow3_inv(n0 as u32 - 1),
        distance,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSample {
    pub depth: usize,
    pub digit: Trit,
    pub perturbed: Trit,
    /// `(f(x0) - f(x')) / (x0 - x')` computed from the two points' values.
    pub quotient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientProbe {
    pub point: TernaryRep,
    pub samples: Vec<QuotientSample>,
    pub accumulation_values: BTreeSet<Rational>,
}

impl QuotientProbe {
    /// Distinct quotients along sequences converging to the point rule out a derivative.
    pub fn certifies_no_derivative(&self) -> bool {
        self.accumulation_values.len() >= 2
    }
}

/// Quotient predicted by the digit table: `(phi(a) - phi(b)) / (a - b)`.
pub fn digit_quotient(m: &DigitMap, a: Trit, b: Trit) -> Rational {
    let num = m.map(a).value() as i64 - m.map(b).value() as i64;
    ratio(num, a.value() as i64 - b.value() as i64)
}

/// Replaces the digit at 1-based `depth`, keeping the rest of the stream.
pub fn perturb(x: &TernaryRep, depth: usize, digit: Trit) -> TernaryRep {
    let unrolled = x.unrolled(depth);
    let mut pre = unrolled.preperiod().to_vec();
    pre[depth - 1] = digit;
    TernaryRep::raw(pre, unrolled.period().to_vec())
}

/// For each depth and each replacement digit, the exact difference quotient
/// between `x0` and the point with that one digit changed.
pub fn quotient_probe(m: &DigitMap, x0: &TernaryRep, depths: &[usize]) -> Result<QuotientProbe> {
    if depths.is_empty() {
        return Err(Error::TooSmall {
            what: "number of depths",
            value: 0,
            min: 1,
        });
    }
    if depths.contains(&0) {
        return Err(Error::TooSmall {
            what: "depth",
            value: 0,
            min: 1,
        });
    }
    let x_val = x0.to_rational();
    let fx_val = eval(m, x0);
    let mut samples = Vec::new();
    for &depth in depths {
        let digit = x0.digit(depth);
        for perturbed in Trit::ALL.into_iter().filter(|&b| b != digit) {
            let moved = perturb(x0, depth, perturbed);
            let dx = &x_val - moved.to_rational();
            let df = &fx_val - eval(m, &moved);
            samples.push(QuotientSample {
                depth,
                digit,
                perturbed,
                quotient: df / dx,
            });
        }
    }
    let accumulation_values = samples.iter().map(|s| s.quotient.clone()).collect();
    Ok(QuotientProbe {
        point: x0.clone(),
        samples,
        accumulation_values,
    })
}

/// The three values the quotients of `f` can take: `2`, `-1`, `1/2`.
pub fn f_quotient_values() -> BTreeSet<Rational> {
    [int(2), int(-1), Rational::new(BigInt::from(1), BigInt::from(2))]
        .into_iter()
        .collect()
}
