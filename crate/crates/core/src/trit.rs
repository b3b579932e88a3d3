//! Eventually periodic ternary expansions of numbers in `[0, 1]`.
//!
//! A [`TernaryRep`] stores a preperiod and a period; an empty period stands
//! for an infinite tail of zeros. Canonical representations are unique per
//! value: the period is primitive, the preperiod is as short as the period
//! allows, terminating expansions carry no trailing zeros, and an all-2s
//! period only ever appears in the representation of the number 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, in_unit_interval, Rational};

/// A ternary digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trit(u8);

impl Trit {
    pub const ZERO: Trit = Trit(0);
    pub const ONE: Trit = Trit(1);
    pub const TWO: Trit = Trit(2);
    pub const ALL: [Trit; 3] = [Trit::ZERO, Trit::ONE, Trit::TWO];

    pub fn new(value: u8) -> Result<Trit> {
        if value < 3 {
            Ok(Trit(value))
        } else {
            Err(Error::InvalidTrit(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// `2 - d`.
    pub fn complement(self) -> Trit {
        Trit(2 - self.0)
    }

    pub fn from_char(c: char) -> Option<Trit> {
        match c {
            '0' => Some(Trit(0)),
            '1' => Some(Trit(1)),
            '2' => Some(Trit(2)),
            _ => None,
        }
    }
}

impl From<Trit> for u8 {
    fn from(t: Trit) -> u8 {
        t.0
    }
}

impl TryFrom<u8> for Trit {
    type Error = Error;

    fn try_from(value: u8) -> Result<Trit> {
        Trit::new(value)
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Builds a digit vector from small integers, panicking on anything above 2.
/// Meant for literals in tests and tables.
pub fn trits(digits: &[u8]) -> Vec<Trit> {
    digits
        .iter()
        .map(|&d| Trit::new(d).expect("ternary digit"))
        .collect()
}

/// An eventually periodic ternary expansion `0.a_1 a_2 ...`.
///
/// Values built through [`TernaryRep::new`], parsing or [`from_rational`]
/// are canonical. [`TernaryRep::raw`] keeps digit data as given; raw values
/// arise as digitwise images of maps and may end in an all-2s period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryRep {
    preperiod: Vec<Trit>,
    period: Vec<Trit>,
}

impl TernaryRep {
    /// Canonical representation of the given digits.
    pub fn new(preperiod: Vec<Trit>, period: Vec<Trit>) -> TernaryRep {
        canonicalize(&TernaryRep::raw(preperiod, period))
    }

    /// Digit data without canonicalization.
    pub fn raw(preperiod: Vec<Trit>, period: Vec<Trit>) -> TernaryRep {
        TernaryRep { preperiod, period }
    }

    pub fn zero() -> TernaryRep {
        TernaryRep::raw(Vec::new(), Vec::new())
    }

    /// The number 1, the one value whose representation keeps the all-2s period.
    pub fn one() -> TernaryRep {
        TernaryRep::raw(Vec::new(), vec![Trit::TWO])
    }

    /// Canonical terminating expansion `0.d_1 ... d_n`.
    pub fn terminating(digits: Vec<Trit>) -> TernaryRep {
        TernaryRep::new(digits, Vec::new())
    }

    pub fn preperiod(&self) -> &[Trit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Trit] {
        &self.period
    }

    /// Digit at 1-based position `n`; position 0 is not a digit.
    pub fn digit(&self, n: usize) -> Trit {
        assert!(n >= 1, "digit positions start at 1");
        let p = self.preperiod.len();
        if n <= p {
            self.preperiod[n - 1]
        } else if self.period.is_empty() {
            Trit::ZERO
        } else {
            self.period[(n - 1 - p) % self.period.len()]
        }
    }

    /// The first `n` digits.
    pub fn digits(&self, n: usize) -> Vec<Trit> {
        (1..=n).map(|k| self.digit(k)).collect()
    }

    pub fn is_terminating(&self) -> bool {
        self.period.iter().all(|&d| d == Trit::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.is_terminating() && self.preperiod.iter().all(|&d| d == Trit::ZERO)
    }

    pub fn is_one(&self) -> bool {
        *self == TernaryRep::one()
    }

    pub fn is_canonical(&self) -> bool {
        canonicalize(self) == *self
    }

    /// Position of the last nonzero digit of a terminating expansion.
    pub fn last_nonzero_position(&self) -> Option<usize> {
        if !self.is_terminating() {
            return None;
        }
        self.preperiod.iter().rposition(|&d| d != Trit::ZERO).map(|i| i + 1)
    }

    /// Same digit stream, with the preperiod unrolled to at least `len` digits.
    pub fn unrolled(&self, len: usize) -> TernaryRep {
        if self.preperiod.len() >= len {
            return self.clone();
        }
        let p = self.preperiod.len();
        let preperiod = self.digits(len);
        let period = if self.period.is_empty() {
            Vec::new()
        } else {
            let q = self.period.len();
            let shift = (len - p) % q;
            let mut rot = self.period[shift..].to_vec();
            rot.extend_from_slice(&self.period[..shift]);
            rot
        };
        TernaryRep::raw(preperiod, period)
    }

    /// Digitwise `d -> 2 - d` without canonicalization: the expansion of `1 - x`
    /// read digit by digit. A terminating input yields an all-2s tail.
    pub fn complement_raw(&self) -> TernaryRep {
        let flip = |ds: &[Trit]| ds.iter().map(|d| d.complement()).collect();
        let period = if self.period.is_empty() {
            vec![Trit::TWO]
        } else {
            flip(&self.period)
        };
        TernaryRep::raw(flip(&self.preperiod), period)
    }

    pub fn to_rational(&self) -> Rational {
        to_rational(self)
    }
}

// Split in halves so long periods cost a few large multiplications instead of
// one pass per digit over an ever-growing integer.
fn digits_to_int(ds: &[Trit]) -> BigInt {
    if ds.len() <= 40 {
        return BigInt::from(ds.iter().fold(0u64, |acc, &d| acc * 3 + d.value() as u64));
    }
    let (hi, lo) = ds.split_at(ds.len() / 2);
    digits_to_int(hi) * BigInt::from(3u8).pow(lo.len() as u32) + digits_to_int(lo)
}

/// Exact value `A/3^p + B/(3^p (3^q - 1))`. Works on raw data as well.
pub fn to_rational(r: &TernaryRep) -> Rational {
    let p = r.preperiod.len() as u32;
    let scale = BigInt::from(3u8).pow(p);
    let head = Rational::new(digits_to_int(&r.preperiod), scale.clone());
    if r.period.is_empty() {
        return head;
    }
    let q = r.period.len() as u32;
    let tail_den = scale * (BigInt::from(3u8).pow(q) - BigInt::one());
    head + Rational::new(digits_to_int(&r.period), tail_den)
}

/// Base-3 long division with remainder-cycle detection.
pub fn from_rational(q: &Rational) -> Result<TernaryRep> {
    if !in_unit_interval(q) {
        return Err(Error::OutOfUnitInterval(format_rational(q)));
    }
    if q.is_one() {
        return Ok(TernaryRep::one());
    }
    let mut pre_len = 0;
    let mut reduced = q.denom().clone();
    let three = BigInt::from(3u8);
    while (&reduced % &three).is_zero() {
        reduced /= &three;
        pre_len += 1;
    }
    // After `pre_len` digits the remainder has denominator prime to 3, so the
    // expansion is purely periodic from there: run until the remainder recurs.
    let (digits, period_start) = match (q.numer().to_u64(), q.denom().to_u64()) {
        (Some(num), Some(den)) if den <= u64::MAX / 3 => long_division_u64(num, den, pre_len),
        _ => long_division_big(q.numer().clone(), q.denom(), pre_len),
    };
    let mut digits = digits;
    let period = digits.split_off(period_start);
    Ok(TernaryRep::new(digits, period))
}

fn long_division_u64(mut rem: u64, den: u64, pre_len: usize) -> (Vec<Trit>, usize) {
    let mut digits = Vec::new();
    let mut step = |rem: &mut u64| {
        let t = *rem * 3;
        digits.push(Trit((t / den) as u8));
        *rem = t % den;
    };
    for _ in 0..pre_len {
        step(&mut rem);
    }
    let start = rem;
    if start != 0 {
        loop {
            step(&mut rem);
            if rem == start {
                break;
            }
        }
    }
    (digits, pre_len)
}

fn long_division_big(mut rem: BigInt, den: &BigInt, pre_len: usize) -> (Vec<Trit>, usize) {
    let mut digits = Vec::new();
    let mut step = |rem: &mut BigInt| {
        let (d, r) = (&*rem * 3u8).div_rem(den);
        digits.push(Trit(u8::try_from(&d).expect("digit below 3")));
        *rem = r;
    };
    for _ in 0..pre_len {
        step(&mut rem);
    }
    let start = rem.clone();
    if !start.is_zero() {
        loop {
            step(&mut rem);
            if rem == start {
                break;
            }
        }
    }
    (digits, pre_len)
}

fn primitive_root(period: &[Trit]) -> Vec<Trit> {
    let q = period.len();
    for len in 1..q {
        if q % len == 0 && period.chunks(len).all(|c| c == &period[..len]) {
            return period[..len].to_vec();
        }
    }
    period.to_vec()
}

/// Rewrites digit data into the unique canonical representation of its value.
pub fn canonicalize(r: &TernaryRep) -> TernaryRep {
    let mut pre = r.preperiod.clone();
    let mut period = primitive_root(&r.period);

    if period == [Trit::ZERO] {
        period.clear();
    } else if period == [Trit::TWO] {
        // 0.c 2 2 2 ... = 0.(c + 1): carry into the preperiod.
        while pre.last() == Some(&Trit::TWO) {
            pre.pop();
        }
        match pre.last_mut() {
            None => return TernaryRep::one(),
            Some(last) => *last = Trit(last.0 + 1),
        }
        period.clear();
    }

    if period.is_empty() {
        while pre.last() == Some(&Trit::ZERO) {
            pre.pop();
        }
    } else {
        while let (Some(&a), Some(&b)) = (pre.last(), period.last()) {
            if a != b {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
    }
    TernaryRep::raw(pre, period)
}

/// Canonical representation of `1 - x`.
pub fn complement(r: &TernaryRep) -> TernaryRep {
    canonicalize(&r.complement_raw())
}

/// Orders canonical representations by value, comparing digit streams.
///
/// Past the longer preperiod both streams are periodic with period
/// `lcm(q_a, q_b)`, so that many further digits decide the comparison.
pub fn compare(a: &TernaryRep, b: &TernaryRep) -> Ordering {
    let qa = a.period.len().max(1);
    let qb = b.period.len().max(1);
    let horizon = a.preperiod.len().max(b.preperiod.len()) + qa.lcm(&qb);
    (1..=horizon)
        .map(|n| a.digit(n).cmp(&b.digit(n)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn parse_trits(text: &str, input: &str) -> Result<Vec<Trit>> {
    text.chars()
        .map(|c| {
            Trit::from_char(c).ok_or_else(|| Error::Parse {
                input: input.to_string(),
                reason: format!("{c:?} is not a ternary digit"),
            })
        })
        .collect()
}

fn parse_digits(text: &str) -> Result<(Vec<Trit>, Vec<Trit>)> {
    let err = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let s = text.trim();
    if s == "1" {
        return Ok((Vec::new(), vec![Trit::TWO]));
    }
    if s == "0" {
        return Ok((Vec::new(), Vec::new()));
    }
    let body = s.strip_prefix("0.").ok_or_else(|| err("must start with `0.`"))?;
    let (pre_text, period_text) = match body.find('(') {
        None => (body, None),
        Some(open) => {
            let rest = &body[open + 1..];
            let inner = rest.strip_suffix(')').ok_or_else(|| err("unclosed period"))?;
            (&body[..open], Some(inner))
        }
    };
    let preperiod = parse_trits(pre_text, text)?;
    let period = match period_text {
        None if preperiod.is_empty() => return Err(err("no digits after `0.`")),
        None => Vec::new(),
        Some("") => return Err(err("empty period")),
        Some(p) => parse_trits(p, text)?,
    };
    Ok((preperiod, period))
}

/// Parses and canonicalizes; an all-2s period is folded into the
/// terminating form (`0.1(2)` reads as `0.2`).
pub fn parse_rep(text: &str) -> Result<TernaryRep> {
    let (pre, period) = parse_digits(text)?;
    Ok(TernaryRep::new(pre, period))
}

/// Like [`parse_rep`] but rejects an all-2s period on any value other than 1.
pub fn parse_rep_strict(text: &str) -> Result<TernaryRep> {
    let (pre, period) = parse_digits(text)?;
    let all_twos = !period.is_empty() && period.iter().all(|&d| d == Trit::TWO);
    let rep = TernaryRep::new(pre, period);
    if all_twos && !rep.is_one() {
        return Err(Error::AllTwosPeriod {
            input: text.trim().to_string(),
            canonical: rep.to_string(),
        });
    }
    Ok(rep)
}

/// Parses digit data exactly as written, without canonicalization.
pub fn parse_raw(text: &str) -> Result<TernaryRep> {
    let (pre, period) = parse_digits(text)?;
    Ok(TernaryRep::raw(pre, period))
}

impl FromStr for TernaryRep {
    type Err = Error;

    fn from_str(s: &str) -> Result<TernaryRep> {
        parse_rep(s)
    }
}

impl fmt::Display for TernaryRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        if self.preperiod.is_empty() && self.period.is_empty() {
            return f.write_str("0");
        }
        f.write_str("0.")?;
        for d in &self.preperiod {
            write!(f, "{d}")?;
        }
        if !self.period.is_empty() {
            f.write_str("(")?;
            for d in &self.period {
                write!(f, "{d}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl PartialOrd for TernaryRep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Value order; meaningful for canonical representations.
impl Ord for TernaryRep {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rep(s: &str) -> TernaryRep {
        parse_rep(s).unwrap()
    }

    /// Partial sums of the digit series, as an independent check on the closed form.
    fn series_value(r: &TernaryRep, terms: usize) -> f64 {
        (1..=terms)
            .map(|n| r.digit(n).value() as f64 * 3f64.powi(-(n as i32)))
            .sum()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(rep("0.1"), TernaryRep::raw(trits(&[1]), vec![]));
        assert_eq!(rep("0.0(1)"), TernaryRep::raw(trits(&[0]), trits(&[1])));
        let folded = rep("0.1(2)");
        assert_eq!(folded, TernaryRep::raw(trits(&[2]), vec![]));
        assert_eq!(folded.to_rational(), ratio(2, 3));
        assert_eq!(rep("1"), TernaryRep::one());
        assert_eq!(rep("0"), TernaryRep::zero());
        assert_eq!(rep("0.(2)"), TernaryRep::one());
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "0.", "0.3", "1.0", "0.1(", "0.()", "0.1(2", ".1", "0.1)", "2"] {
            assert!(parse_rep(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn strict_parse_rejects_all_twos_period() {
        let err = parse_rep_strict("0.1(2)").unwrap_err();
        assert!(matches!(err, Error::AllTwosPeriod { ref canonical, .. } if canonical == "0.2"));
        assert!(err.to_string().contains("only the number 1"));
        assert!(parse_rep_strict("0.(22)").unwrap().is_one());
        assert!(parse_rep_strict("1").unwrap().is_one());
        assert!(parse_rep_strict("0.(12)").is_ok());
    }

    #[test]
    fn to_rational_examples() {
        assert_eq!(rep("0.1").to_rational(), ratio(1, 3));
        assert_eq!(rep("0.(1)").to_rational(), ratio(1, 2));
        // 2/9 + 1/(9*8) = 17/72
        let r = TernaryRep::new(trits(&[0, 2]), trits(&[0, 1]));
        assert_eq!(r.to_rational(), ratio(17, 72));
        assert!((series_value(&r, 200) - 17.0 / 72.0).abs() < 1e-15);
        assert_eq!(TernaryRep::one().to_rational(), int(1));
    }

    #[test]
    fn from_rational_examples() {
        assert_eq!(from_rational(&int(0)).unwrap(), TernaryRep::zero());
        assert_eq!(from_rational(&ratio(1, 2)).unwrap(), rep("0.(1)"));
        assert_eq!(from_rational(&ratio(1, 4)).unwrap(), rep("0.(02)"));
        assert_eq!(from_rational(&int(1)).unwrap(), TernaryRep::one());
        assert_eq!(from_rational(&ratio(17, 72)).unwrap(), rep("0.02(01)"));
        assert_eq!(from_rational(&ratio(19, 72)).unwrap(), rep("0.02(10)"));
        assert!(from_rational(&ratio(3, 2)).is_err());
        assert!(from_rational(&ratio(-1, 2)).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let c = |pre: &[u8], per: &[u8]| canonicalize(&TernaryRep::raw(trits(pre), trits(per)));
        assert_eq!(c(&[1], &[2]), TernaryRep::raw(trits(&[2]), vec![]));
        assert_eq!(c(&[1, 0], &[]), TernaryRep::raw(trits(&[1]), vec![]));
        assert_eq!(c(&[0], &[1, 1]), TernaryRep::raw(trits(&[0]), trits(&[1])));
        assert_eq!(c(&[1, 2], &[0, 0]), TernaryRep::raw(trits(&[1, 2]), vec![]));
        assert_eq!(c(&[0, 1, 2, 2], &[2]), TernaryRep::raw(trits(&[0, 2]), vec![]));
        assert_eq!(c(&[2, 2], &[2, 2]), TernaryRep::one());
        // preperiod suffix absorbed into a rotated period
        assert_eq!(c(&[2, 0, 1], &[0, 1]), TernaryRep::raw(trits(&[2]), trits(&[0, 1])));
        assert_eq!(c(&[1, 0, 1], &[0, 1]), TernaryRep::raw(vec![], trits(&[1, 0])));
        assert_eq!(c(&[2, 1, 1], &[1]), TernaryRep::raw(trits(&[2]), trits(&[1])));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&rep("0.1"), &rep("0.2")), Ordering::Less);
        assert_eq!(compare(&rep("0.(01)"), &rep("0.1")), Ordering::Less);
        assert_eq!(compare(&rep("0.2"), &rep("0.2")), Ordering::Equal);
        assert_eq!(compare(&rep("1"), &rep("0.2(1)")), Ordering::Greater);
        // 1/2 < 1/3 + 5/24
        assert_eq!(compare(&rep("0.(1)"), &rep("0.1(12)")), Ordering::Less);
    }

    #[test]
    fn complement_examples() {
        let c = complement(&rep("0.1"));
        assert_eq!(c, rep("0.2"));
        assert_eq!(c.to_rational(), ratio(2, 3));
        assert_eq!(complement(&rep("0")), TernaryRep::one());
        assert_eq!(complement(&rep("1")), TernaryRep::zero());
        assert_eq!(complement(&rep("0.(1)")), rep("0.(1)"));
        assert_eq!(rep("0.1").complement_raw(), parse_raw("0.1(2)").unwrap());
    }

    #[test]
    fn display_matches_grammar() {
        for s in ["0", "1", "0.12", "0.1(02)", "0.(1)"] {
            assert_eq!(rep(s).to_string(), s);
        }
        assert_eq!(parse_raw("0.10(00)").unwrap().to_string(), "0.10(00)");
    }

    #[test]
    fn unrolled_keeps_digit_stream() {
        let r = rep("0.2(012)");
        let u = r.unrolled(6);
        assert_eq!(u.preperiod().len(), 6);
        assert_eq!(u.digits(20), r.digits(20));
        assert_eq!(u.to_rational(), r.to_rational());
        assert_eq!(rep("0.1").unrolled(3).to_string(), "0.100");
    }

    #[test]
    fn terminating_queries() {
        assert_eq!(rep("0.102").last_nonzero_position(), Some(3));
        assert_eq!(rep("0").last_nonzero_position(), None);
        assert_eq!(rep("0.(1)").last_nonzero_position(), None);
        assert!(rep("0.12").is_terminating());
        assert!(!rep("1").is_terminating());
    }
}
