//! Digit substitution maps over `{0, 1, 2}`.
//!
//! Each map is a single-state Mealy transducer: it rewrites every digit of an
//! expansion independently. Applying one to a representation is therefore a
//! matter of mapping the preperiod and period entrywise.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, half, int, Rational};
use crate::trit::{canonicalize, Trit, TernaryRep};

/// Output table of a digit map, indexed by input digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitMap {
    name: String,
    table: [Trit; 3],
}

pub const BUILTIN_NAMES: [&str; 10] = ["f", "f01", "f02", "f12", "f1", "f2", "f3", "f4", "f5", "f6"];

fn table_of(name: &str) -> Option<[u8; 3]> {
    Some(match name {
        "f" => [0, 2, 1],
        "f01" | "f10" => [0, 0, 1],
        "f02" | "f20" => [0, 1, 0],
        "f12" | "f21" => [1, 0, 0],
        "f1" => [0, 1, 2],
        "f2" => [0, 2, 1],
        "f3" => [1, 0, 2],
        "f4" => [1, 2, 0],
        "f5" => [2, 0, 1],
        "f6" => [2, 1, 0],
        _ => return None,
    })
}

impl DigitMap {
    pub fn new(name: impl Into<String>, table: [Trit; 3]) -> DigitMap {
        DigitMap {
            name: name.into(),
            table,
        }
    }

    /// Parses a three-digit table such as `021`.
    pub fn from_table_str(text: &str) -> Result<DigitMap> {
        let err = || Error::InvalidMapTable(text.to_string());
        let digits: Vec<u8> = text.trim().bytes().map(|b| b.wrapping_sub(b'0')).collect();
        if digits.len() != 3 {
            return Err(err());
        }
        let mut table = [Trit::ZERO; 3];
        for (slot, d) in table.iter_mut().zip(digits) {
            *slot = Trit::new(d).map_err(|_| err())?;
        }
        Ok(DigitMap::new(format!("table:{}", text.trim()), table))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> [Trit; 3] {
        self.table
    }

    pub fn map(&self, d: Trit) -> Trit {
        self.table[d.value() as usize]
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = [false; 3];
        for t in self.table {
            seen[t.value() as usize] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// A merge map sends two digits to 0 and the remaining one to 1.
    pub fn is_merge(&self) -> bool {
        let ones = self.table.iter().filter(|&&t| t == Trit::ONE).count();
        let zeros = self.table.iter().filter(|&&t| t == Trit::ZERO).count();
        ones == 1 && zeros == 2
    }

    /// Input digits mapped to `out`.
    pub fn preimage(&self, out: Trit) -> Vec<Trit> {
        Trit::ALL.into_iter().filter(|&d| self.map(d) == out).collect()
    }

    pub fn inverse(&self) -> Option<DigitMap> {
        if !self.is_permutation() {
            return None;
        }
        let mut table = [Trit::ZERO; 3];
        for d in Trit::ALL {
            table[self.map(d).value() as usize] = d;
        }
        Some(DigitMap::new(format!("{}^-1", self.name), table))
    }

    fn map_all(&self, ds: &[Trit]) -> Vec<Trit> {
        ds.iter().map(|&d| self.map(d)).collect()
    }
}

impl fmt::Display for DigitMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.table;
        write!(f, "{} ({a}{b}{c})", self.name)
    }
}

impl FromStr for DigitMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<DigitMap> {
        builtin(s)
    }
}

pub fn builtin(name: &str) -> Result<DigitMap> {
    let table = table_of(name).ok_or_else(|| Error::UnknownMap(name.to_string()))?;
    let name = match name {
        "f10" => "f01",
        "f20" => "f02",
        "f21" => "f12",
        other => other,
    };
    Ok(DigitMap::new(name, table.map(|d| Trit::new(d).expect("builtin digit"))))
}

/// Digitwise image of the representation; the result may be non-canonical.
pub fn apply_raw(m: &DigitMap, r: &TernaryRep) -> TernaryRep {
    // An empty period is an implicit tail of zeros, which the map may not fix.
    let period = if r.period().is_empty() {
        let z = m.map(Trit::ZERO);
        if z == Trit::ZERO {
            Vec::new()
        } else {
            vec![z]
        }
    } else {
        m.map_all(r.period())
    };
    TernaryRep::raw(m.map_all(r.preperiod()), period)
}

/// The value-level map: digitwise image, then canonicalized.
pub fn apply(m: &DigitMap, r: &TernaryRep) -> TernaryRep {
    canonicalize(&apply_raw(m, r))
}

/// Exact value of the image of `r`.
pub fn eval(m: &DigitMap, r: &TernaryRep) -> Rational {
    apply_raw(m, r).to_rational()
}

/// `m1` after `m2`.
pub fn compose(m1: &DigitMap, m2: &DigitMap) -> DigitMap {
    let table = Trit::ALL.map(|d| m1.map(m2.map(d)));
    DigitMap::new(format!("{}.{}", m1.name, m2.name), table)
}

/// The three merge maps used as a basis for decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Pair {
    P01,
    P02,
    P12,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P01, Pair::P02, Pair::P12];

    pub fn map(self) -> DigitMap {
        builtin(self.map_name()).expect("merge map is builtin")
    }

    pub fn map_name(self) -> &'static str {
        match self {
            Pair::P01 => "f01",
            Pair::P02 => "f02",
            Pair::P12 => "f12",
        }
    }

    pub fn label(self) -> &'static str {
        &self.map_name()[1..]
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Coefficients with `f_m(x) = a x + b + c f_pair(x)`.
///
/// Digitwise this reads `phi_m(d) = a d + 2b + c phi_pair(d)`: the constant
/// digit `2b` at every position sums to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub map: String,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub pair: Pair,
}

impl Decomposition {
    /// Right-hand side digit value for input digit `d`.
    pub fn digit_rhs(&self, d: Trit) -> Rational {
        let dv = int(d.value() as i64);
        let pv = int(self.pair.map().map(d).value() as i64);
        &self.a * dv + &self.b * int(2) + &self.c * pv
    }

    pub fn holds_digitwise(&self, m: &DigitMap) -> bool {
        Trit::ALL
            .into_iter()
            .all(|d| self.digit_rhs(d) == int(m.map(d).value() as i64))
    }

    /// `a x + b + c f_pair(x)` at `x`.
    pub fn value_rhs(&self, x: &TernaryRep) -> Rational {
        &self.a * x.to_rational() + &self.b + &self.c * eval(&self.pair.map(), x)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = ({})x + ({}) + ({})f{}",
            self.map,
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c),
            self.pair
        )
    }
}

/// Solves `A v = rhs` over the rationals by Gauss-Jordan elimination.
fn solve3(mut a: [[Rational; 3]; 3], mut rhs: [Rational; 3]) -> Option<[Rational; 3]> {
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = a[col][col].clone();
        for k in 0..3 {
            a[col][k] = &a[col][k] / &p;
        }
        rhs[col] = &rhs[col] / &p;
        for r in 0..3 {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in 0..3 {
                    let delta = &factor * &a[col][k];
                    a[r][k] -= delta;
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    Some(rhs)
}

/// Solves for `(a, b, c)` against each merge map; singular systems are skipped.
pub fn decompose(m: &DigitMap) -> Vec<Decomposition> {
    Pair::ALL
        .into_iter()
        .filter_map(|pair| {
            let basis = pair.map();
            let rows = Trit::ALL.map(|d| {
                [
                    int(d.value() as i64),
                    int(1),
                    int(basis.map(d).value() as i64),
                ]
            });
            let rhs = Trit::ALL.map(|d| int(m.map(d).value() as i64));
            let [a, t, c] = solve3(rows, rhs)?;
            Some(Decomposition {
                map: m.name.clone(),
                a,
                b: t * half(),
                c,
                pair,
            })
        })
        .collect()
}

pub fn decompose_named(name: &str) -> Result<Vec<Decomposition>> {
    Ok(decompose(&builtin(name)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::trit::{parse_raw, parse_rep, trits};

    fn rep(s: &str) -> TernaryRep {
        parse_rep(s).unwrap()
    }

    fn poly_table(p: impl Fn(i64) -> i64) -> [Trit; 3] {
        [0, 1, 2].map(|i| Trit::new(p(i) as u8).unwrap())
    }

    #[test]
    fn builtin_tables() {
        assert_eq!(builtin("f").unwrap().table(), trits(&[0, 2, 1]).as_slice());
        assert_eq!(builtin("f12").unwrap().table(), trits(&[1, 0, 0]).as_slice());
        assert_eq!(builtin("f4").unwrap().table(), trits(&[1, 2, 0]).as_slice());
        assert!(matches!(builtin("g"), Err(Error::UnknownMap(_))));
    }

    #[test]
    fn tables_match_polynomials() {
        assert_eq!(builtin("f").unwrap().table(), poly_table(|i| (-3 * i * i + 7 * i) / 2));
        assert_eq!(builtin("f01").unwrap().table(), poly_table(|i| (i * i - i) / 2));
        assert_eq!(builtin("f12").unwrap().table(), poly_table(|i| (i * i - 3 * i + 2) / 2));
        assert_eq!(builtin("f02").unwrap().table(), poly_table(|i| -i * i + 2 * i));
    }

    #[test]
    fn merge_maps_are_symmetric_in_their_indices() {
        for (a, b) in [("f01", "f10"), ("f02", "f20"), ("f12", "f21")] {
            assert_eq!(builtin(a).unwrap(), builtin(b).unwrap());
        }
    }

    #[test]
    fn map_classes() {
        for name in ["f1", "f2", "f3", "f4", "f5", "f6", "f"] {
            assert!(builtin(name).unwrap().is_permutation());
        }
        for name in ["f01", "f02", "f12"] {
            let m = builtin(name).unwrap();
            assert!(m.is_merge() && !m.is_permutation());
        }
        assert_eq!(builtin("f01").unwrap().preimage(Trit::ZERO), trits(&[0, 1]));
        assert!(builtin("f01").unwrap().preimage(Trit::TWO).is_empty());
    }

    #[test]
    fn table_strings() {
        let m = DigitMap::from_table_str("021").unwrap();
        assert_eq!(m.table(), builtin("f").unwrap().table());
        for bad in ["02", "0211", "031", "abc"] {
            assert!(DigitMap::from_table_str(bad).is_err());
        }
    }

    #[test]
    fn apply_raw_examples() {
        let f = builtin("f").unwrap();
        assert_eq!(apply_raw(&f, &rep("0.1")), rep("0.2"));
        let img = apply_raw(&f, &rep("0.(1)"));
        assert_eq!(img, parse_raw("0.(2)").unwrap());
        assert_eq!(img.to_rational(), int(1));
        let f01 = builtin("f01").unwrap();
        let raw = apply_raw(&f01, &parse_raw("0.21(02)").unwrap());
        assert_eq!(raw, parse_raw("0.10(01)").unwrap());
        let raw = apply_raw(&f, &rep("0.0(1)"));
        assert_eq!(raw.to_string(), "0.0(2)");
        assert!(!raw.is_canonical());
        assert_eq!(canonicalize(&raw), rep("0.1"));
    }

    #[test]
    fn apply_examples() {
        let f = builtin("f").unwrap();
        assert_eq!(apply(&f, &rep("0")), rep("0"));
        let img = apply(&f, &rep("0.(01)"));
        assert_eq!(img, rep("0.(02)"));
        assert_eq!(img.to_rational(), ratio(1, 4));
        assert_eq!(apply(&f, &rep("1")), rep("0.(1)"));
    }

    #[test]
    fn zero_tail_is_mapped() {
        // f6 sends the implicit zero tail to 2s: f6(1/3) = 2/3.
        let f6 = builtin("f6").unwrap();
        assert_eq!(eval(&f6, &rep("0.1")), ratio(2, 3));
        assert_eq!(apply(&f6, &rep("0")), TernaryRep::one());
        let f12 = builtin("f12").unwrap();
        assert_eq!(eval(&f12, &rep("0")), ratio(1, 2));
    }

    #[test]
    fn compose_examples() {
        let f = builtin("f").unwrap();
        let id = builtin("f1").unwrap().table();
        assert_eq!(compose(&f, &f).table(), id);
        assert_eq!(compose(&builtin("f6").unwrap(), &builtin("f6").unwrap()).table(), id);
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            assert_eq!(compose(&builtin("f1").unwrap(), &m).table(), m.table());
        }
        assert_eq!(f.inverse().unwrap().table(), f.table());
        assert!(builtin("f01").unwrap().inverse().is_none());
    }

    #[test]
    fn complement_digit_identity() {
        // phi(d) - phi(2 - d) = d - 1
        let f = builtin("f").unwrap();
        for d in Trit::ALL {
            let lhs = f.map(d).value() as i64 - f.map(d.complement()).value() as i64;
            assert_eq!(lhs, d.value() as i64 - 1);
        }
    }

    fn find(ds: &[Decomposition], pair: Pair) -> &Decomposition {
        ds.iter().find(|d| d.pair == pair).expect("pair solved")
    }

    #[test]
    fn decompose_recovers_lemma_coefficients() {
        let ds = decompose_named("f").unwrap();
        let d01 = find(&ds, Pair::P01);
        assert_eq!((&d01.a, &d01.b, &d01.c), (&int(2), &int(0), &int(-3)));
        let d12 = find(&ds, Pair::P12);
        assert_eq!((&d12.a, &d12.b, &d12.c), (&int(-1), &ratio(3, 2), &int(-3)));
        let d02 = find(&ds, Pair::P02);
        assert_eq!((&d02.a, &d02.b, &d02.c), (&ratio(1, 2), &int(0), &ratio(3, 2)));
    }

    #[test]
    fn decompose_identity_and_reflection() {
        let ds = decompose_named("f1").unwrap();
        let d = find(&ds, Pair::P01);
        assert_eq!((&d.a, &d.b, &d.c), (&int(1), &int(0), &int(0)));
        let d6 = decompose_named("f6").unwrap();
        let d = find(&d6, Pair::P01);
        assert_eq!((&d.a, &d.b, &d.c), (&int(-1), &int(1), &int(0)));
    }

    #[test]
    fn every_builtin_decomposes_digitwise() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let ds = decompose(&m);
            assert!(!ds.is_empty(), "{name}");
            for d in &ds {
                assert!(d.holds_digitwise(&m), "{d}");
            }
        }
    }

    #[test]
    fn singular_systems_are_skipped() {
        let rows = [
            [int(1), int(1), int(0)],
            [int(2), int(2), int(0)],
            [int(0), int(0), int(1)],
        ];
        assert!(solve3(rows, [int(0), int(0), int(0)]).is_none());
    }
}
