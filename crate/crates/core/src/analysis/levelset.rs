//! Level sets of the merge maps `f01`, `f02`, `f12`.
//!
//! A digit `x_t` is admissible at position `t` when the map sends it to the
//! target digit `y_t`. Target 2 has no preimage, target 1 has one (the digit
//! `k` outside the merged pair) and target 0 has two, so depth-`N` prefixes
//! are counted position by position without enumeration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::transducer::{builtin, DigitMap};
use crate::trit::{Trit, TernaryRep};

/// `log_3 2`
pub fn log3_2() -> f64 {
    2f64.ln() / 3f64.ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetReport {
    pub map_name: String,
    pub target: TernaryRep,
    pub depth: usize,
    /// Positions `<= depth` where the target digit is 1.
    pub forced_positions: usize,
    /// Number of admissible depth-`N` prefixes.
    pub prefix_count: BigUint,
    /// Some target digit within the depth is 2.
    pub empty: bool,
    /// `(N - m(N)) / N * log_3 2`, or 0 for an empty level set.
    pub dimension_estimate: f64,
}

fn merge_map(map_name: &str) -> Result<DigitMap> {
    let m = builtin(map_name)?;
    if !m.is_merge() {
        return Err(Error::NotMergeMap(map_name.to_string()));
    }
    Ok(m)
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::TooSmall {
            what: "depth",
            value: 0,
            min: 1,
        });
    }
    Ok(())
}

fn report_for_digits(map: &DigitMap, target: &TernaryRep, digits: &[Trit]) -> LevelSetReport {
    let depth = digits.len();
    let mut prefix_count = BigUint::one();
    let mut forced_positions = 0;
    for &y in digits {
        let choices = map.preimage(y).len();
        if y == Trit::ONE {
            forced_positions += 1;
        }
        prefix_count *= choices as u32;
    }
    let empty = prefix_count.is_zero();
    let dimension_estimate = if empty {
        0.0
    } else {
        (depth - forced_positions) as f64 / depth as f64 * log3_2()
    };
    LevelSetReport {
        map_name: map.name().to_string(),
        target: target.clone(),
        depth,
        forced_positions,
        prefix_count,
        empty,
        dimension_estimate,
    }
}

pub fn levelset_enumerate(map_name: &str, y0: &TernaryRep, depth: usize) -> Result<LevelSetReport> {
    let map = merge_map(map_name)?;
    check_depth(depth)?;
    Ok(report_for_digits(&map, y0, &y0.digits(depth)))
}

/// Least-squares slope of `log_3(count)` against the depth, for depths `1..=depth`.
/// `None` for empty level sets or fewer than two depths.
pub fn levelset_regression(map_name: &str, y0: &TernaryRep, depth: usize) -> Result<Option<f64>> {
    let map = merge_map(map_name)?;
    check_depth(depth)?;
    let mut points = Vec::with_capacity(depth);
    for n in 1..=depth {
        let r = report_for_digits(&map, y0, &y0.digits(n));
        if r.empty {
            return Ok(None);
        }
        // Merge-map counts are powers of two: log_3(2^b) = b log_3 2.
        let bits = r.prefix_count.bits() - 1;
        debug_assert_eq!(r.prefix_count, BigUint::one() << bits);
        points.push((n as f64, bits as f64 * log3_2()));
    }
    if points.len() < 2 {
        return Ok(None);
    }
    let k = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(Some(sxy / sxx))
}

/// Where the 1-digits of a swept target sit: `l_n = n`, `n^2` or `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PositionRule {
    Linear,
    Quadratic,
    Exponential,
}

impl PositionRule {
    pub const ALL: [PositionRule; 3] = [
        PositionRule::Linear,
        PositionRule::Quadratic,
        PositionRule::Exponential,
    ];

    pub fn position(self, n: u32) -> u64 {
        match self {
            PositionRule::Linear => n as u64,
            PositionRule::Quadratic => (n as u64).pow(2),
            PositionRule::Exponential => 2u64.pow(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PositionRule::Linear => "linear",
            PositionRule::Quadratic => "quadratic",
            PositionRule::Exponential => "exponential",
        }
    }

    /// Terminating target with 1s at positions `l_1 < l_2 < ... <= depth`.
    pub fn target(self, depth: usize) -> TernaryRep {
        let mut digits = vec![Trit::ZERO; depth];
        for n in 1.. {
            let pos = self.position(n);
            if pos > depth as u64 {
                break;
            }
            digits[pos as usize - 1] = Trit::ONE;
        }
        TernaryRep::terminating(digits)
    }
}

impl fmt::Display for PositionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PositionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<PositionRule> {
        PositionRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownOption {
                what: "position rule",
                value: s.to_string(),
            })
    }
}

/// Reports at depths `1..=depth` for the target built by `rule` at `depth`.
pub fn levelset_frequency_sweep(
    map_name: &str,
    rule: PositionRule,
    depth: usize,
) -> Result<Vec<LevelSetReport>> {
    if depth < 4 {
        return Err(Error::TooSmall {
            what: "sweep depth",
            value: depth as u64,
            min: 4,
        });
    }
    let target = rule.target(depth);
    (1..=depth)
        .map(|n| levelset_enumerate(map_name, &target, n))
        .collect()
}
