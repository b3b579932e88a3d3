//! Box counting for the graph of a digit map on the grid of rank-`m` squares.
//!
//! A square of rank `m` is indexed by an `x`-prefix and a `y`-prefix of `m`
//! ternary digits. In the half-open count each `x`-prefix determines its
//! `y`-prefix digitwise, so the graph meets exactly one square per column.
//! The closed count also includes squares that only touch the closure of the
//! graph along their boundary.

use std::collections::HashSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::transducer::DigitMap;
use crate::trit::Trit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cells {
    HalfOpen,
    Closed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountReport {
    pub rank: u32,
    pub cell_count: u64,
    /// Denominator of the side length `3^-rank`.
    pub cell_side_den: u64,
    /// `log K / (m log 3)`
    pub dimension_estimate: f64,
}

/// Square `(x, y)` indices on the `3^m x 3^m` grid.
pub type Square = (u64, u64);

fn digits_of(mut k: u64, m: u32) -> Vec<Trit> {
    let mut out = vec![Trit::ZERO; m as usize];
    for slot in out.iter_mut().rev() {
        *slot = Trit::new((k % 3) as u8).expect("digit");
        k /= 3;
    }
    out
}

fn image_index(map: &DigitMap, digits: &[Trit]) -> u64 {
    digits
        .iter()
        .fold(0, |acc, &d| acc * 3 + map.map(d).value() as u64)
}

/// Rank-`m` squares met by the graph, one per `x`-prefix.
pub fn graph_squares(map: &DigitMap, m: u32) -> Vec<Square> {
    (0..3u64.pow(m))
        .map(|k| (k, image_index(map, &digits_of(k, m))))
        .collect()
}

/// Closed squares meeting the closure of the graph.
///
/// Coordinates are kept in units of `h / 2` with `h = 3^-m`, where every
/// limit point is an integer.
pub fn closed_squares(map: &DigitMap, m: u32) -> HashSet<Square> {
    let side = 3u64.pow(m);
    let phi = |d: u8| map.map(Trit::new(d).expect("digit")).value() as u64;
    let (t_min, t_max) = (0..3).map(phi).fold((u64::MAX, 0), |(lo, hi), v| (lo.min(v), hi.max(v)));

    let mut out = HashSet::new();
    // A point on a horizontal grid line also touches the square below it.
    let touch = |col: u64, y_half_units: u64, out: &mut HashSet<Square>| {
        let row = y_half_units / 2;
        if row < side {
            out.insert((col, row));
        }
        if y_half_units % 2 == 0 && row > 0 {
            out.insert((col, row - 1));
        }
    };

    for k in 0..side {
        let digits = digits_of(k, m);
        let base = image_index(map, &digits);
        // The tail after the prefix ranges between constant tails of min and max phi.
        touch(k, 2 * base + t_min, &mut out);
        touch(k, 2 * base + t_max, &mut out);
        out.insert((k, base));

        if k == 0 {
            continue;
        }
        // Vertex x = k h: the value f(kh) and the left limit there sit on the
        // line shared by columns k - 1 and k.
        let n = digits.iter().rposition(|&d| d != Trit::ZERO).expect("k > 0") + 1;
        let right = 2 * base + phi(0);
        let mut lower = digits.clone();
        lower[n - 1] = Trit::new(lower[n - 1].value() - 1).expect("nonzero digit");
        let tail_scale = 3u64.pow(m - n as u32);
        let left = 2 * image_index(map, &lower[..n]) * tail_scale + phi(2) * tail_scale;
        for col in [k - 1, k] {
            touch(col, right, &mut out);
            touch(col, left, &mut out);
        }
    }
    out
}

fn check_rank(m: u32, budget: &Budget) -> Result<()> {
    if m < 1 {
        return Err(Error::TooSmall {
            what: "rank",
            value: m as u64,
            min: 1,
        });
    }
    if m > budget.max_rank {
        return Err(Error::OverBudget {
            what: "rank",
            value: m as u64,
            max: budget.max_rank as u64,
        });
    }
    Ok(())
}

pub fn dimension_estimate(cell_count: u64, m: u32) -> f64 {
    (cell_count as f64).ln() / (m as f64 * 3f64.ln())
}

pub fn graph_boxcount(map: &DigitMap, m: u32, cells: Cells, budget: &Budget) -> Result<BoxCountReport> {
    check_rank(m, budget)?;
    let cell_count = match cells {
        Cells::HalfOpen => {
            let squares: HashSet<Square> = graph_squares(map, m).into_iter().collect();
            squares.len() as u64
        }
        Cells::Closed => closed_squares(map, m).len() as u64,
    };
    let cell_side_den = 3u64.pow(m);
    // K = 3^m gives exactly 1; avoid the rounding of the float ratio there.
    let dimension_estimate = if cell_count == cell_side_den {
        1.0
    } else {
        dimension_estimate(cell_count, m)
    };
    Ok(BoxCountReport {
        rank: m,
        cell_count,
        cell_side_den,
        dimension_estimate,
    })
}
