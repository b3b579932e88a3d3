//! The Lebesgue integral of a digit map over `[0, 1]`.
//!
//! The graph splits into three copies scaled by `1/3`: for `x` in the
//! `d`-th third, `f(x) = phi(d)/3 + f(3x - d)/3`. Integrating gives
//! `I = (phi(0) + phi(1) + phi(2)) / 9 + I / 3`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};
use crate::transducer::DigitMap;
use crate::trit::Trit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SelfSimilar,
    Riemann,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "selfsimilar" => Ok(Method::SelfSimilar),
            "riemann" => Ok(Method::Riemann),
            other => Err(Error::UnknownOption {
                what: "integration method",
                value: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::SelfSimilar => "selfsimilar",
            Method::Riemann => "riemann",
        })
    }
}

/// Exact solution of the self-similarity equation `I = s/9 + I/3`.
pub fn selfsimilar_integral(map: &DigitMap) -> Rational {
    let digit_sum: i64 = Trit::ALL.iter().map(|&d| map.map(d).value() as i64).sum();
    // I (1 - 1/3) = s/9
    let constant = ratio(digit_sum, 9);
    constant / (int(1) - ratio(1, 3))
}

/// Exact mean of `f` over the `3^depth` points `k / 3^depth`.
///
/// At such a point only the first `depth` digits are nonzero, so
/// `f(k/3^depth) * 3^depth` is the integer whose digits are the images of
/// the digits of `k`, plus the constant zero-digit tail `phi(0)/2`.
pub fn riemann_integral(map: &DigitMap, depth: u32, budget: &Budget) -> Result<Rational> {
    if depth > budget.max_riemann_depth {
        return Err(Error::OverBudget {
            what: "riemann depth",
            value: depth as u64,
            max: budget.max_riemann_depth as u64,
        });
    }
    let n = 3u64.pow(depth);
    let phi = [0u8, 1, 2].map(|d| map.map(Trit::new(d).expect("digit")).value() as u128);
    let mut total: u128 = 0;
    for k in 0..n {
        let mut rest = k;
        let mut image: u128 = 0;
        let mut scale: u128 = 1;
        for _ in 0..depth {
            image += phi[(rest % 3) as usize] * scale;
            rest /= 3;
            scale *= 3;
        }
        total += image;
    }
    // sum_k f(x_k) = total / 3^depth + n * phi(0) / (2 * 3^depth)
    let pts = BigInt::from(n);
    let sum = Rational::new(BigInt::from(total), pts.clone())
        + Rational::new(BigInt::from(n as u128 * phi[0]), BigInt::from(2) * &pts);
    Ok(sum / Rational::from_integer(pts))
}

pub fn integral(map: &DigitMap, method: Method, depth: u32, budget: &Budget) -> Result<Rational> {
    match method {
        Method::SelfSimilar => Ok(selfsimilar_integral(map)),
        Method::Riemann => {
            if depth == 0 {
                return Err(Error::TooSmall {
                    what: "riemann depth",
                    value: 0,
                    min: 1,
                });
            }
            riemann_integral(map, depth, budget)
        }
    }
}

/// The accepted deviation of the depth-`d` Riemann mean from the integral: `3 * 3^-d`.
pub fn riemann_tolerance(depth: u32) -> Rational {
    int(3) * crate::rational::pow3_inv(depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::half;
    use crate::transducer::{builtin, eval};
    use num_traits::Signed;

    fn f() -> DigitMap {
        builtin("f").unwrap()
    }

    /// Average of f evaluated through the representation layer.
    fn riemann_via_reps(map: &DigitMap, depth: u32) -> Rational {
        let n = 3u64.pow(depth);
        let mut sum = int(0);
        for k in 0..n {
            let x = crate::trit::from_rational(&ratio(k as i64, n as i64)).unwrap();
            sum += eval(map, &x);
        }
        sum / int(n as i64)
    }

    #[test]
    fn selfsimilar_is_one_half() {
        assert_eq!(integral(&f(), Method::SelfSimilar, 0, &Budget::default()).unwrap(), half());
        for name in ["f1", "f3", "f4", "f5", "f6"] {
            assert_eq!(selfsimilar_integral(&builtin(name).unwrap()), half());
        }
        // merge maps average a single 1 digit per position: 1/6
        assert_eq!(selfsimilar_integral(&builtin("f01").unwrap()), ratio(1, 6));
    }

    #[test]
    fn riemann_depth_one() {
        let r = riemann_integral(&f(), 1, &Budget::default()).unwrap();
        assert_eq!(r, ratio(1, 3));
        assert!((r - half()).abs() <= riemann_tolerance(1));
    }

    #[test]
    fn riemann_matches_representation_layer() {
        for name in ["f", "f6", "f12", "f4"] {
            let m = builtin(name).unwrap();
            for depth in 1..=4 {
                assert_eq!(
                    riemann_integral(&m, depth, &Budget::default()).unwrap(),
                    riemann_via_reps(&m, depth),
                    "{name} depth {depth}"
                );
            }
        }
    }

    #[test]
    fn riemann_closed_form() {
        // each digit position averages (0 + 2 + 1)/3 = 1, so the mean is (1 - 3^-d)/2
        for depth in 1..=8 {
            let r = riemann_integral(&f(), depth, &Budget::default()).unwrap();
            assert_eq!(r, (int(1) - crate::rational::pow3_inv(depth)) * half());
        }
    }

    #[test]
    fn riemann_budget() {
        let small = Budget {
            max_riemann_depth: 3,
            ..Budget::default()
        };
        assert!(matches!(
            riemann_integral(&f(), 4, &small),
            Err(Error::OverBudget { .. })
        ));
        assert!(integral(&f(), Method::Riemann, 0, &small).is_err());
    }
}
