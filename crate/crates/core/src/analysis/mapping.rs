//! Mapping properties of `f`: range, fixed points, value collisions and the
//! sets on which it is monotone.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::analysis::random::{random_rep, rng};
use crate::rational::Rational;
use crate::transducer::{apply, builtin, eval, DigitMap};
use crate::trit::{Trit, TernaryRep};

fn f() -> DigitMap {
    builtin("f").expect("builtin f")
}

/// The four families of distinct points sharing an image under `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    /// `c 2 000...` and `c 0 111...`
    G1,
    /// `c 1 000...` and `c 2 111...`
    G2,
    /// `c 0 111...` and `c 2 000...`
    G3,
    /// `c 2 111...` and `c 1 000...`
    G4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::G1, Family::G2, Family::G3, Family::G4];

    /// Branch digit and tail (0 for zeros, 1 for ones) of each member.
    fn shape(self) -> [(u8, u8); 2] {
        match self {
            Family::G1 => [(2, 0), (0, 1)],
            Family::G2 => [(1, 0), (2, 1)],
            Family::G3 => [(0, 1), (2, 0)],
            Family::G4 => [(2, 1), (1, 0)],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionPair {
    pub family: Family,
    pub x1: TernaryRep,
    pub x2: TernaryRep,
    pub image1: TernaryRep,
    pub image2: TernaryRep,
}

impl CollisionPair {
    pub fn verified(&self) -> bool {
        self.x1.to_rational() != self.x2.to_rational()
            && self.image1.to_rational() == self.image2.to_rational()
    }
}

fn branch_point(prefix: &[Trit], branch: u8, tail: u8) -> TernaryRep {
    let mut pre = prefix.to_vec();
    pre.push(Trit::new(branch).expect("digit"));
    let period = if tail == 0 { Vec::new() } else { vec![Trit::ONE] };
    TernaryRep::new(pre, period)
}

/// Builds the pairs of `G1..G4` after `prefix`, with their canonical images.
pub fn injectivity_families(prefix: &[Trit]) -> Vec<CollisionPair> {
    let f = f();
    Family::ALL
        .into_iter()
        .map(|family| {
            let [(b1, t1), (b2, t2)] = family.shape();
            let x1 = branch_point(prefix, b1, t1);
            let x2 = branch_point(prefix, b2, t2);
            CollisionPair {
                family,
                image1: apply(&f, &x1),
                image2: apply(&f, &x2),
                x1,
                x2,
            }
        })
        .collect()
}

/// Whether a pair of points with a common prefix and branch digits lies in
/// one of the collision families.
pub fn collides(x1: &TernaryRep, x2: &TernaryRep) -> bool {
    let f = f();
    x1.to_rational() != x2.to_rational() && eval(&f, x1) == eval(&f, x2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub prefix: Vec<Trit>,
    pub trials: usize,
    pub seed: u64,
    /// Pairs `c1... < c2...` with `f(x1) > f(x2)`.
    pub decreasing_passed: usize,
    /// Pairs `c0... < cr...` with `f(x1) < f(x2)`.
    pub increasing_passed: usize,
    /// Sampled pairs that collided in value and were drawn again.
    pub regenerated: usize,
    pub failures: Vec<(TernaryRep, TernaryRep)>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.decreasing_passed == self.trials
            && self.increasing_passed == self.trials
    }
}

/// Any canonical tail other than the number 1.
fn random_tail<R: Rng + ?Sized>(rng: &mut R) -> TernaryRep {
    loop {
        let t = random_rep(rng);
        if !t.is_one() {
            return t;
        }
    }
}

fn with_branch(prefix: &[Trit], branch: Trit, tail: &TernaryRep) -> TernaryRep {
    let mut pre = prefix.to_vec();
    pre.push(branch);
    pre.extend_from_slice(tail.preperiod());
    TernaryRep::new(pre, tail.period().to_vec())
}

/// Samples pairs `x1 < x2` sharing `prefix`; a 1-vs-2 branch must reverse
/// order under `f`, a 0-vs-r branch must keep it. Pairs whose values collide
/// (the `G` families) are drawn again and counted.
pub fn monotonicity_check(prefix: &[Trit], trials: usize, seed: u64) -> MonotonicityReport {
    let f = f();
    let mut rng = rng(seed);
    let mut report = MonotonicityReport {
        prefix: prefix.to_vec(),
        trials,
        seed,
        decreasing_passed: 0,
        increasing_passed: 0,
        regenerated: 0,
        failures: Vec::new(),
    };

    let sample = |rng: &mut rand_chacha::ChaCha8Rng, lo: Trit, hi: Trit, report: &mut MonotonicityReport| loop {
        let x1 = with_branch(prefix, lo, &random_tail(rng));
        let x2 = with_branch(prefix, hi, &random_tail(rng));
        if collides(&x1, &x2) {
            report.regenerated += 1;
            continue;
        }
        return (x1, x2);
    };

    for _ in 0..trials {
        let (x1, x2) = sample(&mut rng, Trit::ONE, Trit::TWO, &mut report);
        if x1 < x2 && eval(&f, &x1) > eval(&f, &x2) {
            report.decreasing_passed += 1;
        } else {
            report.failures.push((x1, x2));
        }

        let r = if rng.gen_bool(0.5) { Trit::ONE } else { Trit::TWO };
        let (x1, x2) = sample(&mut rng, Trit::ZERO, r, &mut report);
        if x1 < x2 && eval(&f, &x1) < eval(&f, &x2) {
            report.increasing_passed += 1;
        } else {
            report.failures.push((x1, x2));
        }
    }
    report
}

/// Compares `f` at two points by exact value.
pub fn compare_images(x1: &TernaryRep, x2: &TernaryRep) -> Ordering {
    let f = f();
    eval(&f, x1).cmp(&eval(&f, x2))
}

fn for_each_word(len: usize, mut visit: impl FnMut(&[Trit])) {
    let mut word = vec![Trit::ZERO; len];
    loop {
        visit(&word);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if word[i] == Trit::TWO {
                word[i] = Trit::ZERO;
            } else {
                word[i] = Trit::new(word[i].value() + 1).expect("digit");
                break;
            }
        }
    }
}

/// Candidate representations for the fixed-point scan: every terminating
/// expansion with at most `depth` digits, every expansion with
/// `preperiod + period <= depth` digits, and the number 1.
pub fn fixed_point_candidates(depth: usize) -> Vec<TernaryRep> {
    let mut out = vec![TernaryRep::one()];
    for_each_word(depth, |w| out.push(TernaryRep::terminating(w.to_vec())));
    for total in 1..=depth {
        for q in 1..=total {
            let p = total - q;
            for_each_word(total, |w| {
                out.push(TernaryRep::new(w[..p].to_vec(), w[p..].to_vec()));
            });
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Points with `f(x) = x` among the scan candidates.
pub fn fixed_points(depth: usize) -> Vec<TernaryRep> {
    let f = f();
    fixed_point_candidates(depth.max(1))
        .into_iter()
        .filter(|x| eval(&f, x) == x.to_rational())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeMembership {
    pub y: TernaryRep,
    /// A canonical `x` with `f(x) = y`, when one exists.
    pub witness: Option<TernaryRep>,
}

impl RangeMembership {
    pub fn is_member(&self) -> bool {
        self.witness.is_some()
    }
}

/// Whether `y` is a value of `f`. The candidate preimage is the digitwise
/// inverse image of `y`; it is admissible unless it ends in an all-2s period,
/// which happens exactly when `y` ends in 1s. The one exception is
/// `y = 1/2 = 0.(1)`, the image of `x = 1`.
pub fn range_membership(y: &TernaryRep) -> RangeMembership {
    let f = f();
    let inverse = f.inverse().expect("f is a permutation");
    let candidate = crate::transducer::apply_raw(&inverse, y);
    let all_twos = !candidate.period().is_empty()
        && candidate.period().iter().all(|&d| d == Trit::TWO);
    let witness = if !all_twos || candidate.preperiod().iter().all(|&d| d == Trit::TWO) {
        Some(crate::trit::canonicalize(&candidate))
    } else {
        None
    };
    RangeMembership {
        y: y.clone(),
        witness,
    }
}

/// Value of `f` at the witness, for callers that re-check membership.
pub fn witness_image(m: &RangeMembership) -> Option<Rational> {
    m.witness.as_ref().map(|w| eval(&f(), w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::trit::{parse_rep, trits};

    fn rep(s: &str) -> TernaryRep {
        parse_rep(s).unwrap()
    }

    #[test]
    fn empty_prefix_families() {
        let pairs = injectivity_families(&[]);
        let g1 = &pairs[0];
        assert_eq!(g1.family, Family::G1);
        assert_eq!((g1.x1.clone(), g1.x2.clone()), (rep("0.2"), rep("0.0(1)")));
        assert_eq!(g1.x1.to_rational(), ratio(2, 3));
        assert_eq!(g1.x2.to_rational(), ratio(1, 6));
        assert_eq!(g1.image1, rep("0.1"));
        assert_eq!(g1.image2, rep("0.1"));

        let g2 = &pairs[1];
        assert_eq!((g2.x1.clone(), g2.x2.clone()), (rep("0.1"), rep("0.2(1)")));
        assert_eq!(g2.image1.to_rational(), g2.image2.to_rational());
        assert!(pairs.iter().all(CollisionPair::verified));
    }

    #[test]
    fn prefixed_families() {
        for pair in injectivity_families(&trits(&[1])) {
            assert_eq!(pair.x1.digit(1), Trit::ONE);
            assert_eq!(pair.x2.digit(1), Trit::ONE);
            assert!(pair.verified(), "{}", pair.family);
        }
    }

    #[test]
    fn monotone_examples() {
        assert_eq!(compare_images(&rep("0.10"), &rep("0.20")), Ordering::Greater);
        assert_eq!(compare_images(&rep("0.0(1)"), &rep("0.1")), Ordering::Less);
        let report = monotonicity_check(&trits(&[2]), 100, 7);
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.decreasing_passed, 100);
    }

    #[test]
    fn monotonicity_is_reproducible() {
        assert_eq!(monotonicity_check(&[], 20, 3), monotonicity_check(&[], 20, 3));
    }

    #[test]
    fn fixed_point_is_zero() {
        assert_eq!(fixed_points(1), vec![TernaryRep::zero()]);
        assert_eq!(fixed_points(5), vec![TernaryRep::zero()]);
    }

    #[test]
    fn candidate_scan_covers_terminating_words() {
        let c = fixed_point_candidates(3);
        assert!(c.iter().filter(|x| x.is_terminating()).count() == 27);
        assert!(c.contains(&rep("0.(1)")));
        assert!(c.contains(&rep("0.1(02)")));
        assert!(c.contains(&TernaryRep::one()));
    }

    #[test]
    fn range_examples() {
        let m = range_membership(&rep("0.(1)"));
        assert_eq!(m.witness, Some(TernaryRep::one()));
        assert!(!range_membership(&rep("0.2(1)")).is_member());
        let m = range_membership(&rep("0.21"));
        assert_eq!(m.witness, Some(rep("0.12")));
        assert_eq!(witness_image(&m), Some(rep("0.21").to_rational()));
    }
}
