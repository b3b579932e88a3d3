//! Seeded generators of eventually periodic representations.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::trit::{Trit, TernaryRep};

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_trit<R: Rng + ?Sized>(rng: &mut R) -> Trit {
    Trit::new(rng.gen_range(0..3)).expect("below 3")
}

pub fn random_trits<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Trit> {
    (0..len).map(|_| random_trit(rng)).collect()
}

/// Preperiod length uniform in `0..=8`, period length uniform in `1..=6`,
/// digits uniform, then canonicalized.
pub fn random_rep<R: Rng + ?Sized>(rng: &mut R) -> TernaryRep {
    let p = rng.gen_range(0..=8);
    let q = rng.gen_range(1..=6);
    let pre = random_trits(rng, p);
    let period = random_trits(rng, q);
    TernaryRep::new(pre, period)
}

/// A terminating point strictly inside `(0, 1)` with `1..=max_len` digits.
pub fn random_terminating<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> TernaryRep {
    let n = rng.gen_range(1..=max_len.max(1));
    let mut digits = random_trits(rng, n - 1);
    digits.push(Trit::new(rng.gen_range(1..3)).expect("below 3"));
    TernaryRep::terminating(digits)
}
