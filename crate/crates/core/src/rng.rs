//! Seeded sampling helpers.
//!
//! Every randomized check draws from its own ChaCha8 stream. The key is
//! `splitmix64(seed ^ fnv1a(check_name))` and the stream number is the trial
//! index, so trial `t` of a run can be replayed alone from `(seed, name, t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cd::CDElement;
use crate::jordan::JordanElement;
use crate::scalar::{Field, Scalar};

pub const DEFAULT_HEIGHT: u32 = 10;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Deterministic stream for trial `trial` of the check `name`.
pub fn trial_rng(seed: u64, name: &str, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ fnv1a(name)));
    rng.set_stream(trial);
    rng
}

fn h(height: u32) -> i64 {
    height.max(1) as i64
}

/// Integer in `[-height, height]`.
pub fn rand_int<R: Rng + ?Sized>(rng: &mut R, height: u32) -> i64 {
    rng.gen_range(-h(height)..=h(height))
}

/// `a/b` with `|a| <= height`, `1 <= b <= height`.
pub fn rand_rational<R: Rng + ?Sized>(rng: &mut R, height: u32) -> BigRational {
    let num = rand_int(rng, height);
    let den = rng.gen_range(1..=h(height));
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rand_nonzero_rational<R: Rng + ?Sized>(rng: &mut R, height: u32) -> BigRational {
    loop {
        let q = rand_rational(rng, height);
        if q != BigRational::default() {
            return q;
        }
    }
}

pub fn rand_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field, height: u32) -> Scalar {
    match field {
        Field::Rational => Scalar::from_rational(rand_rational(rng, height)),
        Field::Gaussian => Scalar::complex(rand_rational(rng, height), rand_rational(rng, height)),
    }
}

pub fn rand_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field, height: u32) -> Scalar {
    loop {
        let s = rand_scalar(rng, field, height);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Gaussian integer with both parts in `[-height, height]` (real integer over Q).
pub fn rand_int_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field, height: u32) -> Scalar {
    match field {
        Field::Rational => Scalar::from_int(rand_int(rng, height)),
        Field::Gaussian => Scalar::gaussian(rand_int(rng, height), rand_int(rng, height)),
    }
}

pub fn rand_cd<R: Rng + ?Sized>(rng: &mut R, level: u8, field: Field, height: u32) -> CDElement {
    let coeffs = (0..1usize << level).map(|_| rand_scalar(rng, field, height)).collect();
    CDElement::new(level, field, coeffs).expect("valid shape")
}

pub fn rand_jordan<R: Rng + ?Sized>(rng: &mut R, n: usize, level: u8, field: Field, height: u32) -> JordanElement {
    let upper = (0..n)
        .map(|i| {
            (i..n)
                .map(|j| {
                    if i == j {
                        CDElement::from_scalar(level, field, rand_scalar(rng, field, height))
                    } else {
                        rand_cd(rng, level, field, height)
                    }
                })
                .collect()
        })
        .collect();
    JordanElement::from_upper(upper).expect("hermitian by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_replay_and_differ() {
        let a: Vec<u32> = (0..4).map(|_| trial_rng(7, "x", 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| trial_rng(7, "x", 3).gen()).collect();
        assert_eq!(a, b);
        let mut r1 = trial_rng(7, "x", 3);
        let mut r2 = trial_rng(7, "x", 4);
        let mut r3 = trial_rng(7, "y", 3);
        let (x1, x2, x3): (u64, u64, u64) = (r1.gen(), r2.gen(), r3.gen());
        assert_ne!(x1, x2);
        assert_ne!(x1, x3);
    }

    #[test]
    fn rationals_respect_height() {
        let mut rng = trial_rng(1, "h", 0);
        for _ in 0..200 {
            let q = rand_rational(&mut rng, 3);
            assert!(q.numer().magnitude() <= &3u32.into());
            assert!(q.denom() <= &BigInt::from(3));
        }
    }
}
