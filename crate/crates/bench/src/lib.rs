//! Fixtures shared by the criterion benchmarks in `benches/`.

use rand_chacha::ChaCha8Rng;
use scorza_core::rng::{rand_cd, rand_jordan, trial_rng, DEFAULT_HEIGHT};
use scorza_core::{CDElement, Field, JordanElement, Matrix, PSpaceModel, StratumPoint};

pub const BENCH_SEED: u64 = 1;

pub fn rng(name: &str) -> ChaCha8Rng {
    trial_rng(BENCH_SEED, name, 0)
}

pub fn octonion_pair() -> (CDElement, CDElement) {
    let mut r = rng("octonions");
    (rand_cd(&mut r, 3, Field::Gaussian, DEFAULT_HEIGHT), rand_cd(&mut r, 3, Field::Gaussian, DEFAULT_HEIGHT))
}

pub fn albert_element() -> JordanElement {
    rand_jordan(&mut rng("albert"), 3, 3, Field::Gaussian, DEFAULT_HEIGHT)
}

pub fn secant_point(model: PSpaceModel, rank: usize) -> StratumPoint {
    scorza_core::strata::sample_secant(model, rank - 1, &mut rng("secant"), DEFAULT_HEIGHT).expect("valid rank")
}

/// Square Gaussian-rational matrix of size `n`.
pub fn gaussian_matrix(n: usize) -> Matrix {
    let mut r = rng("matrix");
    Matrix::from_fn(n, n, |_, _| scorza_core::rng::rand_scalar(&mut r, Field::Gaussian, DEFAULT_HEIGHT))
}
