//! Numerical support: quadrature, root finding, interpolation, ODE stepping,
//! and the seeded generator used by the simulation oracle.

pub mod interp;
pub mod ode;
pub mod quad;
pub mod roots;

use rand::SeedableRng;

/// The generator behind every randomized path: ChaCha8, a counter-based
/// stream cipher, seeded explicitly so runs are reproducible bit-for-bit.
pub type SeededRng = rand_chacha::ChaCha8Rng;

/// Master generator for a given 64-bit seed.
pub fn rng_from_seed(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// Independent sub-stream `stream` of the master seed. Streams never overlap,
/// so per-stream reductions are stable for a fixed (seed, stream count).
pub fn rng_stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = SeededRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
