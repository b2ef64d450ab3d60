//! Deterministic substream derivation from a master seed.
//!
//! Every stochastic operation in a session draws from a ChaCha12 stream whose
//! 32-byte seed is built from `(master_seed, stream label, index)`:
//!
//! * bytes 0..8:   master seed, little endian
//! * bytes 8..16:  stream label
//! * bytes 16..24: index within the stream (e.g. the round id)
//! * bytes 24..32: SplitMix64 diffusion of the three words above
//!
//! Distinct `(stream, index)` pairs therefore get distinct seeds by
//! construction, rounds can be replayed or executed in any order, and a whole
//! session is reproducible from its master seed alone.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Stream label for control-key bootstrap draws.
pub const STREAM_BOOTSTRAP: u64 = 0;
/// Stream label for per-round draws (interception, bases, measurements,
/// check designation), indexed by round id.
pub const STREAM_ROUND: u64 = 1;

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the ChaCha12 stream for `(seed, stream, index)`.
pub fn substream(seed: u64, stream: u64, index: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    let mix = splitmix64(seed ^ stream.rotate_left(24) ^ index.rotate_left(48));
    key[24..32].copy_from_slice(&mix.to_le_bytes());
    ChaCha12Rng::from_seed(key)
}
