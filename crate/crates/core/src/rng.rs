//! Counter-based random substreams.
//!
//! Every random draw in the simulation is addressed by `(seed, stream, index)`:
//! the seed and index fill the ChaCha key, the stream selects the ChaCha
//! stream. Draws therefore do not depend on evaluation order, which keeps
//! parallel and serial runs bit-identical.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for substream `(seed, stream, index)`.
pub fn substream(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16..24].copy_from_slice(b"duality!");
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}

/// Mixes a tag into a seed (splitmix64 finalizer), for deriving independent
/// seeds for sub-tasks such as sweep points.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
