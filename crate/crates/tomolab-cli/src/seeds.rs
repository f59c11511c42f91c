//! Deterministic stream derivation. Every random draw in the binary comes
//! from a ChaCha12 stream keyed by (master seed, domain, index), so adding
//! trials or reordering work never perturbs the draws of existing trials.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Experiment-level frame or fixed unitary (index 0).
    Frame = 1,
    /// Per-trial initial state.
    State = 2,
    /// Per-trial dynamics (Haar steps or diagonal phases).
    Process = 3,
    /// Per-trial measurement noise.
    Noise = 4,
    /// Per-trial observable rotation.
    Rotation = 5,
    /// Wishart reference draws for the RMT self-test.
    Wishart = 6,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent ChaCha12 stream for (master, domain, index).
pub fn stream(master: u64, domain: Domain, index: u64) -> ChaCha12Rng {
    let mut state = master;
    let _ = splitmix64(&mut state);
    state ^= (domain as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let _ = splitmix64(&mut state);
    state ^= index.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}
