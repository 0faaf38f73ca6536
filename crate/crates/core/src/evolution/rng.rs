//! Deterministic per-task random streams.
//!
//! Every candidate evaluation, refinement iteration and test set draws from
//! its own ChaCha stream keyed by (master seed, tag, index), so results do
//! not depend on scheduling or worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamTag {
    SelectionDraw = 1,
    SelectionAbe = 2,
    Genetic = 3,
    Refine = 4,
    RefineFinal = 5,
    Evaluate = 6,
    Faults = 7,
    Train = 8,
    NetlistCheck = 9,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, tag: StreamTag, index: u64) -> u64 {
    splitmix(splitmix(splitmix(master) ^ tag as u64) ^ index)
}

pub fn stream(master: u64, tag: StreamTag, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, tag, index))
}
