//! Deterministic sample-point selection for identity checks.

use alloc::vec::Vec;

/// SplitMix64 step: a tiny, well-mixed PRNG sufficient for picking
/// sample indices reproducibly from a `u64` seed.
#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform f64 in `[0, 1)` from the generator state.
#[inline]
pub fn next_unit(state: &mut u64) -> f64 {
    (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64
}

/// Select `count` distinct grid indices in `[margin, len - 1 - margin]`,
/// sorted ascending. Deterministic in `seed`. If the admissible range has
/// fewer than `count` indices, all of them are returned.
pub fn select_samples(len: usize, margin: usize, count: usize, seed: u64) -> Vec<usize> {
    if len <= 2 * margin {
        return Vec::new();
    }
    let lo = margin;
    let hi = len - 1 - margin;
    let span = hi - lo + 1;
    if span <= count {
        return (lo..=hi).collect();
    }
    let mut state = seed ^ 0xD1B5_4A32_D192_ED03;
    let mut picked: Vec<usize> = Vec::with_capacity(count);
    while picked.len() < count {
        let idx = lo + (splitmix64(&mut state) % span as u64) as usize;
        if !picked.contains(&idx) {
            picked.push(idx);
        }
    }
    picked.sort_unstable();
    picked
}

/// Observed convergence order from residuals at spacings `h` and `h/2`:
/// `log2(res_h / res_half)`. Residual pairs that are both below `floor`
/// are reported as `f64::INFINITY` (exact at working precision).
pub fn observed_order(res_h: f64, res_half: f64, floor: f64) -> f64 {
    if res_h.abs() <= floor && res_half.abs() <= floor {
        return f64::INFINITY;
    }
    if res_half == 0.0 {
        return f64::INFINITY;
    }
    libm::log2(res_h.abs() / res_half.abs())
}
