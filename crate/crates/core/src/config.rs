/// Size limits for the brute-force machinery.
///
/// Quantifier sweeps cost `|L|^k` for `k` nested quantifiers, so every entry
/// point that can blow up checks one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_ground: usize,
    pub max_elements: usize,
    /// Largest `n` accepted by the covering-dimension formula builder.
    pub max_delta_n: usize,
    /// Largest `n` accepted by the partition and cut recursions.
    pub max_recursive_n: i32,
    pub max_sample_depth: usize,
    /// Largest number of elements kept per round when generating interval samples.
    pub max_sample_size: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_ground: 10,
            max_elements: 4096,
            max_delta_n: 4,
            max_recursive_n: 2,
            max_sample_depth: 4,
            max_sample_size: 512,
        }
    }
}
