/// Size limits and seeds shared by the expensive operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub table_cap: usize,
    pub closure_cap: usize,
    pub aut_cap: usize,
    /// Candidate matrices in form enumeration.
    pub enum_cap: usize,
    /// Sparse work (nnz²) allowed when materializing triple tensors.
    pub triple_tensor_cap: usize,
    /// Generator-image candidates in the H¹ search.
    pub h1_cap: usize,
    /// Dimension of the dense linear solve used for non-abelian inverses.
    pub inversion_cap: usize,
    pub seed: u64,
    /// Working conductor is multiplied by this when a root is missing.
    pub conductor_multiplier: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            table_cap: 512,
            closure_cap: 20_000,
            aut_cap: 512,
            enum_cap: 10_000,
            triple_tensor_cap: 125 * 125 * 125,
            h1_cap: 1_000_000,
            inversion_cap: 625,
            seed: 0x5eed,
            conductor_multiplier: 1,
        }
    }
}
