/// Caps on the exponential parts of the library.
///
/// Exceeding a cap is an error (`GuardExceeded` / `SizeGuard`), never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest cutset for which coherence is decided by subset enumeration.
    pub coherence: usize,
    /// Largest number of simplices a complex may be expanded into.
    pub simplices: usize,
    /// Largest number of distinct star-sets produced while building a
    /// crosscut poset.
    pub carriers: usize,
    /// Largest poset handed to the exhaustive fixed-point search (after core
    /// preprocessing, when enabled). Never above 64.
    pub fpp: usize,
    /// Largest set of minimal elements whose subsets are enumerated for joins.
    pub subset_joins: usize,
    /// Largest poset accepted by the isomorphism search.
    pub isomorphism: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        coherence: 20,
        simplices: 1 << 20,
        carriers: 100_000,
        fpp: 12,
        subset_joins: 20,
        isomorphism: 64,
    };

    /// Defaults with the element-count guards (coherence, fixed points,
    /// joins) set to `n`.
    pub fn with_guard(n: usize) -> Limits {
        Limits {
            coherence: n,
            fpp: n.min(64),
            subset_joins: n,
            ..Limits::DEFAULT
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}
