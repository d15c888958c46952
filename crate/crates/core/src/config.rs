//! Caps and seeds shared by every search in the crate.

use std::env;

pub const ENV_CAP_SIEVES: &str = "GSITE_CAP_SIEVES";
pub const ENV_CAP_HOMS: &str = "GSITE_CAP_HOMS";
pub const ENV_CAP_SEARCH: &str = "GSITE_CAP_SEARCH";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Maximum number of sieves enumerated at a single object.
    pub cap_sieves: usize,
    /// Maximum size of a hom-set that may be enumerated, and of a built table.
    pub cap_homs: usize,
    /// Maximum number of candidates visited by exhaustive searches.
    pub cap_search: usize,
    /// Randomized associativity/unit samples for finite-set categories.
    pub spot_checks: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cap_sieves: 20_000,
            cap_homs: 100_000,
            cap_search: 1_000_000,
            spot_checks: 1000,
            seed: 0,
        }
    }
}

impl Config {
    /// Defaults, overridden by `GSITE_CAP_*` environment variables when set.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        let read = |key: &str| env::var(key).ok().and_then(|v| v.trim().parse::<usize>().ok());
        if let Some(v) = read(ENV_CAP_SIEVES) {
            cfg.cap_sieves = v;
        }
        if let Some(v) = read(ENV_CAP_HOMS) {
            cfg.cap_homs = v;
        }
        if let Some(v) = read(ENV_CAP_SEARCH) {
            cfg.cap_search = v;
        }
        cfg
    }
}
