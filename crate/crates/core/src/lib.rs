//! Finite models of pointfree topology.
//!
//! The crate builds finite frames and checks, by exhaustive enumeration,
//! the constructions that relate them: nuclei and sublocales, overt locales
//! over an explicit base of truth values, density and strong density,
//! overlap algebras, and the interior/closure identities on finite spaces.
//!
//! ```
//! use locale_lab::{fixtures, nuclei, oalgebra};
//!
//! // C3 over itself is an overlap algebra that is not Boolean.
//! let x = fixtures::oc3();
//! let report = oalgebra::is_oalgebra(&x);
//! assert!(report.is_oalgebra && !report.is_boolean);
//! assert!(nuclei::rx_nucleus(&x).unwrap().is_identity());
//! ```

pub mod bits;
pub mod cli;
pub mod corpus;
pub mod doc;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod nuclei;
pub mod oalgebra;
pub mod omega;
pub mod spaces;

pub use error::{Error, Result};

/// Environment variable overriding [`Limits::max_nucleus_carrier`].
pub const MAX_CARRIER_ENV: &str = "LOCALE_LAB_MAX_CARRIER";

/// Size caps for constructions and exhaustive scans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier built by the powerset, downset and discrete constructions.
    pub max_carrier: usize,
    /// Largest carrier for `O(n³)` law checks.
    pub max_triple_check: usize,
    /// Largest carrier for nucleus enumeration.
    pub max_nucleus_carrier: usize,
    /// Largest point set for checks over all subsets of a space.
    pub max_space_points: usize,
    /// Largest point set for enumerating all topologies.
    pub max_topology_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_carrier: 4096,
            max_triple_check: 64,
            max_nucleus_carrier: 12,
            max_space_points: 10,
            max_topology_points: 4,
        }
    }
}

impl Limits {
    /// Defaults, with the nucleus cap taken from `LOCALE_LAB_MAX_CARRIER`
    /// when it holds a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = std::env::var(MAX_CARRIER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits.max_nucleus_carrier = cap;
        }
        limits
    }
}
