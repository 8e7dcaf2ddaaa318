//! Exact arithmetic for integer circulant (cyclic-group) determinants.
//!
//! The library computes the determinant values `M_n(F)` of integer circulant
//! matrices through their factorization into cyclotomic norms `N_d(F)`,
//! reproduces the explicit witness-polynomial families that realize given
//! values, classifies primes `p = 1 mod 15` as 15-norm good or bad through a
//! constructive canonical-form reduction in `Z[w_15]`, decides membership in
//! the value sets `S_p`, `S_2p` and `S_15` with verified witness synthesis,
//! and ships an exhaustive-search oracle that reconciles enumerated values
//! against the decision procedure.
//!
//! Everything is exact: coefficients are arbitrary-precision integers and no
//! floating point enters any verified path. With the default `parallel`
//! feature the search and batch classification fan out with rayon; disabling
//! default features yields a dependency-free sequential build with identical,
//! byte-for-byte deterministic output.

pub mod error;
pub mod goodbad;
pub mod member;
pub mod norms;
pub mod numfield;
pub mod poly;
pub mod search;
pub mod witness;

pub mod accept;

mod par;

pub use error::{Error, Result};
pub use poly::{cyclotomic, resultant, IntPoly};

/// Configures the global worker pool used by parallel entry points.
/// A count of 0 leaves the library default in place. Without the
/// `parallel` feature this is a no-op and everything runs sequentially.
pub fn configure_workers(workers: usize) {
    #[cfg(feature = "parallel")]
    {
        if workers > 0 {
            // Ignore the error if a global pool was already installed.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
    }
}
