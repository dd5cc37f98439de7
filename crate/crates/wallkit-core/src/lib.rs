//! Exact combinatorics of walls over finite sets.
//!
//! The crate covers finite posets and set partitions ([`poset`]), walls and
//! their products ([`wall`]), dimension-level calculus for reduced modules
//! and bimodules over the symmetric groups ([`smodule`]), colouring chain
//! complexes ([`colouring`]) and the exact integer matrix algebra behind
//! their homology ([`linalg`]).
//!
//! Everything is `no_std` with `alloc`. Ground sets are `1..=n`; a subset of
//! a ground set is a bitmask where bit `i` stands for element `i + 1`.
//! Indices into sequences (bricks, blocks, poset carriers) are 0-based.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod colouring;
pub mod error;
pub mod linalg;
pub mod poset;
pub mod smodule;
pub mod wall;

pub use error::{Error, Result};

/// Enumeration limits shared by every budgeted operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_ground: usize,
    pub max_bricks: usize,
    pub max_arity: usize,
    pub max_weight: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_ground: 6, max_bricks: 6, max_arity: 8, max_weight: 6 }
    }
}

impl Budget {
    /// A budget that never refuses. Only meant for tests and oracles.
    pub const UNLIMITED: Budget = Budget { max_ground: usize::MAX, max_bricks: usize::MAX, max_arity: usize::MAX, max_weight: usize::MAX };

    pub(crate) fn walls(&self, n: usize, r: usize) -> Result<()> {
        if n > self.max_ground || r > self.max_bricks {
            return Err(Error::BudgetExceeded { what: "walls", requested: n.max(r) });
        }
        Ok(())
    }
}
