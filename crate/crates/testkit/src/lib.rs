//! Test-only helpers shared by the workspace's test suites:
//!
//! - [`gen`]: seeded random generation of valid models (and targeted
//!   corruption of them) for property tests,
//! - [`dot`]: an independent DOT-language checker used to verify emitted
//!   graph documents without going through the emitter's own code paths.
//!
//! Nothing here is used by the library or CLI at runtime.

pub mod dot;
pub mod gen;
