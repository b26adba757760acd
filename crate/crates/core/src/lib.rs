//! Model compiler and simulator library for channel-based interaction
//! transition graphs: a single relational model that houses both the
//! structure of a system (actors, blocks, channels) and its behavior
//! (orthogonal regions of states and labelled transitions).
//!
//! The pipeline:
//!
//! 1. [`dsl::parse`] reads the `.itg` text format; [`dsl::print`] writes it
//!    back canonically.
//! 2. [`validate::validate`] checks relational well-formedness and returns
//!    diagnostics instead of aborting.
//! 3. [`compose::compose`] builds the system transition relation as the
//!    region-tagged disjoint union of the per-region relations.
//! 4. [`projection`] derives the block-diagram, state-machine, and activity
//!    views by column selection with set deduplication.
//! 5. [`render`] serializes views as CSV tables or DOT graphs.
//! 6. [`simulator`] executes the model as a labelled transition system under
//!    a fair choice policy and checks trace membership.

pub mod compose;
pub mod dsl;
pub mod model;
pub mod projection;
pub mod render;
pub mod simulator;
pub mod validate;
