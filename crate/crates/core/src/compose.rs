//! Orthogonal composition: builds the system transition relation as the
//! region-tagged disjoint union of the per-region relations.
//!
//! Composition never deduplicates — two regions may carry identical rows and
//! both survive, distinguished by their region tag. Per-region row order is
//! preserved, so the composed relation is deterministic and
//! `rows.len() == Σ |region.transitions|`.

use std::collections::HashMap;
use thiserror::Error;

use crate::model::{Interaction, Region};

/// One row of the composed system relation, tagged with its source region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedRow {
    pub region: String,
    pub source: String,
    pub interaction: Interaction,
    pub target: String,
}

/// The composed system transition relation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SystemItgr {
    pub rows: Vec<ComposedRow>,
}

impl SystemItgr {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Why two regions cannot be composed.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("DUPLICATE_REGION_ID: region {id} is declared more than once")]
    DuplicateRegionId { id: String },
    #[error("STATE_COLLISION: state {state} belongs to both region {first} and region {second}")]
    StateCollision {
        state: String,
        first: String,
        second: String,
    },
}

/// Composes regions into the system relation.
///
/// Requires distinct region ids and pairwise-disjoint state sets; both are
/// rechecked here so compose is safe to call on unvalidated input.
pub fn compose(regions: &[Region]) -> Result<SystemItgr, ComposeError> {
    let mut owner: HashMap<&str, &str> = HashMap::new();
    let mut ids: HashMap<&str, ()> = HashMap::new();
    for region in regions {
        if ids.insert(&region.id, ()).is_some() {
            return Err(ComposeError::DuplicateRegionId {
                id: region.id.clone(),
            });
        }
        for state in &region.states {
            if let Some(first) = owner.insert(state, &region.id) {
                return Err(ComposeError::StateCollision {
                    state: state.clone(),
                    first: first.to_string(),
                    second: region.id.clone(),
                });
            }
        }
    }

    let mut rows = Vec::new();
    for region in regions {
        for t in &region.transitions {
            rows.push(ComposedRow {
                region: region.id.clone(),
                source: t.source.clone(),
                interaction: t.interaction.clone(),
                target: t.target.clone(),
            });
        }
    }
    Ok(SystemItgr { rows })
}
