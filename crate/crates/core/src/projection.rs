//! View projections: derives the IBD, SMD, and AD relations from a model's
//! transition rows by column selection plus set deduplication.
//!
//! All four projections scan regions in declared order and rows in declared
//! order, keeping the first occurrence of each duplicate, so output order is
//! deterministic. IBD deduplicates globally; SMD and AD deduplicate within
//! each region only — rows from different regions never merge because the
//! region tag is part of the row.

use std::collections::HashSet;

use crate::model::{AdrRow, IbdrRow, ItgrViewRow, SmdrRow, SystemModel, ViewRelation};

/// The system transition relation as an output table: every row of every
/// region in order, with the channel's parameter list resolved in.
pub fn project_itgr(model: &SystemModel) -> ViewRelation {
    let mut rows = Vec::new();
    for region in &model.regions {
        for t in &region.transitions {
            rows.push(ItgrViewRow {
                source: t.source.clone(),
                caller: t.interaction.caller.clone(),
                channel: t.interaction.channel.clone(),
                params: model.channel_params(&t.interaction.channel).to_vec(),
                callee: t.interaction.callee.clone(),
                target: t.target.clone(),
            });
        }
    }
    ViewRelation::Itgr(rows)
}

/// Internal-block-diagram relation: distinct
/// `(caller, channel, params, callee)` tuples across all regions.
pub fn project_ibd(model: &SystemModel) -> ViewRelation {
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for region in &model.regions {
        for t in &region.transitions {
            let row = IbdrRow {
                caller: t.interaction.caller.clone(),
                channel: t.interaction.channel.clone(),
                params: model.channel_params(&t.interaction.channel).to_vec(),
                callee: t.interaction.callee.clone(),
            };
            if seen.insert(row.clone()) {
                rows.push(row);
            }
        }
    }
    ViewRelation::Ibdr(rows)
}

/// State-machine-diagram relation: per region, distinct
/// `(source, channel, target)` triples tagged with the region id.
pub fn project_smd(model: &SystemModel) -> ViewRelation {
    let mut rows = Vec::new();
    for region in &model.regions {
        let mut seen = HashSet::new();
        for t in &region.transitions {
            let row = SmdrRow {
                region: region.id.clone(),
                source: t.source.clone(),
                channel: t.interaction.channel.clone(),
                target: t.target.clone(),
            };
            if seen.insert(row.clone()) {
                rows.push(row);
            }
        }
    }
    ViewRelation::Smdr(rows)
}

/// Activity-diagram relation: per region, distinct
/// `(source, channel, params, callee, target)` tuples tagged with the
/// region id. The caller column is projected away.
pub fn project_ad(model: &SystemModel) -> ViewRelation {
    let mut rows = Vec::new();
    for region in &model.regions {
        let mut seen = HashSet::new();
        for t in &region.transitions {
            let row = AdrRow {
                region: region.id.clone(),
                source: t.source.clone(),
                channel: t.interaction.channel.clone(),
                params: model.channel_params(&t.interaction.channel).to_vec(),
                callee: t.interaction.callee.clone(),
                target: t.target.clone(),
            };
            if seen.insert(row.clone()) {
                rows.push(row);
            }
        }
    }
    ViewRelation::Adr(rows)
}
