//! Seeded random model generation.
//!
//! [`model`] produces models that pass validation by construction: unique
//! declaration names, namespaced per-region states, callees drawn from
//! blocks only, and exact-duplicate rows filtered. Regions are built from
//! their transition lists, so every generated model is also expressible in
//! the text format (no isolated states). [`sabotage`] then breaks one rule
//! on purpose and reports which, for negative-path tests.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use sbc_itg_core::model::{
    Agent, ChannelSignature, Direction, Parameter, Region, SystemModel, Transition,
};
use sbc_itg_core::validate::Rule;

/// Size bounds for generated models.
#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    pub max_regions: usize,
    /// Per-region bound on the state name pool (actual state sets may be
    /// smaller: only mentioned states plus the initial exist).
    pub max_states: usize,
    pub max_transitions: usize,
    pub max_channels: usize,
    pub max_params: usize,
}

impl GenConfig {
    /// The default population for projection/round-trip properties.
    pub fn standard() -> Self {
        GenConfig {
            max_regions: 3,
            max_states: 4,
            max_transitions: 6,
            max_channels: 5,
            max_params: 3,
        }
    }

    /// Tiny models for exhaustive-enumeration oracles.
    pub fn small() -> Self {
        GenConfig {
            max_regions: 2,
            max_states: 3,
            max_transitions: 4,
            max_channels: 3,
            max_params: 1,
        }
    }
}

/// Generates one valid model.
pub fn model(rng: &mut impl Rng, cfg: &GenConfig) -> SystemModel {
    let mut m = SystemModel::new("M");

    let n_actors = rng.gen_range(1..=2);
    let n_blocks = rng.gen_range(1..=3);
    for i in 0..n_actors {
        let mut agent = Agent::actor(format!("A{i}"));
        if rng.gen_bool(0.2) {
            agent = agent.with_display(display_name(rng, i));
        }
        m.agents.push(agent);
    }
    for i in 0..n_blocks {
        let mut agent = Agent::block(format!("B{i}"));
        if rng.gen_bool(0.2) {
            agent = agent.with_display(display_name(rng, i));
        }
        m.agents.push(agent);
    }

    let n_channels = rng.gen_range(1..=cfg.max_channels);
    for i in 0..n_channels {
        let n_params = rng.gen_range(0..=cfg.max_params);
        let params = (0..n_params)
            .map(|j| {
                let dir = *[Direction::In, Direction::Out, Direction::Inout]
                    .choose(rng)
                    .unwrap();
                Parameter::new(dir, format!("p{j}"), format!("T{}", rng.gen_range(0..3)))
            })
            .collect();
        m.channels
            .push(ChannelSignature::new(format!("c{i}"), params));
    }

    let callers: Vec<String> = m.agents.iter().map(|a| a.id.clone()).collect();
    let callees: Vec<String> = m
        .agents
        .iter()
        .filter(|a| a.kind == sbc_itg_core::model::AgentKind::Block)
        .map(|a| a.id.clone())
        .collect();
    let channels: Vec<String> = m.channels.iter().map(|c| c.name.clone()).collect();

    let n_regions = rng.gen_range(1..=cfg.max_regions);
    for r in 0..n_regions {
        let pool: Vec<String> = (0..rng.gen_range(1..=cfg.max_states))
            .map(|s| format!("r{r}s{s}"))
            .collect();
        let n_transitions = rng.gen_range(0..=cfg.max_transitions);
        let mut seen = HashSet::new();
        let mut transitions = Vec::new();
        for _ in 0..n_transitions {
            let t = Transition::new(
                pool.choose(rng).unwrap().clone(),
                callers.choose(rng).unwrap().clone(),
                channels.choose(rng).unwrap().clone(),
                callees.choose(rng).unwrap().clone(),
                pool.choose(rng).unwrap().clone(),
            );
            if seen.insert(t.clone()) {
                transitions.push(t);
            }
        }
        m.regions.push(Region::from_transitions(
            format!("R{r}"),
            pool[0].clone(),
            transitions,
        ));
    }

    m
}

fn display_name(rng: &mut impl Rng, i: usize) -> String {
    // Exercise the printer's escaping now and then.
    match rng.gen_range(0..3) {
        0 => format!(":Part {i}"),
        1 => format!("Part \"{i}\""),
        _ => format!("Part\\{i}"),
    }
}

/// Breaks exactly one well-formedness rule in `m` (chosen among those
/// applicable to its shape) and returns the rule a validator must report.
pub fn sabotage(rng: &mut impl Rng, m: &mut SystemModel) -> Rule {
    // Mutations requiring a transition need a region that has one.
    let region_with_row = m.regions.iter().position(|r| !r.transitions.is_empty());
    let actor_id = m
        .agents
        .iter()
        .find(|a| a.kind == sbc_itg_core::model::AgentKind::Actor)
        .map(|a| a.id.clone());

    let mut options: Vec<Rule> = vec![Rule::ChannelOverload];
    if !m.regions.is_empty() {
        options.extend([Rule::DuplicateRegionId, Rule::StateCollision]);
    }
    if region_with_row.is_some() {
        options.extend([
            Rule::UndeclaredState,
            Rule::DuplicateRow,
            Rule::UnknownAgent,
            Rule::UnknownChannel,
        ]);
        if actor_id.is_some() {
            options.push(Rule::CalleeNotBlock);
        }
    }

    let rule = *options.choose(rng).unwrap();
    match rule {
        Rule::ChannelOverload => {
            let ch = match m.channels.len() {
                0 => {
                    let fresh = ChannelSignature::new("zzCh", vec![]);
                    m.channels.push(fresh.clone());
                    fresh
                }
                n => m.channels[rng.gen_range(0..n)].clone(),
            };
            m.channels.push(ch);
        }
        Rule::DuplicateRegionId => {
            let id = m.regions[0].id.clone();
            // Fresh states keep this from also tripping the collision rule.
            m.regions
                .push(Region::from_transitions(id, "zzDup", vec![]));
        }
        Rule::StateCollision => {
            let stolen = m.regions[0].states.iter().next().unwrap().clone();
            m.regions
                .push(Region::from_transitions("Rzz", stolen, vec![]));
        }
        Rule::UndeclaredState => {
            let r = region_with_row.unwrap();
            m.regions[r].transitions[0].target = "zzMissing".to_string();
        }
        Rule::DuplicateRow => {
            let r = region_with_row.unwrap();
            let row = m.regions[r].transitions[0].clone();
            m.regions[r].transitions.push(row);
        }
        Rule::UnknownAgent => {
            let r = region_with_row.unwrap();
            m.regions[r].transitions[0].interaction.caller = "zzNobody".to_string();
        }
        Rule::UnknownChannel => {
            let r = region_with_row.unwrap();
            m.regions[r].transitions[0].interaction.channel = "zzNoChannel".to_string();
        }
        Rule::CalleeNotBlock => {
            let r = region_with_row.unwrap();
            m.regions[r].transitions[0].interaction.callee = actor_id.unwrap();
        }
        _ => unreachable!("not an option offered above"),
    }
    rule
}
