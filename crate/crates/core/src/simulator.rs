//! Execution semantics: the model as a labelled transition system over
//! orthogonal regions.
//!
//! A configuration holds one active state per region. Every enabled
//! transition of every region is a candidate at each step — regions never
//! block each other — and firing is atomic: one step changes exactly one
//! region's state. Two fair choice policies are provided: seeded uniform
//! random (replayable) and round-robin over regions.
//!
//! [`accepts`] checks trace membership by breadth-first search over
//! configurations, one level per trace label, and returns a witness
//! configuration sequence on success.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Interaction, SystemModel, Transition};

/// One active state per region, in region declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub current: Vec<(String, String)>,
}

impl Configuration {
    pub fn state_of(&self, region: &str) -> Option<&str> {
        self.current
            .iter()
            .find(|(r, _)| r == region)
            .map(|(_, s)| s.as_str())
    }
}

/// One fired transition, tagged with its region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub region: String,
    pub transition: Transition,
}

/// How [`Simulator::step`] chooses among enabled candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Uniform choice over the candidate list using a seeded generator;
    /// the seed makes runs replayable.
    UniformRandom { seed: u64 },
    /// Cycle regions starting after the last-fired region; the next region
    /// with an enabled transition fires its first one (declaration order).
    RoundRobin,
}

/// The initial configuration: every region at its declared initial state.
pub fn initial(model: &SystemModel) -> Configuration {
    Configuration {
        current: model
            .regions
            .iter()
            .map(|r| (r.id.clone(), r.initial.clone()))
            .collect(),
    }
}

/// All transitions enabled in `config`, ordered by region declaration order
/// then transition declaration order. Empty means deadlock.
pub fn enabled(model: &SystemModel, config: &Configuration) -> Vec<TraceStep> {
    let mut steps = Vec::new();
    for (i, region) in model.regions.iter().enumerate() {
        let current = &config.current[i].1;
        for t in &region.transitions {
            if t.source == *current {
                steps.push(TraceStep {
                    region: region.id.clone(),
                    transition: t.clone(),
                });
            }
        }
    }
    steps
}

/// A running simulation: owns the current configuration and the policy's
/// mutable state (generator or rotation cursor). Not shareable across
/// threads while stepping; create one instance per run.
pub struct Simulator<'m> {
    model: &'m SystemModel,
    config: Configuration,
    policy: Policy,
    rng: Option<ChaCha8Rng>,
    /// Region index of the last fired transition (round-robin cursor).
    last_fired: Option<usize>,
}

impl<'m> Simulator<'m> {
    pub fn new(model: &'m SystemModel, policy: Policy) -> Self {
        let rng = match policy {
            Policy::UniformRandom { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            Policy::RoundRobin => None,
        };
        Simulator {
            model,
            config: initial(model),
            policy,
            rng,
            last_fired: None,
        }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    /// Fires one transition per the policy. `None` means deadlock: no region
    /// has an enabled transition, and the configuration is left unchanged.
    pub fn step(&mut self) -> Option<TraceStep> {
        // Candidates as (region index, transition) in declaration order.
        let mut candidates: Vec<(usize, &Transition)> = Vec::new();
        for (i, region) in self.model.regions.iter().enumerate() {
            let current = &self.config.current[i].1;
            for t in &region.transitions {
                if t.source == *current {
                    candidates.push((i, t));
                }
            }
        }
        if candidates.is_empty() {
            return None;
        }

        let (region_index, transition) = match self.policy {
            Policy::UniformRandom { .. } => {
                let rng = self
                    .rng
                    .as_mut()
                    .expect("uniform policy carries a generator");
                candidates[rng.gen_range(0..candidates.len())]
            }
            Policy::RoundRobin => {
                let n = self.model.regions.len();
                let start = self.last_fired.map(|i| i + 1).unwrap_or(0);
                // First region at or after the cursor with a candidate; the
                // candidate list is region-ordered, so scan it per region.
                let mut chosen = None;
                'search: for offset in 0..n {
                    let region = (start + offset) % n;
                    for &(i, t) in &candidates {
                        if i == region {
                            chosen = Some((i, t));
                            break 'search;
                        }
                    }
                }
                chosen.expect("a nonempty candidate list has a first region")
            }
        };

        let transition = transition.clone();
        self.config.current[region_index].1 = transition.target.clone();
        self.last_fired = Some(region_index);
        Some(TraceStep {
            region: self.model.regions[region_index].id.clone(),
            transition,
        })
    }

    /// Steps until `max_steps` transitions have fired or the model
    /// deadlocks, and returns the trace.
    pub fn run(&mut self, max_steps: usize) -> Vec<TraceStep> {
        let mut trace = Vec::new();
        for _ in 0..max_steps {
            match self.step() {
                Some(step) => trace.push(step),
                None => break,
            }
        }
        trace
    }
}

/// Convenience: run `max_steps` steps from the initial configuration.
pub fn run(model: &SystemModel, policy: Policy, max_steps: usize) -> Vec<TraceStep> {
    Simulator::new(model, policy).run(max_steps)
}

/// Result of a trace-membership check. When accepted, `witness` holds the
/// configuration sequence (trace length + 1 entries, starting at the initial
/// configuration); when rejected, `rejected_at` is the 1-based index of the
/// first label no execution can realize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceptance {
    pub accepted: bool,
    pub witness: Option<Vec<Configuration>>,
    pub rejected_at: Option<usize>,
}

/// True iff some interleaved execution from the initial configuration fires
/// transitions whose (caller, channel, callee) labels match `trace` in
/// order. Breadth-first over configuration sets, one level per label;
/// parameters are channel-determined and take no part in matching.
pub fn accepts(model: &SystemModel, trace: &[Interaction]) -> Acceptance {
    // Arena of discovered configurations with parent links for the witness.
    let mut arena: Vec<(Configuration, Option<usize>)> = vec![(initial(model), None)];
    let mut level: Vec<usize> = vec![0];

    for (pos, label) in trace.iter().enumerate() {
        let mut next_level = Vec::new();
        let mut seen: HashSet<Configuration> = HashSet::new();
        for &idx in &level {
            let config = arena[idx].0.clone();
            for (i, region) in model.regions.iter().enumerate() {
                let current = &config.current[i].1;
                for t in &region.transitions {
                    if t.source == *current && t.interaction == *label {
                        let mut successor = config.clone();
                        successor.current[i].1 = t.target.clone();
                        if seen.insert(successor.clone()) {
                            arena.push((successor, Some(idx)));
                            next_level.push(arena.len() - 1);
                        }
                    }
                }
            }
        }
        if next_level.is_empty() {
            return Acceptance {
                accepted: false,
                witness: None,
                rejected_at: Some(pos + 1),
            };
        }
        level = next_level;
    }

    // Walk parent links from any final configuration back to the initial one.
    let mut witness = Vec::new();
    let mut at = Some(level[0]);
    while let Some(idx) = at {
        witness.push(arena[idx].0.clone());
        at = arena[idx].1;
    }
    witness.reverse();
    Acceptance {
        accepted: true,
        witness: Some(witness),
        rejected_at: None,
    }
}

/// Formats one trace step as the tab-separated output line
/// `<n>\t<region>\t<source>\t<caller>\t<channel>\t<callee>\t<target>`
/// (`n` is 1-based).
pub fn trace_line(n: usize, step: &TraceStep) -> String {
    let t = &step.transition;
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        n,
        step.region,
        t.source,
        t.interaction.caller,
        t.interaction.channel,
        t.interaction.callee,
        t.target
    )
}

/// Parses one trace-input line `<caller>\t<channel>\t<callee>`.
pub fn parse_label_line(line: &str) -> Result<Interaction, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    match fields.as_slice() {
        [caller, channel, callee]
            if !caller.is_empty() && !channel.is_empty() && !callee.is_empty() =>
        {
            Ok(Interaction::new(*caller, *channel, *callee))
        }
        _ => Err(format!(
            "expected 3 tab-separated fields (caller, channel, callee), found {}",
            fields.len()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Agent, ChannelSignature, Region, SystemModel, Transition};

    fn agents_and_channels(m: &mut SystemModel) {
        m.agents.push(Agent::actor("A"));
        m.agents.push(Agent::block("B"));
        for ch in ["c1", "c2", "c3", "go", "stop"] {
            m.channels.push(ChannelSignature::new(ch, vec![]));
        }
    }

    fn self_loop_model(n: usize) -> SystemModel {
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        for i in 0..n {
            let s = format!("s{i}");
            m.regions.push(Region::from_transitions(
                format!("R{i}"),
                s.clone(),
                vec![Transition::new(s.clone(), "A", "c1", "B", s.clone())],
            ));
        }
        m
    }

    #[test]
    fn initial_maps_every_region_to_its_declared_state() {
        let m = self_loop_model(3);
        let c = initial(&m);
        assert_eq!(
            c.current,
            vec![
                ("R0".to_string(), "s0".to_string()),
                ("R1".to_string(), "s1".to_string()),
                ("R2".to_string(), "s2".to_string()),
            ]
        );
        assert_eq!(c.state_of("R1"), Some("s1"));
        assert_eq!(initial(&SystemModel::new("E")).current, vec![]);
    }

    #[test]
    fn enabled_is_region_then_declaration_ordered() {
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        m.regions.push(Region::from_transitions(
            "R1",
            "a",
            vec![
                Transition::new("a", "A", "c1", "B", "b"),
                Transition::new("a", "A", "c2", "B", "b"),
                Transition::new("b", "A", "c3", "B", "a"), // not enabled at a
            ],
        ));
        m.regions.push(Region::from_transitions(
            "R2",
            "x",
            vec![Transition::new("x", "A", "go", "B", "x")],
        ));
        let steps = enabled(&m, &initial(&m));
        let channels: Vec<&str> = steps
            .iter()
            .map(|s| s.transition.interaction.channel.as_str())
            .collect();
        assert_eq!(channels, vec!["c1", "c2", "go"]);
    }

    #[test]
    fn single_candidate_fires_regardless_of_policy() {
        let m = self_loop_model(1);
        for policy in [Policy::UniformRandom { seed: 7 }, Policy::RoundRobin] {
            let mut sim = Simulator::new(&m, policy);
            let before = sim.config().clone();
            let step = sim.step().unwrap();
            assert_eq!(step.transition.interaction.channel, "c1");
            assert_eq!(sim.config(), &before); // self-loop: state unchanged
        }
    }

    #[test]
    fn deadlock_when_no_transition_leaves_the_initial_state() {
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        m.regions.push(Region::from_transitions(
            "R",
            "a",
            vec![Transition::new("b", "A", "c1", "B", "a")],
        ));
        let mut sim = Simulator::new(&m, Policy::RoundRobin);
        assert_eq!(sim.step(), None);
        assert_eq!(sim.run(10), vec![]);
    }

    #[test]
    fn run_zero_steps_is_empty() {
        let m = self_loop_model(2);
        assert_eq!(run(&m, Policy::RoundRobin, 0), vec![]);
    }

    #[test]
    fn chain_runs_to_deadlock() {
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        m.regions.push(Region::from_transitions(
            "R",
            "a",
            vec![Transition::new("a", "A", "c1", "B", "b")],
        ));
        let trace = run(&m, Policy::UniformRandom { seed: 3 }, 10);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].transition.target, "b");
    }

    #[test]
    fn round_robin_rotates_evenly_over_self_loops() {
        let m = self_loop_model(3);
        let trace = run(&m, Policy::RoundRobin, 9);
        let fired: Vec<&str> = trace.iter().map(|s| s.region.as_str()).collect();
        assert_eq!(
            fired,
            vec!["R0", "R1", "R2", "R0", "R1", "R2", "R0", "R1", "R2"]
        );
    }

    #[test]
    fn round_robin_skips_regions_without_candidates() {
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        // R1 deadlocks after one firing; R2 self-loops forever.
        m.regions.push(Region::from_transitions(
            "R1",
            "a",
            vec![Transition::new("a", "A", "c1", "B", "b")],
        ));
        m.regions.push(Region::from_transitions(
            "R2",
            "x",
            vec![Transition::new("x", "A", "go", "B", "x")],
        ));
        let trace = run(&m, Policy::RoundRobin, 4);
        let fired: Vec<&str> = trace.iter().map(|s| s.region.as_str()).collect();
        assert_eq!(fired, vec!["R1", "R2", "R2", "R2"]);
    }

    #[test]
    fn uniform_runs_with_equal_seeds_are_identical() {
        let m = self_loop_model(3);
        let a = run(&m, Policy::UniformRandom { seed: 42 }, 200);
        let b = run(&m, Policy::UniformRandom { seed: 42 }, 200);
        assert_eq!(a, b);
        let c = run(&m, Policy::UniformRandom { seed: 43 }, 200);
        assert_ne!(a, c); // overwhelmingly likely for 200 three-way draws
    }

    #[test]
    fn step_changes_at_most_one_region() {
        let m = self_loop_model(4);
        let mut sim = Simulator::new(&m, Policy::UniformRandom { seed: 9 });
        for _ in 0..50 {
            let before = sim.config().clone();
            sim.step().unwrap();
            let after = sim.config();
            let changed = before
                .current
                .iter()
                .zip(&after.current)
                .filter(|(b, a)| b != a)
                .count();
            assert!(changed <= 1);
        }
    }

    #[test]
    fn empty_trace_is_accepted_with_initial_witness() {
        let m = self_loop_model(2);
        let result = accepts(&m, &[]);
        assert!(result.accepted);
        assert_eq!(result.witness, Some(vec![initial(&m)]));
        assert_eq!(result.rejected_at, None);
    }

    #[test]
    fn two_step_chain_is_accepted_with_full_witness() {
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        m.regions.push(Region::from_transitions(
            "R",
            "a",
            vec![
                Transition::new("a", "A", "c1", "B", "b"),
                Transition::new("b", "B", "c2", "B", "c"),
            ],
        ));
        let trace = vec![
            Interaction::new("A", "c1", "B"),
            Interaction::new("B", "c2", "B"),
        ];
        let result = accepts(&m, &trace);
        assert!(result.accepted);
        let witness = result.witness.unwrap();
        assert_eq!(witness.len(), 3);
        assert_eq!(witness[0].state_of("R"), Some("a"));
        assert_eq!(witness[1].state_of("R"), Some("b"));
        assert_eq!(witness[2].state_of("R"), Some("c"));
    }

    #[test]
    fn out_of_order_label_is_rejected_at_position_one() {
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        m.regions.push(Region::from_transitions(
            "R",
            "a",
            vec![
                Transition::new("a", "A", "c1", "B", "b"),
                Transition::new("b", "B", "c2", "B", "a"),
            ],
        ));
        let result = accepts(&m, &[Interaction::new("B", "c2", "B")]);
        assert!(!result.accepted);
        assert_eq!(result.rejected_at, Some(1));
        assert_eq!(result.witness, None);
    }

    #[test]
    fn interleaving_across_regions_is_found() {
        // The trace alternates regions; BFS must consider both orders.
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        m.regions.push(Region::from_transitions(
            "R1",
            "a",
            vec![Transition::new("a", "A", "c1", "B", "b")],
        ));
        m.regions.push(Region::from_transitions(
            "R2",
            "x",
            vec![Transition::new("x", "A", "c2", "B", "y")],
        ));
        let result = accepts(
            &m,
            &[
                Interaction::new("A", "c2", "B"),
                Interaction::new("A", "c1", "B"),
            ],
        );
        assert!(result.accepted);
    }

    #[test]
    fn ambiguous_labels_need_search_not_greed() {
        // Two transitions share the label (A, c1, B) from the initial state
        // but only one of them allows the rest of the trace; a greedy
        // matcher that commits to the first would wrongly reject.
        let mut m = SystemModel::new("M");
        agents_and_channels(&mut m);
        m.regions.push(Region::from_transitions(
            "R",
            "a",
            vec![
                Transition::new("a", "A", "c1", "B", "dead"),
                Transition::new("a", "A", "c1", "B", "b"),
                Transition::new("b", "A", "c2", "B", "a"),
            ],
        ));
        let result = accepts(
            &m,
            &[
                Interaction::new("A", "c1", "B"),
                Interaction::new("A", "c2", "B"),
            ],
        );
        assert!(result.accepted);
        let witness = result.witness.unwrap();
        assert_eq!(witness[1].state_of("R"), Some("b"));
    }

    #[test]
    fn trace_line_format_is_tab_separated() {
        let step = TraceStep {
            region: "R1".into(),
            transition: Transition::new("s11", "Customer", "acceptCoin", "CoinReceptacle", "s12"),
        };
        assert_eq!(
            trace_line(1, &step),
            "1\tR1\ts11\tCustomer\tacceptCoin\tCoinReceptacle\ts12"
        );
    }

    #[test]
    fn label_lines_parse_and_reject_malformed_input() {
        assert_eq!(
            parse_label_line("Customer\tacceptCoin\tCoinReceptacle"),
            Ok(Interaction::new("Customer", "acceptCoin", "CoinReceptacle"))
        );
        assert!(parse_label_line("only two\tfields").is_err());
        assert!(parse_label_line("a\t\tb").is_err());
        assert!(parse_label_line("a b c").is_err());
    }
}
