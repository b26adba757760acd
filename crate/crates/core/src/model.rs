//! Core domain types for interaction transition graph (ITG) models.
//!
//! An ITG model unifies the structural declarations of a system (agents and
//! channels) with its behavior (orthogonal regions of states and labelled
//! transitions). Every transition is labelled with a channel-based handshake
//! `caller channel callee`: the caller may be an actor of the external
//! environment or a block of the system, the callee is always a block, and
//! the channel carries an ordered list of typed, directioned parameters.
//!
//! The model is relational: a region's transitions form a set of rows
//! `(source, caller, channel, callee, target)`, the system relation is the
//! region-tagged union of the per-region relations (see [`crate::compose`]),
//! and diagram views are column projections of it (see [`crate::projection`]).

use std::collections::BTreeSet;
use std::fmt;

/// Direction of a channel parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    In,
    Out,
    Inout,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::In => "in",
            Direction::Out => "out",
            Direction::Inout => "inout",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One typed parameter of a channel signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parameter {
    pub direction: Direction,
    pub name: String,
    /// Type name; uninterpreted by the toolchain.
    pub ptype: String,
}

impl Parameter {
    pub fn new(direction: Direction, name: impl Into<String>, ptype: impl Into<String>) -> Self {
        Parameter {
            direction,
            name: name.into(),
            ptype: ptype.into(),
        }
    }
}

impl fmt::Display for Parameter {
    /// Formats as `<direction> <name>: <type>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.direction, self.name, self.ptype)
    }
}

/// A channel: a name plus its ordered parameter list.
///
/// Within one model the name uniquely determines the parameter list;
/// overloading a name is rejected by validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelSignature {
    pub name: String,
    pub params: Vec<Parameter>,
}

impl ChannelSignature {
    pub fn new(name: impl Into<String>, params: Vec<Parameter>) -> Self {
        ChannelSignature {
            name: name.into(),
            params,
        }
    }
}

/// Whether an agent belongs to the external environment or to the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AgentKind {
    Actor,
    Block,
}

/// An actor (external environment) or a block (system part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agent {
    pub kind: AgentKind,
    pub id: String,
    /// Free-text label used by renderers; the id is used everywhere else.
    pub display: Option<String>,
}

impl Agent {
    pub fn actor(id: impl Into<String>) -> Self {
        Agent {
            kind: AgentKind::Actor,
            id: id.into(),
            display: None,
        }
    }

    pub fn block(id: impl Into<String>) -> Self {
        Agent {
            kind: AgentKind::Block,
            id: id.into(),
            display: None,
        }
    }

    pub fn with_display(mut self, display: impl Into<String>) -> Self {
        self.display = Some(display.into());
        self
    }

    /// The renderer label: the display name when present, the id otherwise.
    pub fn label(&self) -> &str {
        self.display.as_deref().unwrap_or(&self.id)
    }
}

/// One handshake label: who calls which channel on which block.
///
/// Fields are references by id/name; resolution against the owning
/// [`SystemModel`] is checked by [`crate::validate::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interaction {
    pub caller: String,
    pub channel: String,
    pub callee: String,
}

impl Interaction {
    pub fn new(
        caller: impl Into<String>,
        channel: impl Into<String>,
        callee: impl Into<String>,
    ) -> Self {
        Interaction {
            caller: caller.into(),
            channel: channel.into(),
            callee: callee.into(),
        }
    }
}

/// Classification of an interaction by its caller.
///
/// `Type1` is an environment-to-system handshake (the caller is an actor),
/// `Type2` a system-internal one (the caller is a block). The callee is a
/// block in both cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InteractionKind {
    Type1,
    Type2,
}

/// Classifies an interaction by the kind of its caller.
///
/// Returns `None` when the caller does not resolve to a declared agent.
pub fn classify(model: &SystemModel, interaction: &Interaction) -> Option<InteractionKind> {
    model.agent(&interaction.caller).map(|a| match a.kind {
        AgentKind::Actor => InteractionKind::Type1,
        AgentKind::Block => InteractionKind::Type2,
    })
}

/// One transition row: source state, handshake label, target state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: String,
    pub interaction: Interaction,
    pub target: String,
}

impl Transition {
    pub fn new(
        source: impl Into<String>,
        caller: impl Into<String>,
        channel: impl Into<String>,
        callee: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Transition {
            source: source.into(),
            interaction: Interaction::new(caller, channel, callee),
            target: target.into(),
        }
    }
}

/// One orthogonal region: a state set, an initial state, and an ordered
/// transition relation over those states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: String,
    pub states: BTreeSet<String>,
    pub initial: String,
    pub transitions: Vec<Transition>,
}

impl Region {
    /// Builds a region whose state set is inferred as the union of all
    /// mentioned source/target states plus the initial state, mirroring the
    /// text format's inference rule.
    pub fn from_transitions(
        id: impl Into<String>,
        initial: impl Into<String>,
        transitions: Vec<Transition>,
    ) -> Self {
        let initial = initial.into();
        let mut states: BTreeSet<String> = BTreeSet::new();
        states.insert(initial.clone());
        for t in &transitions {
            states.insert(t.source.clone());
            states.insert(t.target.clone());
        }
        Region {
            id: id.into(),
            states,
            initial,
            transitions,
        }
    }
}

/// A complete model: a name, structural declarations, and orthogonal regions.
///
/// Immutable after successful validation; all operations over it are pure.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SystemModel {
    pub name: String,
    pub agents: Vec<Agent>,
    pub channels: Vec<ChannelSignature>,
    pub regions: Vec<Region>,
}

impl SystemModel {
    pub fn new(name: impl Into<String>) -> Self {
        SystemModel {
            name: name.into(),
            ..SystemModel::default()
        }
    }

    /// Looks up an agent by id (first declaration wins).
    pub fn agent(&self, id: &str) -> Option<&Agent> {
        self.agents.iter().find(|a| a.id == id)
    }

    /// Looks up a channel by name (first declaration wins).
    pub fn channel(&self, name: &str) -> Option<&ChannelSignature> {
        self.channels.iter().find(|c| c.name == name)
    }

    /// Looks up a region by id (first declaration wins).
    pub fn region(&self, id: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.id == id)
    }

    /// Parameter list of a channel, or the empty list for an unknown name.
    pub fn channel_params(&self, name: &str) -> &[Parameter] {
        self.channel(name)
            .map(|c| c.params.as_slice())
            .unwrap_or(&[])
    }

    /// Total number of transition rows across all regions.
    pub fn transition_count(&self) -> usize {
        self.regions.iter().map(|r| r.transitions.len()).sum()
    }
}

/// One row of the system transition relation resolved for output:
/// `(source, caller, channel, params, callee, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ItgrViewRow {
    pub source: String,
    pub caller: String,
    pub channel: String,
    pub params: Vec<Parameter>,
    pub callee: String,
    pub target: String,
}

/// One internal-block-diagram row: `(caller, channel, params, callee)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IbdrRow {
    pub caller: String,
    pub channel: String,
    pub params: Vec<Parameter>,
    pub callee: String,
}

/// One state-machine-diagram row: `(region, source, channel, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmdrRow {
    pub region: String,
    pub source: String,
    pub channel: String,
    pub target: String,
}

/// One activity-diagram row:
/// `(region, source, channel, params, callee, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdrRow {
    pub region: String,
    pub source: String,
    pub channel: String,
    pub params: Vec<Parameter>,
    pub callee: String,
    pub target: String,
}

/// Tag naming the schema of a [`ViewRelation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViewKind {
    Itgr,
    Ibdr,
    Smdr,
    Adr,
}

impl ViewKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViewKind::Itgr => "itgr",
            ViewKind::Ibdr => "ibdr",
            ViewKind::Smdr => "smdr",
            ViewKind::Adr => "adr",
        }
    }
}

/// A projected relational table. Each variant carries rows of the schema
/// belonging to its kind, in deterministic first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViewRelation {
    Itgr(Vec<ItgrViewRow>),
    Ibdr(Vec<IbdrRow>),
    Smdr(Vec<SmdrRow>),
    Adr(Vec<AdrRow>),
}

impl ViewRelation {
    pub fn kind(&self) -> ViewKind {
        match self {
            ViewRelation::Itgr(_) => ViewKind::Itgr,
            ViewRelation::Ibdr(_) => ViewKind::Ibdr,
            ViewRelation::Smdr(_) => ViewKind::Smdr,
            ViewRelation::Adr(_) => ViewKind::Adr,
        }
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        match self {
            ViewRelation::Itgr(rows) => rows.len(),
            ViewRelation::Ibdr(rows) => rows.len(),
            ViewRelation::Smdr(rows) => rows.len(),
            ViewRelation::Adr(rows) => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// True iff `s` is a well-formed identifier: `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_agent_model() -> SystemModel {
        let mut m = SystemModel::new("M");
        m.agents.push(Agent::actor("Customer"));
        m.agents.push(Agent::block("CoinReceptacle"));
        m.agents.push(Agent::block("CoinStore"));
        m.agents.push(Agent::actor("Vendor"));
        m
    }

    #[test]
    fn classify_actor_caller_is_type1() {
        let m = two_agent_model();
        let i = Interaction::new("Customer", "acceptCoin", "CoinReceptacle");
        assert_eq!(classify(&m, &i), Some(InteractionKind::Type1));
    }

    #[test]
    fn classify_block_caller_is_type2() {
        let m = two_agent_model();
        let i = Interaction::new("CoinReceptacle", "depositCoin", "CoinStore");
        assert_eq!(classify(&m, &i), Some(InteractionKind::Type2));
    }

    #[test]
    fn classify_vendor_refill_is_type1() {
        let m = two_agent_model();
        let i = Interaction::new("Vendor", "refillChangeCoin", "CoinStore");
        assert_eq!(classify(&m, &i), Some(InteractionKind::Type1));
    }

    #[test]
    fn classify_unknown_caller_is_none() {
        let m = two_agent_model();
        let i = Interaction::new("Nobody", "ping", "CoinStore");
        assert_eq!(classify(&m, &i), None);
    }

    #[test]
    fn region_state_inference_includes_initial_and_endpoints() {
        let r =
            Region::from_transitions("R", "idle", vec![Transition::new("a", "X", "ch", "Y", "b")]);
        let want: BTreeSet<String> = ["idle", "a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(r.states, want);
        assert_eq!(r.initial, "idle");
    }

    #[test]
    fn identifier_shape() {
        assert!(is_identifier("s11"));
        assert!(is_identifier("_x0"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("9lives"));
        assert!(!is_identifier("a b"));
        assert!(!is_identifier("Ψ"));
    }
}
