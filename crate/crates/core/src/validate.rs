//! Well-formedness checking for [`SystemModel`]s.
//!
//! [`validate`] returns *all* violations as diagnostics rather than aborting
//! on the first; an empty list means the model satisfies every invariant:
//!
//! - identifiers are well-formed,
//! - agent ids, channel names, and region ids are unique,
//! - channel names are not overloaded with different parameter lists,
//! - parameter names within one channel are unique,
//! - each region's initial state and transition endpoints lie in its state
//!   set, and its transition relation has no duplicate rows,
//! - state ids are pairwise disjoint across regions,
//! - every transition's caller/callee/channel resolves, and the callee is a
//!   block.
//!
//! [`reachability_lint`] adds non-fatal warnings for states a region's
//! transition graph cannot reach from its initial state.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::model::{is_identifier, AgentKind, SystemModel};

/// How severe a diagnostic is. Errors make a model invalid; warnings do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// Stable rule codes, one per checkable well-formedness condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// A name field is not of the form `[A-Za-z_][A-Za-z0-9_]*`.
    InvalidIdent,
    /// Two agent declarations share an id.
    DuplicateAgent,
    /// Two channel declarations share a name (parameter lists may differ).
    ChannelOverload,
    /// Two parameters of one channel share a name.
    DuplicateParam,
    /// Two regions share an id.
    DuplicateRegionId,
    /// The same state id appears in more than one region.
    StateCollision,
    /// A region's initial state is not in its state set.
    InitialNotInStates,
    /// A transition's source or target state is not in its region's state set.
    UndeclaredState,
    /// A region contains two identical transition rows.
    DuplicateRow,
    /// A transition's caller is not a declared agent.
    UnknownAgent,
    /// A transition's channel is not a declared channel.
    UnknownChannel,
    /// A transition's callee is not a declared agent.
    UnknownCallee,
    /// A transition's callee resolves to an actor instead of a block.
    CalleeNotBlock,
    /// A state cannot be reached from its region's initial state (warning).
    UnreachableState,
}

impl Rule {
    /// The code as printed in diagnostics, e.g. `CALLEE_NOT_BLOCK`.
    pub fn code(self) -> &'static str {
        match self {
            Rule::InvalidIdent => "INVALID_IDENT",
            Rule::DuplicateAgent => "DUPLICATE_AGENT",
            Rule::ChannelOverload => "CHANNEL_OVERLOAD",
            Rule::DuplicateParam => "DUPLICATE_PARAM",
            Rule::DuplicateRegionId => "DUPLICATE_REGION_ID",
            Rule::StateCollision => "STATE_COLLISION",
            Rule::InitialNotInStates => "INITIAL_NOT_IN_STATES",
            Rule::UndeclaredState => "UNDECLARED_STATE",
            Rule::DuplicateRow => "DUPLICATE_ROW",
            Rule::UnknownAgent => "UNKNOWN_AGENT",
            Rule::UnknownChannel => "UNKNOWN_CHANNEL",
            Rule::UnknownCallee => "UNKNOWN_CALLEE",
            Rule::CalleeNotBlock => "CALLEE_NOT_BLOCK",
            Rule::UnreachableState => "UNREACHABLE_STATE",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Rule::UnreachableState => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Where in the model a diagnostic points. Indices follow declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Model,
    Agent {
        index: usize,
    },
    Channel {
        index: usize,
    },
    Region {
        index: usize,
        id: String,
    },
    Transition {
        region_index: usize,
        region: String,
        row: usize,
    },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Model => write!(f, "model"),
            Location::Agent { index } => write!(f, "agent #{index}"),
            Location::Channel { index } => write!(f, "channel #{index}"),
            Location::Region { id, .. } => write!(f, "region {id}"),
            Location::Transition { region, row, .. } => {
                write!(f, "region {region} row {row}")
            }
        }
    }
}

/// One finding: a rule violation (or lint) at a location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: Rule,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    fn new(rule: Rule, location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: rule.severity(),
            rule,
            location,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    /// Formats as `<CODE>: <message> (<location>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.rule, self.message, self.location)
    }
}

/// Checks every well-formedness invariant and returns all violations.
///
/// Total: never panics on structurally well-typed input, and an empty result
/// means the model is valid. Diagnostics are ordered by model position
/// (agents, then channels, then regions/transitions, then cross-region
/// checks).
pub fn validate(model: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    if !is_identifier(&model.name) {
        diags.push(Diagnostic::new(
            Rule::InvalidIdent,
            Location::Model,
            format!("system name {:?} is not a valid identifier", model.name),
        ));
    }

    let mut seen_agents: HashSet<&str> = HashSet::new();
    for (i, agent) in model.agents.iter().enumerate() {
        if !is_identifier(&agent.id) {
            diags.push(Diagnostic::new(
                Rule::InvalidIdent,
                Location::Agent { index: i },
                format!("agent id {:?} is not a valid identifier", agent.id),
            ));
        }
        if !seen_agents.insert(&agent.id) {
            diags.push(Diagnostic::new(
                Rule::DuplicateAgent,
                Location::Agent { index: i },
                format!("agent {} is declared more than once", agent.id),
            ));
        }
    }

    let mut seen_channels: HashSet<&str> = HashSet::new();
    for (i, ch) in model.channels.iter().enumerate() {
        if !is_identifier(&ch.name) {
            diags.push(Diagnostic::new(
                Rule::InvalidIdent,
                Location::Channel { index: i },
                format!("channel name {:?} is not a valid identifier", ch.name),
            ));
        }
        if !seen_channels.insert(&ch.name) {
            diags.push(Diagnostic::new(
                Rule::ChannelOverload,
                Location::Channel { index: i },
                format!("channel {} is declared more than once", ch.name),
            ));
        }
        let mut seen_params: HashSet<&str> = HashSet::new();
        for p in &ch.params {
            if !is_identifier(&p.name) || !is_identifier(&p.ptype) {
                diags.push(Diagnostic::new(
                    Rule::InvalidIdent,
                    Location::Channel { index: i },
                    format!(
                        "parameter {:?}: {:?} of channel {} is not a valid identifier pair",
                        p.name, p.ptype, ch.name
                    ),
                ));
            }
            if !seen_params.insert(&p.name) {
                diags.push(Diagnostic::new(
                    Rule::DuplicateParam,
                    Location::Channel { index: i },
                    format!("channel {} repeats parameter {}", ch.name, p.name),
                ));
            }
        }
    }

    let mut seen_regions: HashSet<&str> = HashSet::new();
    // State id -> id of the first region that declared it, for collision reports.
    let mut state_owner: HashMap<&str, &str> = HashMap::new();

    for (ri, region) in model.regions.iter().enumerate() {
        let here = || Location::Region {
            index: ri,
            id: region.id.clone(),
        };

        if !is_identifier(&region.id) {
            diags.push(Diagnostic::new(
                Rule::InvalidIdent,
                here(),
                format!("region id {:?} is not a valid identifier", region.id),
            ));
        }
        if !seen_regions.insert(&region.id) {
            diags.push(Diagnostic::new(
                Rule::DuplicateRegionId,
                here(),
                format!("region {} is declared more than once", region.id),
            ));
        }
        for s in &region.states {
            if !is_identifier(s) {
                diags.push(Diagnostic::new(
                    Rule::InvalidIdent,
                    here(),
                    format!("state id {s:?} is not a valid identifier"),
                ));
            }
        }
        if !region.states.contains(&region.initial) {
            diags.push(Diagnostic::new(
                Rule::InitialNotInStates,
                here(),
                format!(
                    "initial state {} is not in the state set of region {}",
                    region.initial, region.id
                ),
            ));
        }

        let mut seen_rows = HashSet::new();
        for (row, t) in region.transitions.iter().enumerate() {
            let at = || Location::Transition {
                region_index: ri,
                region: region.id.clone(),
                row,
            };
            for endpoint in [&t.source, &t.target] {
                if !region.states.contains(endpoint) {
                    diags.push(Diagnostic::new(
                        Rule::UndeclaredState,
                        at(),
                        format!(
                            "state {} is not in the state set of region {}",
                            endpoint, region.id
                        ),
                    ));
                }
            }
            if !seen_rows.insert(t.clone()) {
                diags.push(Diagnostic::new(
                    Rule::DuplicateRow,
                    at(),
                    format!(
                        "duplicate transition {} -> {} : {} {} {}",
                        t.source,
                        t.target,
                        t.interaction.caller,
                        t.interaction.channel,
                        t.interaction.callee
                    ),
                ));
            }

            match model.agent(&t.interaction.caller) {
                Some(_) => {}
                None => diags.push(Diagnostic::new(
                    Rule::UnknownAgent,
                    at(),
                    format!("caller {} is not a declared agent", t.interaction.caller),
                )),
            }
            if model.channel(&t.interaction.channel).is_none() {
                diags.push(Diagnostic::new(
                    Rule::UnknownChannel,
                    at(),
                    format!(
                        "channel {} is not a declared channel",
                        t.interaction.channel
                    ),
                ));
            }
            match model.agent(&t.interaction.callee) {
                Some(callee) if callee.kind == AgentKind::Actor => {
                    diags.push(Diagnostic::new(
                        Rule::CalleeNotBlock,
                        at(),
                        format!(
                            "callee {} is an actor; callees must be blocks",
                            t.interaction.callee
                        ),
                    ));
                }
                Some(_) => {}
                None => diags.push(Diagnostic::new(
                    Rule::UnknownCallee,
                    at(),
                    format!("callee {} is not a declared agent", t.interaction.callee),
                )),
            }
        }

        for s in &region.states {
            match state_owner.get(s.as_str()) {
                Some(owner) => diags.push(Diagnostic::new(
                    Rule::StateCollision,
                    here(),
                    format!("state {} already belongs to region {}", s, owner),
                )),
                None => {
                    state_owner.insert(s, &region.id);
                }
            }
        }
    }

    diags
}

/// Warns about states a region's transitions cannot reach from its initial
/// state. Purely advisory: unreachable states are legal, just suspicious.
pub fn reachability_lint(model: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for (ri, region) in model.regions.iter().enumerate() {
        let mut reached: BTreeSet<&str> = BTreeSet::new();
        let mut frontier = vec![region.initial.as_str()];
        reached.insert(region.initial.as_str());
        while let Some(state) = frontier.pop() {
            for t in &region.transitions {
                if t.source == state && reached.insert(&t.target) {
                    frontier.push(&t.target);
                }
            }
        }
        for s in &region.states {
            if !reached.contains(s.as_str()) {
                diags.push(Diagnostic::new(
                    Rule::UnreachableState,
                    Location::Region {
                        index: ri,
                        id: region.id.clone(),
                    },
                    format!(
                        "state {} is unreachable from initial state {} of region {}",
                        s, region.initial, region.id
                    ),
                ));
            }
        }
    }
    diags
}
