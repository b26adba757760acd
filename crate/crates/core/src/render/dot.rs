//! DOT renderings of the model and its projected views.
//!
//! Layout conventions shared by the state-based renderings (system graph,
//! state machine, activity): one `cluster` subgraph per region holding its
//! states as circle nodes, plus one invisible entry node per region with a
//! visible edge to the initial state (the classic sourceless initial arrow).
//! The block-diagram rendering is flat: agent nodes (actors as double
//! octagons, blocks as boxes, labelled with display names) and one edge per
//! view row.
//!
//! Identifier-shaped names that are not DOT keywords are written bare;
//! everything else is double-quoted with `"` and `\` escaped.

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write;

use crate::model::{AgentKind, SystemModel, ViewRelation};
use crate::render::csv::params_cell;

/// A rendered DOT document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotDoc {
    pub text: String,
}

impl fmt::Display for DotDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

const DOT_KEYWORDS: [&str; 6] = ["graph", "digraph", "subgraph", "node", "edge", "strict"];

/// Writes `s` as a DOT ID: bare when it is identifier-shaped and not a
/// keyword, double-quoted otherwise.
fn dot_id(s: &str) -> String {
    let bare =
        crate::model::is_identifier(s) && !DOT_KEYWORDS.contains(&s.to_ascii_lowercase().as_str());
    if bare {
        s.to_string()
    } else {
        quoted(s)
    }
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Entry-node id for a region: `__init_<region>`, extended with underscores
/// until it collides with no real node id.
fn entry_id(region: &str, taken: &HashSet<&str>) -> String {
    let mut id = format!("__init_{region}");
    while taken.contains(id.as_str()) {
        id.push('_');
    }
    id
}

/// All node ids a state-based rendering will declare (for entry-node
/// collision avoidance).
fn state_ids(model: &SystemModel) -> HashSet<&str> {
    model
        .regions
        .iter()
        .flat_map(|r| r.states.iter())
        .map(|s| s.as_str())
        .collect()
}

/// Emits the shared cluster skeleton; `edges_for` supplies each region's
/// labelled edges as `(from, to, label)` triples.
fn clustered(
    model: &SystemModel,
    mut edges_for: impl FnMut(usize) -> Vec<(String, String, String)>,
) -> DotDoc {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_id(&model.name));
    let _ = writeln!(out, "  rankdir=LR;");
    let taken = state_ids(model);
    for (i, region) in model.regions.iter().enumerate() {
        let _ = writeln!(
            out,
            "  subgraph {} {{",
            dot_id(&format!("cluster_{}", region.id))
        );
        let _ = writeln!(out, "    label={};", quoted(&region.id));
        let _ = writeln!(out, "    node [shape=circle];");
        for state in &region.states {
            let _ = writeln!(out, "    {};", dot_id(state));
        }
        let entry = entry_id(&region.id, &taken);
        let _ = writeln!(out, "    {} [shape=point, style=invis];", dot_id(&entry));
        let _ = writeln!(
            out,
            "    {} -> {};",
            dot_id(&entry),
            dot_id(&region.initial)
        );
        for (from, to, label) in edges_for(i) {
            let _ = writeln!(
                out,
                "    {} -> {} [label={}];",
                dot_id(&from),
                dot_id(&to),
                quoted(&label)
            );
        }
        let _ = writeln!(out, "  }}");
    }
    let _ = writeln!(out, "}}");
    DotDoc { text: out }
}

/// The full system graph: every transition as an edge labelled
/// `caller.channel→callee`.
pub fn to_dot_itg(model: &SystemModel) -> DotDoc {
    clustered(model, |i| {
        model.regions[i]
            .transitions
            .iter()
            .map(|t| {
                (
                    t.source.clone(),
                    t.target.clone(),
                    format!(
                        "{}.{}\u{2192}{}",
                        t.interaction.caller, t.interaction.channel, t.interaction.callee
                    ),
                )
            })
            .collect()
    })
}

/// State-machine rendering of an SMDR view: edges labelled with the channel
/// only. The model supplies region structure (states, initial states).
pub fn to_dot_smd(model: &SystemModel, view: &ViewRelation) -> DotDoc {
    let rows = match view {
        ViewRelation::Smdr(rows) => rows,
        other => panic!("to_dot_smd requires an SMDR view, got {:?}", other.kind()),
    };
    clustered(model, |i| {
        let region = &model.regions[i].id;
        rows.iter()
            .filter(|r| r.region == *region)
            .map(|r| (r.source.clone(), r.target.clone(), r.channel.clone()))
            .collect()
    })
}

/// Activity rendering of an ADR view: edges labelled
/// `channel [params] callee`.
pub fn to_dot_ad(model: &SystemModel, view: &ViewRelation) -> DotDoc {
    let rows = match view {
        ViewRelation::Adr(rows) => rows,
        other => panic!("to_dot_ad requires an ADR view, got {:?}", other.kind()),
    };
    clustered(model, |i| {
        let region = &model.regions[i].id;
        rows.iter()
            .filter(|r| r.region == *region)
            .map(|r| {
                (
                    r.source.clone(),
                    r.target.clone(),
                    format!("{} [{}] {}", r.channel, params_cell(&r.params), r.callee),
                )
            })
            .collect()
    })
}

/// Block-diagram rendering of an IBDR view: one node per distinct agent
/// (first-appearance order, callers before callees within a row), one edge
/// per row labelled `channel(params)` with a comma-joined parameter list.
pub fn to_dot_ibd(model: &SystemModel, view: &ViewRelation) -> DotDoc {
    let rows = match view {
        ViewRelation::Ibdr(rows) => rows,
        other => panic!("to_dot_ibd requires an IBDR view, got {:?}", other.kind()),
    };

    let mut agents: Vec<&str> = Vec::new();
    let mut seen: HashSet<&str> = HashSet::new();
    for row in rows {
        for id in [row.caller.as_str(), row.callee.as_str()] {
            if seen.insert(id) {
                agents.push(id);
            }
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_id(&model.name));
    let _ = writeln!(out, "  rankdir=LR;");
    for id in agents {
        // Unresolved agents (possible only for invalid models) default to
        // block styling with the raw id as label.
        let (shape, label) = match model.agent(id) {
            Some(agent) => (
                match agent.kind {
                    AgentKind::Actor => "doubleoctagon",
                    AgentKind::Block => "box",
                },
                agent.label(),
            ),
            None => ("box", id),
        };
        let _ = writeln!(
            out,
            "  {} [shape={}, label={}];",
            dot_id(id),
            shape,
            quoted(label)
        );
    }
    for row in rows {
        let params: Vec<String> = row.params.iter().map(|p| p.to_string()).collect();
        let label = format!("{}({})", row.channel, params.join(", "));
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(&row.caller),
            dot_id(&row.callee),
            quoted(&label)
        );
    }
    let _ = writeln!(out, "}}");
    DotDoc { text: out }
}
