//! Canonical pretty-printer for the `.itg` format.
//!
//! Emits one declaration per line in model order (agents, channels, regions),
//! two-space indentation for transitions, and escaped display strings.
//! Re-parsing the output reproduces the model structurally, provided every
//! region's state set equals its mentioned states plus the initial (the
//! format has no syntax for isolated extra states).

use std::fmt::Write;

use crate::model::{AgentKind, SystemModel};

/// Renders a model as canonical `.itg` text.
pub fn print(model: &SystemModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system {}", model.name);

    for agent in &model.agents {
        let kw = match agent.kind {
            AgentKind::Actor => "actor",
            AgentKind::Block => "block",
        };
        match &agent.display {
            Some(display) => {
                let _ = writeln!(out, "{kw} {} \"{}\"", agent.id, escape(display));
            }
            None => {
                let _ = writeln!(out, "{kw} {}", agent.id);
            }
        }
    }

    for ch in &model.channels {
        let params: Vec<String> = ch
            .params
            .iter()
            .map(|p| format!("{} {}: {}", p.direction, p.name, p.ptype))
            .collect();
        let _ = writeln!(out, "channel {}({})", ch.name, params.join(", "));
    }

    for region in &model.regions {
        let _ = writeln!(out, "region {} initial {} {{", region.id, region.initial);
        for t in &region.transitions {
            let _ = writeln!(
                out,
                "  {} -> {} : {} {} {}",
                t.source,
                t.target,
                t.interaction.caller,
                t.interaction.channel,
                t.interaction.callee
            );
        }
        let _ = writeln!(out, "}}");
    }

    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
