//! Structural checks of the DOT emitters: every rendering of a generated
//! model must parse under the independent checker in the test kit and
//! reproduce the model's structure node for node, edge for edge.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sbc_itg_core::model::{AgentKind, SystemModel, ViewRelation};
use sbc_itg_core::projection::{project_ad, project_ibd, project_smd};
use sbc_itg_core::render::{to_dot_ad, to_dot_ibd, to_dot_itg, to_dot_smd};
use sbc_itg_testkit::dot::{parse_dot, DotGraph};
use sbc_itg_testkit::gen::{self, GenConfig};

fn models() -> impl Iterator<Item = SystemModel> {
    (0..150).map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD07 + seed);
        gen::model(&mut rng, &GenConfig::standard())
    })
}

/// Shared skeleton checks for the clustered (state-based) renderings, then
/// returns the labelled edges per cluster for emitter-specific comparison.
fn check_clustered(m: &SystemModel, text: &str) -> Vec<Vec<(String, String, String)>> {
    let g = parse_dot(text).unwrap_or_else(|e| panic!("checker rejected: {e}\n{text}"));
    assert!(g.directed);
    assert_eq!(g.name.as_deref(), Some(m.name.as_str()));

    let expected_clusters: Vec<String> = m
        .regions
        .iter()
        .map(|r| format!("cluster_{}", r.id))
        .collect();
    assert_eq!(g.clusters, expected_clusters, "{text}");

    let total_states: usize = m.regions.iter().map(|r| r.states.len()).sum();
    assert_eq!(g.nodes.len(), total_states + m.regions.len(), "{text}");

    let mut per_cluster = Vec::new();
    for region in &m.regions {
        let cluster = format!("cluster_{}", region.id);
        let entry = format!("__init_{}", region.id);

        // Every state is declared inside its own cluster.
        for state in &region.states {
            let node = g
                .node(state)
                .unwrap_or_else(|| panic!("state {state} missing\n{text}"));
            assert_eq!(node.cluster.as_deref(), Some(cluster.as_str()));
        }

        // The entry node is invisible and points at the initial state.
        assert_eq!(g.node_attr(&entry, "shape"), Some("point"), "{text}");
        assert_eq!(g.node_attr(&entry, "style"), Some("invis"), "{text}");
        let entry_edges: Vec<_> = g
            .edges
            .iter()
            .filter(|e| e.cluster.as_deref() == Some(cluster.as_str()) && e.attrs.is_empty())
            .collect();
        assert_eq!(entry_edges.len(), 1, "{text}");
        assert_eq!(entry_edges[0].from, entry);
        assert_eq!(entry_edges[0].to, region.initial);

        // Labelled edges, in emission order.
        per_cluster.push(
            g.edges
                .iter()
                .filter(|e| e.cluster.as_deref() == Some(cluster.as_str()) && !e.attrs.is_empty())
                .map(|e| {
                    let label = e
                        .attrs
                        .iter()
                        .find(|(k, _)| k == "label")
                        .map(|(_, v)| v.clone())
                        .unwrap_or_else(|| panic!("attributed edge without label\n{text}"));
                    (e.from.clone(), e.to.clone(), label)
                })
                .collect(),
        );
    }
    assert_eq!(
        g.edges.len(),
        m.regions.len() + per_cluster.iter().map(Vec::len).sum::<usize>(),
        "edges outside any cluster\n{text}"
    );
    per_cluster
}

#[test]
fn system_graph_mirrors_the_transition_relation() {
    for m in models() {
        let text = to_dot_itg(&m).text;
        let per_cluster = check_clustered(&m, &text);
        for (region, edges) in m.regions.iter().zip(per_cluster) {
            let expected: Vec<(String, String, String)> = region
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
                .collect();
            assert_eq!(edges, expected, "{text}");
        }
    }
}

#[test]
fn state_machine_mirrors_the_smd_view() {
    for m in models() {
        let view = project_smd(&m);
        let text = to_dot_smd(&m, &view).text;
        let per_cluster = check_clustered(&m, &text);
        let rows = match &view {
            ViewRelation::Smdr(rows) => rows,
            _ => unreachable!(),
        };
        for (region, edges) in m.regions.iter().zip(per_cluster) {
            let expected: Vec<(String, String, String)> = rows
                .iter()
                .filter(|r| r.region == region.id)
                .map(|r| (r.source.clone(), r.target.clone(), r.channel.clone()))
                .collect();
            assert_eq!(edges, expected, "{text}");
        }
    }
}

#[test]
fn activity_graph_mirrors_the_ad_view() {
    for m in models() {
        let view = project_ad(&m);
        let text = to_dot_ad(&m, &view).text;
        let per_cluster = check_clustered(&m, &text);
        let rows = match &view {
            ViewRelation::Adr(rows) => rows,
            _ => unreachable!(),
        };
        for (region, edges) in m.regions.iter().zip(per_cluster) {
            let expected: Vec<(String, String, String)> = rows
                .iter()
                .filter(|r| r.region == region.id)
                .map(|r| {
                    let params = sbc_itg_core::render::params_cell(&r.params);
                    (
                        r.source.clone(),
                        r.target.clone(),
                        format!("{} [{}] {}", r.channel, params, r.callee),
                    )
                })
                .collect();
            assert_eq!(edges, expected, "{text}");
        }
    }
}

fn ibd_graph(m: &SystemModel) -> (DotGraph, String, ViewRelation) {
    let view = project_ibd(m);
    let text = to_dot_ibd(m, &view).text;
    let g = parse_dot(&text).unwrap_or_else(|e| panic!("checker rejected: {e}\n{text}"));
    (g, text, view)
}

#[test]
fn block_diagram_declares_each_agent_once_with_its_style() {
    for m in models() {
        let (g, text, view) = ibd_graph(&m);
        assert!(g.clusters.is_empty(), "{text}");

        let rows = match &view {
            ViewRelation::Ibdr(rows) => rows,
            _ => unreachable!(),
        };
        let mut expected_agents: Vec<&str> = Vec::new();
        for r in rows {
            for id in [r.caller.as_str(), r.callee.as_str()] {
                if !expected_agents.contains(&id) {
                    expected_agents.push(id);
                }
            }
        }

        let declared: Vec<&str> = g.nodes.iter().map(|n| n.id.as_str()).collect();
        assert_eq!(declared, expected_agents, "{text}");
        // No implicit nodes: every edge endpoint is declared.
        assert_eq!(g.node_ids().len(), g.nodes.len(), "{text}");

        for id in expected_agents {
            let agent = m.agent(id).expect("generated rows resolve");
            let shape = match agent.kind {
                AgentKind::Actor => "doubleoctagon",
                AgentKind::Block => "box",
            };
            assert_eq!(g.node_attr(id, "shape"), Some(shape), "{text}");
            assert_eq!(g.node_attr(id, "label"), Some(agent.label()), "{text}");
        }
    }
}

#[test]
fn block_diagram_has_one_edge_per_view_row() {
    for m in models() {
        let (g, text, view) = ibd_graph(&m);
        let rows = match &view {
            ViewRelation::Ibdr(rows) => rows,
            _ => unreachable!(),
        };
        assert_eq!(g.edges.len(), rows.len(), "{text}");
        for (edge, row) in g.edges.iter().zip(rows) {
            assert_eq!(edge.from, row.caller);
            assert_eq!(edge.to, row.callee);
            let params: Vec<String> = row.params.iter().map(|p| p.to_string()).collect();
            let label = format!("{}({})", row.channel, params.join(", "));
            assert_eq!(edge.attrs, vec![("label".to_string(), label)], "{text}");
        }
    }
}
