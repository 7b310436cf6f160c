use std::collections::BTreeSet;
use std::path::Path;

use gradlab::group::{Word, WordProblemContext};
use gradlab::io::GroupSpec;
use gradlab::qnormal::{
    blow_up, build_coset_graph, connectedness_path, edge_stabilizer_witnesses, trim_cocompact, verify_chain,
    verify_qnormal, BlowUpGraph, CertStatus, ChainCertificateFile, Connector, CosetGraph, GraphOptions, QNormalError,
    QNormalWitnessSet,
};
use serde::Deserialize;
use serde_json::json;

use crate::error::CliError;
use crate::output::{read_json, Run};
use crate::Globals;

const DEFAULT_RADIUS: usize = 3;
const PATH_SEARCH_BOUND: usize = 6;

/// A lone witness set together with its group.
#[derive(Deserialize)]
struct StepFile {
    group: GroupSpec,
    #[serde(flatten)]
    step: QNormalWitnessSet,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CertificateFile {
    Chain(ChainCertificateFile),
    Step(StepFile),
}

fn status_str(s: CertStatus) -> &'static str {
    match s {
        CertStatus::Proven => "PROVEN",
        CertStatus::Consistent => "CONSISTENT",
        CertStatus::Failed => "FAILED",
    }
}

pub fn verify(g: &Globals, path: &Path) -> Result<(), CliError> {
    let file: CertificateFile = read_json(path)?;
    let mut run = Run::new(&g.out, "qnormal verify")?;
    run.input(path);
    let (status, report) = match &file {
        CertificateFile::Chain(c) => {
            let ctx = c.group.context()?;
            match verify_chain(&c.chain, &ctx) {
                Ok(r) => (r.status, serde_json::to_value(&r)?),
                Err(e @ QNormalError::WitnessCount { .. }) => (CertStatus::Failed, json!({ "error": e.to_string() })),
                Err(e) => return Err(e.into()),
            }
        }
        CertificateFile::Step(s) => {
            let ctx = s.group.context()?;
            match verify_qnormal(&s.step, &ctx) {
                Ok(r) => (r.status, serde_json::to_value(&r)?),
                Err(e @ QNormalError::WitnessCount { .. }) => (CertStatus::Failed, json!({ "error": e.to_string() })),
                Err(e) => return Err(e.into()),
            }
        }
    };
    println!("status: {}", status_str(status));
    run.write_json("qnormal_report.json", &json!({ "status": status, "report": report }))?;
    run.finish()?;
    if status == CertStatus::Failed {
        return Err(CliError::Verification("certificate FAILED".into()));
    }
    Ok(())
}

#[derive(Clone, Deserialize)]
struct GraphPart {
    subgroup: Vec<Word>,
    labels: Vec<Word>,
    #[serde(default)]
    ambient: Option<Vec<Word>>,
    #[serde(default)]
    radius: Option<usize>,
}

#[derive(Deserialize)]
struct GraphFile {
    group: GroupSpec,
    #[serde(flatten)]
    graph: GraphPart,
    /// Witness set whose generating set covers the labels.
    #[serde(default)]
    certificate: Option<QNormalWitnessSet>,
    /// Elements to join to the base vertex by explicit paths.
    #[serde(default)]
    paths: Vec<Word>,
}

fn build(g: &Globals, ctx: &WordProblemContext, part: &GraphPart) -> Result<CosetGraph, CliError> {
    let opts = GraphOptions {
        ambient: part.ambient.clone(),
        budget: g.budget,
        radius: g.radius.or(part.radius).unwrap_or(DEFAULT_RADIUS),
    };
    Ok(build_coset_graph(ctx, &part.subgroup, &part.labels, &opts)?)
}

fn edge_rows(graph: &CosetGraph) -> Vec<Vec<String>> {
    graph
        .edges
        .iter()
        .map(|e| {
            vec![
                graph.vertices[e.u].rep.to_string(),
                graph.vertices[e.v].rep.to_string(),
                graph.labels[e.label].to_string(),
                e.orbit.to_string(),
                format!("{:?}", e.family).to_lowercase(),
            ]
        })
        .collect()
}

const EDGE_HEADER: [&str; 5] = ["u_rep", "v_rep", "label", "orbit", "family"];

pub fn graph(g: &Globals, path: &Path) -> Result<(), CliError> {
    let file: GraphFile = read_json(path)?;
    let ctx = file.group.context()?;
    let graph = build(g, &ctx, &file.graph)?;
    let mut run = Run::new(&g.out, "qnormal graph")?;
    run.input(path);
    run.param("budget", g.budget);
    run.param("radius", g.radius);
    let witnesses = match &file.certificate {
        Some(ws) => Some(edge_stabilizer_witnesses(&graph, ws, &ctx)?),
        None => None,
    };
    let paths = file
        .paths
        .iter()
        .map(|w| connectedness_path(&graph, w, &ctx, PATH_SEARCH_BOUND))
        .collect::<Result<Vec<_>, _>>()?;
    println!(
        "vertices: {}  edges: {}  orbits: {}  completeness: {:?}  connected: {}",
        graph.vertices.len(),
        graph.edges.len(),
        graph.orbit_count(),
        graph.completeness,
        graph.is_connected()
    );
    run.write_json(
        "graph.json",
        &json!({
            "graph": graph,
            "orbit_count": graph.orbit_count(),
            "connected": graph.is_connected(),
            "edge_witnesses": witnesses,
            "paths": paths,
        }),
    )?;
    run.write_csv("graph_edges.csv", &EDGE_HEADER, &edge_rows(&graph))?;
    run.finish()
}

#[derive(Deserialize)]
struct BlowupFile {
    group: GroupSpec,
    outer: GraphPart,
    inner: GraphPart,
    #[serde(default)]
    connectors: Vec<Connector>,
    /// Direct graph on `G/L` to compare with, restricted to its own vertices and labels.
    #[serde(default)]
    compare: Option<GraphPart>,
}

fn blowup_from(
    g: &Globals,
    file: &BlowupFile,
) -> Result<(WordProblemContext, BlowUpGraph, serde_json::Value), CliError> {
    let ctx = file.group.context()?;
    // part radii are honoured here: inner and direct balls differ by design
    let local = Globals { budget: g.budget, radius: None, out: g.out.clone() };
    let outer = build(&local, &ctx, &file.outer)?;
    let inner = build(&local, &ctx, &file.inner)?;
    let b = blow_up(&outer, &inner, &file.connectors, &ctx)?;
    let comparison = match &file.compare {
        Some(part) => {
            let direct = build(&local, &ctx, part)?;
            let keys = direct.vertex_keys();
            let covers = keys.is_subset(&b.graph.vertex_keys());
            let restricted: BTreeSet<_> =
                b.graph.labeled_edges(Some(&keys)).into_iter().filter(|(_, _, s)| direct.labels.contains(s)).collect();
            json!({
                "direct_vertices": keys.len(),
                "vertices_covered": covers,
                "edges_equal": covers && restricted == direct.labeled_edges(None),
            })
        }
        None => serde_json::Value::Null,
    };
    Ok((ctx, b, comparison))
}

pub fn blowup(g: &Globals, path: &Path) -> Result<(), CliError> {
    let file: BlowupFile = read_json(path)?;
    let (_, b, comparison) = blowup_from(g, &file)?;
    let mut run = Run::new(&g.out, "qnormal blowup")?;
    run.input(path);
    run.param("budget", g.budget);
    println!(
        "vertices: {}  edges: {}  injective: {}  connected: {}  matches_direct: {}",
        b.graph.vertices.len(),
        b.graph.edges.len(),
        b.injective,
        b.connected,
        comparison.get("edges_equal").unwrap_or(&serde_json::Value::Null)
    );
    run.write_json("blowup.json", &json!({ "blowup": b, "comparison": comparison }))?;
    run.write_csv("blowup_edges.csv", &EDGE_HEADER, &edge_rows(&b.graph))?;
    run.finish()
}

#[derive(Deserialize)]
struct TrimFile {
    #[serde(default)]
    graph: Option<GraphFile>,
    #[serde(default)]
    blowup: Option<BlowupFile>,
    generators: Vec<Word>,
    #[serde(default)]
    max_len: Option<usize>,
}

pub fn trim(g: &Globals, path: &Path) -> Result<(), CliError> {
    let file: TrimFile = read_json(path)?;
    let (ctx, graph) = match (&file.graph, &file.blowup) {
        (Some(gf), None) => {
            let ctx = gf.group.context()?;
            let graph = build(g, &ctx, &gf.graph)?;
            (ctx, graph)
        }
        (None, Some(bf)) => {
            let (ctx, b, _) = blowup_from(g, bf)?;
            (ctx, b.graph)
        }
        _ => return Err(CliError::Input("trim spec needs exactly one of \"graph\" or \"blowup\"".into())),
    };
    let t = trim_cocompact(&graph, &file.generators, &ctx, file.max_len.unwrap_or(PATH_SEARCH_BOUND))?;
    let mut run = Run::new(&g.out, "qnormal trim")?;
    run.input(path);
    run.param("budget", g.budget);
    run.param("radius", g.radius);
    println!(
        "kept orbits: {}  edges: {} of {}  connected: {}",
        t.orbit_count(),
        t.edges.len(),
        graph.edges.len(),
        t.connected
    );
    let kept_labels: Vec<&Word> = t
        .kept_orbits
        .iter()
        .filter_map(|&o| graph.edges.iter().find(|e| e.orbit == o).map(|e| &graph.labels[e.label]))
        .collect();
    run.write_json(
        "trim.json",
        &json!({ "trimmed": t, "kept_labels": kept_labels, "input_edges": graph.edges.len() }),
    )?;
    run.finish()
}
