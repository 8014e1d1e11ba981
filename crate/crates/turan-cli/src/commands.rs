//! Subcommand handlers. Each returns a [`Rendered`] bundle (text, JSON,
//! optional CSV) plus a success flag; the caller picks the format and
//! maps the flag to the process exit status.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use turan_core::{
    asymptotic_extremal_graph, berge_certificate, bipartite_slope, clique_matching_extremal,
    crossover, edge_extremal_sweep, extremal_search, extremal_search_stream, extremal_value_sweep,
    four_cycle_value_sweep, four_cycle_window_sweep, graph6, matching_audit_sweep,
    matching_extremal, matching_graph, matching_turan_graph, max_matching,
    recurrence_identity_sweep, remainder_slope_sweep, shape_sweep, switching_safety_sweep,
    symmetrize, turan_graph, unique_turan_sweep, verify_certificate, ForbiddenSet, Graph,
    SearchSource, SweepOutcome, Termination, VertexSet,
};

use crate::{
    CertifyArgs, Command, ConstructArgs, ConstructKind, CountArgs, CrossoverArgs, Format,
    OracleArgs, Suite, SymmetrizeArgs, ValueArgs, VerifyArgs,
};

/// One result in every format the CLI can speak.
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
}

impl Rendered {
    pub fn into_payload(self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Text => self.text,
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => self
                .csv
                .ok_or_else(|| anyhow!("this subcommand has no tabular form; use text or json"))?,
        })
    }
}

pub fn dispatch(command: &Command) -> Result<(Rendered, bool)> {
    match command {
        Command::Value(args) => value(args),
        Command::Construct(args) => construct(args),
        Command::Count(args) => count(args),
        Command::Certify(args) => certify(args),
        Command::Oracle(args) => oracle(args),
        Command::Verify(args) => verify(args),
        Command::Crossover(args) => crossover_table(args),
        Command::Symmetrize(args) => run_symmetrize(args),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading standard input")?;
            Ok(buf)
        }
    }
}

/// Forbidden family from the shared flags: complete graph on k+1 vertices,
/// extra graph6 patterns, and a matching cap.
fn build_family(k: Option<usize>, s: Option<usize>, forbid: &[String]) -> Result<ForbiddenSet> {
    let mut subgraphs = Vec::new();
    if let Some(k) = k {
        subgraphs.push(Graph::complete(k + 1)?);
    }
    for (idx, line) in forbid.iter().enumerate() {
        let g =
            graph6::decode(line).with_context(|| format!("decoding --forbid #{}", idx + 1))?;
        subgraphs.push(g);
    }
    Ok(ForbiddenSet::new(subgraphs, s)?)
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(row)?;
    }
    let bytes = wtr.into_inner().map_err(|e| anyhow!("flushing csv: {e}"))?;
    Ok(String::from_utf8(bytes)?)
}

fn fmt_set(set: VertexSet) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn source_name(source: SearchSource) -> &'static str {
    match source {
        SearchSource::Exhaustive => "exhaustive",
        SearchSource::Graph6Stream => "graph6-stream",
    }
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::FixedPoint => "fixed-point",
        Termination::Budget => "budget",
    }
}

// ---------------------------------------------------------------------------
// value
// ---------------------------------------------------------------------------

fn value(args: &ValueArgs) -> Result<(Rendered, bool)> {
    if let Some(pattern) = &args.pattern {
        let h = graph6::decode(pattern).context("decoding --pattern")?;
        let slope = bipartite_slope(&h, args.r)?;
        let text = format!("{slope} (per-vertex slope)\n");
        let json = json!({
            "kind": "bipartite-slope",
            "pattern": pattern,
            "r": args.r,
            "slope": slope,
        });
        let csv = csv_table(
            &["kind", "r", "pattern", "slope"],
            &[vec![
                "bipartite-slope".into(),
                args.r.to_string(),
                pattern.clone(),
                slope.to_string(),
            ]],
        )?;
        return Ok((Rendered { text, json, csv: Some(csv) }, true));
    }

    let (Some(n), Some(s)) = (args.n, args.s) else {
        bail!("value needs --n and --s (or --pattern for the slope form)");
    };
    let (kind, ev) = match args.k {
        Some(k) => ("clique-matching", clique_matching_extremal(n, k, args.r, s)?),
        None => ("matching-only", matching_extremal(n, args.r, s)?),
    };
    let witness_text: Vec<String> = ev.witnesses.iter().map(|w| w.to_string()).collect();
    let text = format!("{} ({}, {})\n", ev.value, ev.dominant, witness_text.join(" = "));

    let mut json = serde_json::to_value(&ev)?;
    let obj = json.as_object_mut().expect("extremal value serializes as an object");
    obj.insert("kind".into(), json!(kind));
    obj.insert("n".into(), json!(n));
    obj.insert("k".into(), json!(args.k));
    obj.insert("r".into(), json!(args.r));
    obj.insert("s".into(), json!(s));

    let csv = csv_table(
        &["n", "k", "r", "s", "value", "dominant", "witnesses"],
        &[vec![
            n.to_string(),
            args.k.map(|k| k.to_string()).unwrap_or_default(),
            args.r.to_string(),
            s.to_string(),
            ev.value.to_string(),
            ev.dominant.to_string(),
            witness_text.join("|"),
        ]],
    )?;
    Ok((Rendered { text, json, csv: Some(csv) }, true))
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

fn construct(args: &ConstructArgs) -> Result<(Rendered, bool)> {
    let need = |what: Option<usize>, flag: &str| {
        what.ok_or_else(|| anyhow!("this construction needs --{flag}"))
    };
    let (kind, g) = match args.kind {
        ConstructKind::Turan => {
            let g = turan_graph(need(args.n, "n")?, need(args.k, "k")?)?;
            ("turan", g)
        }
        ConstructKind::Split => {
            let g = matching_turan_graph(need(args.n, "n")?, need(args.k, "k")?, need(args.s, "s")?)?;
            ("split", g)
        }
        ConstructKind::Matching => ("matching", matching_graph(need(args.s, "s")?)?),
        ConstructKind::Asymptotic => {
            let pattern = args
                .pattern
                .as_deref()
                .ok_or_else(|| anyhow!("this construction needs --pattern"))?;
            let h = graph6::decode(pattern).context("decoding --pattern")?;
            let g = asymptotic_extremal_graph(
                &h,
                need(args.n, "n")?,
                need(args.s, "s")?,
                need(args.r, "r")?,
            )?;
            ("asymptotic", g)
        }
    };
    let line = graph6::encode(&g)?;
    let text = format!("{line}\n");
    let json = json!({
        "kind": kind,
        "n": g.n(),
        "edges": g.edge_count(),
        "graph6": line,
    });
    let csv = csv_table(
        &["kind", "n", "edges", "graph6"],
        &[vec![kind.into(), g.n().to_string(), g.edge_count().to_string(), line]],
    )?;
    Ok((Rendered { text, json, csv: Some(csv) }, true))
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

fn count(args: &CountArgs) -> Result<(Rendered, bool)> {
    let graphs = graph6::decode_lines(&read_input(&args.input)?)?;
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for g in &graphs {
        let cliques = g.count_cliques(args.r).value;
        let matching = max_matching(g).size();
        let line = graph6::encode(g)?;
        text.push_str(&format!("cliques {cliques}, matching {matching}\n"));
        entries.push(json!({
            "graph6": line,
            "n": g.n(),
            "r": args.r,
            "cliques": cliques,
            "matching": matching,
        }));
        rows.push(vec![
            line,
            g.n().to_string(),
            cliques.to_string(),
            matching.to_string(),
        ]);
    }
    let csv = csv_table(&["graph6", "n", "cliques", "matching"], &rows)?;
    Ok((Rendered { text, json: Value::Array(entries), csv: Some(csv) }, true))
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

fn certify(args: &CertifyArgs) -> Result<(Rendered, bool)> {
    let graphs = graph6::decode_lines(&read_input(&args.input)?)?;
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for g in &graphs {
        let line = graph6::encode(g)?;
        match berge_certificate(g, args.s)? {
            Some(cert) => {
                if !verify_certificate(g, &cert, args.s)? {
                    bail!("internal error: produced certificate failed its own audit on {line}");
                }
                let comps: Vec<String> =
                    cert.components.iter().map(|c| fmt_set(c.vertices)).collect();
                text.push_str(&format!(
                    "matching {} within bound {}: head {}, odd components [{}]\n",
                    cert.s_witness,
                    args.s,
                    fmt_set(cert.b),
                    comps.join(" ")
                ));
                rows.push(vec![
                    line.clone(),
                    args.s.to_string(),
                    "false".into(),
                    cert.s_witness.to_string(),
                    fmt_set(cert.b),
                    comps.join(" "),
                ]);
                entries.push(json!({
                    "graph6": line,
                    "s": args.s,
                    "exceeds": false,
                    "certificate": serde_json::to_value(&cert)?,
                }));
            }
            None => {
                ok = false;
                text.push_str("exceeds bound\n");
                rows.push(vec![line.clone(), args.s.to_string(), "true".into(), String::new(), String::new(), String::new()]);
                entries.push(json!({
                    "graph6": line,
                    "s": args.s,
                    "exceeds": true,
                    "certificate": Value::Null,
                }));
            }
        }
    }
    let csv = csv_table(
        &["graph6", "s", "exceeds", "s_witness", "head", "components"],
        &rows,
    )?;
    Ok((Rendered { text, json: Value::Array(entries), csv: Some(csv) }, ok))
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

fn oracle(args: &OracleArgs) -> Result<(Rendered, bool)> {
    let fam = build_family(args.k, args.s, &args.forbid)?;
    let report = match &args.stream {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            extremal_search_stream(args.n, args.r, &fam, &text)?
        }
        None => extremal_search(args.n, args.r, &fam)?,
    };
    let mut text = format!(
        "value {} ({} witnesses, {} graphs examined, {} ms, {})\n",
        report.value,
        report.witnesses.len(),
        report.graphs_examined,
        report.elapsed.as_millis(),
        source_name(report.source),
    );
    for w in &report.witnesses {
        text.push_str(w);
        text.push('\n');
    }
    let rows: Vec<Vec<String>> = report
        .witnesses
        .iter()
        .map(|w| {
            vec![
                report.n.to_string(),
                report.r.to_string(),
                report.value.to_string(),
                report.graphs_examined.to_string(),
                w.clone(),
            ]
        })
        .collect();
    let csv = csv_table(&["n", "r", "value", "graphs_examined", "witness"], &rows)?;
    Ok((Rendered { text, json: serde_json::to_value(&report)?, csv: Some(csv) }, true))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn run_suite(suite: Suite, args: &VerifyArgs) -> Result<(SweepOutcome, Value)> {
    let seed = args.seed.unwrap_or(0x5eed);
    Ok(match suite {
        Suite::ExtremalValue => {
            let n_max = args.n_max.unwrap_or(7);
            let outcome = extremal_value_sweep(n_max, args.spots)?;
            (outcome, json!({"n_max": n_max, "spots": args.spots}))
        }
        Suite::UniqueTuran => {
            let n_max = args.n_max.unwrap_or(7);
            (unique_turan_sweep(n_max)?, json!({"n_max": n_max}))
        }
        Suite::Edge => {
            let n_max = args.n_max.unwrap_or(7);
            (edge_extremal_sweep(n_max)?, json!({"n_max": n_max}))
        }
        Suite::Recurrences => {
            let t_max = args.t_max.unwrap_or(50);
            let k_max = args.k_max.unwrap_or(10);
            (
                recurrence_identity_sweep(t_max, k_max)?,
                json!({"t_max": t_max, "k_max": k_max}),
            )
        }
        Suite::Shape => {
            let n_max = args.n_max.unwrap_or(200);
            let k_max = args.k_max.unwrap_or(8);
            let s_max = args.s_max.unwrap_or(40);
            (
                shape_sweep(n_max, k_max, s_max)?,
                json!({"n_max": n_max, "k_max": k_max, "s_max": s_max}),
            )
        }
        Suite::Matching => {
            let n_max = args.n_max.unwrap_or(6);
            let cases = args.cases.unwrap_or(300);
            (
                matching_audit_sweep(n_max, cases, seed)?,
                json!({"n_max": n_max, "cases": cases, "seed": seed}),
            )
        }
        Suite::FourCycle => {
            let n_max = args.n_max.unwrap_or(7);
            (four_cycle_value_sweep(n_max)?, json!({"n_max": n_max}))
        }
        Suite::Window => (four_cycle_window_sweep()?, json!({})),
        Suite::Slope => {
            let s_max = args.s_max.unwrap_or(7);
            (remainder_slope_sweep(s_max)?, json!({"s_max": s_max}))
        }
        Suite::Switching => {
            let cases = args.cases.unwrap_or(200);
            (
                switching_safety_sweep(cases, seed, 7)?,
                json!({"cases": cases, "seed": seed, "oracle_cap": 7}),
            )
        }
        Suite::All => unreachable!("expanded by the caller"),
    })
}

fn verify(args: &VerifyArgs) -> Result<(Rendered, bool)> {
    let chosen: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::ExtremalValue,
            Suite::UniqueTuran,
            Suite::Edge,
            Suite::Recurrences,
            Suite::Shape,
            Suite::Matching,
            Suite::FourCycle,
            Suite::Window,
            Suite::Slope,
            Suite::Switching,
        ],
        one => vec![one],
    };
    let mut text = String::new();
    let mut suite_entries = Vec::new();
    let mut rows = Vec::new();
    let mut all_pass = true;
    for suite in chosen {
        let (outcome, params) = run_suite(suite, args)?;
        let pass = outcome.pass();
        all_pass &= pass;
        if pass {
            text.push_str(&format!("{}: PASS [{} cases]\n", outcome.name, outcome.cases));
        } else {
            text.push_str(&format!(
                "{}: FAIL [{} cases, {} failed]\n",
                outcome.name, outcome.cases, outcome.failed
            ));
            for detail in &outcome.failures {
                text.push_str(&format!("    {detail}\n"));
            }
        }
        rows.push(vec![
            outcome.name.clone(),
            outcome.cases.to_string(),
            outcome.failed.to_string(),
            pass.to_string(),
        ]);
        let mut entry = serde_json::to_value(&outcome)?;
        entry
            .as_object_mut()
            .expect("sweep outcome serializes as an object")
            .insert("params".into(), params);
        suite_entries.push(entry);
    }
    text.push_str(&format!("verdict: {}\n", if all_pass { "PASS" } else { "FAIL" }));

    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let json = json!({
        "meta": {
            "tool": "turan",
            "version": env!("CARGO_PKG_VERSION"),
            "timestamp": timestamp,
        },
        "suites": suite_entries,
        "pass": all_pass,
    });
    let csv = csv_table(&["suite", "cases", "failed", "pass"], &rows)?;
    Ok((Rendered { text, json, csv: Some(csv) }, all_pass))
}

// ---------------------------------------------------------------------------
// crossover
// ---------------------------------------------------------------------------

fn crossover_table(args: &CrossoverArgs) -> Result<(Rendered, bool)> {
    let mut text = String::from("  k  r  s  crossover\n");
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for k in 2..=args.k_max {
        for r in 2..=k {
            for s in 1..=args.s_max {
                let cross = crossover(k, r, s)?;
                text.push_str(&format!("{k:>3}{r:>3}{s:>3}  {cross}\n"));
                entries.push(json!({
                    "k": k,
                    "r": r,
                    "s": s,
                    "crossover": serde_json::to_value(cross)?,
                }));
                rows.push(vec![
                    k.to_string(),
                    r.to_string(),
                    s.to_string(),
                    cross.to_string(),
                ]);
            }
        }
    }
    let csv = csv_table(&["k", "r", "s", "crossover"], &rows)?;
    Ok((Rendered { text, json: Value::Array(entries), csv: Some(csv) }, true))
}

// ---------------------------------------------------------------------------
// symmetrize
// ---------------------------------------------------------------------------

fn run_symmetrize(args: &SymmetrizeArgs) -> Result<(Rendered, bool)> {
    let fam = build_family(args.k, args.s, &args.forbid)?;
    let graphs = graph6::decode_lines(&read_input(&args.input)?)?;
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for g in &graphs {
        let before = g.count_cliques(args.r).value;
        let (improved, trace) = symmetrize(g, &fam, args.r, args.budget)?;
        let after = improved.count_cliques(args.r).value;
        text.push_str(&format!(
            "{} -> {}: {} steps, count {} -> {}, {}\n",
            trace.initial_graph6,
            trace.final_graph6,
            trace.steps.len(),
            before,
            after,
            termination_name(trace.terminated_by),
        ));
        rows.push(vec![
            trace.initial_graph6.clone(),
            trace.final_graph6.clone(),
            trace.steps.len().to_string(),
            trace.iterations.to_string(),
            before.to_string(),
            after.to_string(),
            termination_name(trace.terminated_by).into(),
        ]);
        let mut entry = serde_json::to_value(&trace)?;
        let obj = entry.as_object_mut().expect("trace serializes as an object");
        obj.insert("initial_count".into(), json!(before));
        obj.insert("final_count".into(), json!(after));
        entries.push(entry);
    }
    let csv = csv_table(
        &[
            "initial",
            "final",
            "steps",
            "iterations",
            "initial_count",
            "final_count",
            "terminated_by",
        ],
        &rows,
    )?;
    Ok((Rendered { text, json: Value::Array(entries), csv: Some(csv) }, true))
}
