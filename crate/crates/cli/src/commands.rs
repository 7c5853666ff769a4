use std::path::Path;

use serde_json::{json, Value};

use seedmat::cluster_matroid::{
    build, laurent_check, monomial_independence, BuildMode, BuildOptions, BuildOutcome,
};
use seedmat::enumeration::{self, is_finite_type, EnumerationError};
use seedmat::fixtures;
use seedmat::independence::Mode;
use seedmat::matroid::{check_basis_axioms, elements, CircuitKind, Connectivity, Matroid, MatroidJson};
use seedmat::polygon::{
    compare_with_exchange_graph, enumerate_triangulations, flip_graph, naive_basis_family, Diagonal, Triangulation,
};
use seedmat::seed::{cartan_counterpart, Seed};

use crate::error::CliError;
use crate::{Format, MatroidOp, PolygonOp, Report};

/// Inline JSON, a file path, or the name of a bundled fixture (with or
/// without `.json`) when no such file exists.
fn read_input(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    let path = Path::new(arg);
    if path.exists() {
        return Ok(std::fs::read_to_string(path)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    fixtures::get(stem).map(str::to_string).ok_or_else(|| {
        CliError::domain(
            "io",
            format!("`{arg}` is neither a file, inline JSON, nor a bundled fixture"),
            None,
        )
    })
}

fn load_seed(arg: &str) -> Result<Seed, CliError> {
    Ok(Seed::parse_json(&read_input(arg)?)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON");
    s.push('\n');
    s
}

fn require(f: Format, allowed: &[Format], command: &str) -> Result<(), CliError> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        let names: Vec<String> = allowed.iter().map(|a| format!("{a:?}").to_lowercase()).collect();
        Err(CliError::usage(format!(
            "--format {} is not supported by {command}; use one of {}",
            format!("{f:?}").to_lowercase(),
            names.join(", ")
        )))
    }
}

fn options(mode: BuildMode, cap: usize, rng_seed: u64, trials: usize, exact: bool) -> BuildOptions {
    BuildOptions {
        mode,
        independence: if exact {
            Mode::Exact
        } else {
            Mode::Probabilistic { trials, rng_seed }
        },
        cap,
    }
}

pub fn mutate(seed: &str, at: &[usize], f: Format) -> Result<Report, CliError> {
    require(f, &[Format::Json, Format::Text], "mutate")?;
    if at.contains(&0) {
        return Err(CliError::usage("--at positions are 1-based"));
    }
    let s = load_seed(seed)?;
    let path: Vec<usize> = at.iter().map(|k| k - 1).collect();
    let t = s.mutate_path(&path)?;
    let body = match f {
        Format::Text => t.cluster_texts().join("\n") + "\n",
        _ => pretty(&serde_json::to_value(t.to_json())?),
    };
    Ok(Report {
        body,
        summary: format!("mutated at {at:?}"),
    })
}

pub fn enumerate(seed: &str, cap: usize, f: Format) -> Result<Report, CliError> {
    let s = load_seed(seed)?;
    let r = enumeration::enumerate(&s, cap)?;
    let summary = format!(
        "{} seeds, {} cluster variables{}",
        r.seeds().len(),
        r.variable_count(),
        if r.truncated() { ", truncated at the cap" } else { "" }
    );
    let body = match f {
        Format::Dot => r.graph().to_dot("exchange_graph"),
        Format::Text => {
            let mut out = String::new();
            for (i, e) in r.seeds().iter().enumerate() {
                out.push_str(&format!("{i}: {}\n", e.extended_key().join(", ")));
            }
            out.push_str(&summary);
            out.push('\n');
            out
        }
        Format::Json => {
            let seeds: Vec<Value> = r
                .seeds()
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "id": i,
                        "cluster": e.extended_key(),
                        "B": e.canonical_matrix.to_rows(),
                        "path": e.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let graph: Value = serde_json::from_str(&r.graph().to_json())?;
            pretty(&json!({
                "seeds": seeds,
                "cluster_variables": r.cluster_variable_texts(),
                "truncated": r.truncated(),
                "graph": graph,
            }))
        }
    };
    Ok(Report { body, summary })
}

pub fn classify(seed: &str, cap: usize, f: Format) -> Result<Report, CliError> {
    require(f, &[Format::Json, Format::Text], "classify")?;
    let s = load_seed(seed)?;
    let cartan = cartan_counterpart(s.matrix()).to_rows();
    let (status, value) = match is_finite_type(s.matrix(), cap) {
        Ok(Some(t)) => (
            format!("finite type {t}"),
            json!({
                "status": "finite",
                "type": t.to_string(),
                "cluster_variables": t.cluster_variable_count(),
                "cartan": cartan,
            }),
        ),
        Ok(None) => (
            "infinite type".to_string(),
            json!({ "status": "infinite", "cartan": cartan }),
        ),
        Err(EnumerationError::Undecided { explored }) => (
            format!("undecided after {explored} matrices"),
            json!({ "status": "undecided", "explored": explored, "cartan": cartan }),
        ),
        Err(e) => return Err(e.into()),
    };
    let body = match f {
        Format::Text => format!("{status}\n"),
        _ => pretty(&value),
    };
    Ok(Report { body, summary: status })
}

pub fn matroid_build(
    seed: &str,
    mode: BuildMode,
    cap: usize,
    rng_seed: u64,
    trials: usize,
    exact: bool,
    f: Format,
) -> Result<Report, CliError> {
    require(f, &[Format::Json], "matroid-build")?;
    let s = load_seed(seed)?;
    match build(&s, options(mode, cap, rng_seed, trials, exact))? {
        BuildOutcome::Matroid(cm) => {
            let m = cm.matroid();
            Ok(Report {
                body: pretty(&serde_json::to_value(cm.to_json())?),
                summary: format!(
                    "{} cluster matroid of type {}: {} elements, rank {}, {} bases",
                    format!("{mode:?}").to_lowercase(),
                    cm.finite_type(),
                    m.len(),
                    m.rank(),
                    m.bases().len()
                ),
            })
        }
        BuildOutcome::NotMatroid { family, witness } => {
            let members: Vec<Vec<String>> = family.members().iter().map(|&b| family.ground().labels_of(b)).collect();
            Err(CliError::domain(
                "not_a_matroid",
                format!("the extended clusters fail the basis axioms: {}", describe_witness(&family, &witness)),
                Some(json!({
                    "elements": family.ground().labels(),
                    "family": members,
                    "witness": serde_json::to_value(witness.to_json(family.ground()))?,
                })),
            ))
        }
    }
}

fn matroid_value(m: &Matroid) -> Result<Value, CliError> {
    Ok(serde_json::to_value(m.to_json())?)
}

pub fn matroid_op(
    op: MatroidOp,
    matroid: Option<&str>,
    labels: &[String],
    rank: Option<usize>,
    size: Option<usize>,
    f: Format,
) -> Result<Report, CliError> {
    require(f, &[Format::Json], "matroid-op")?;
    let load = || -> Result<Matroid, CliError> {
        let text = read_input(matroid.ok_or_else(|| CliError::usage("--matroid is required for this operation"))?)?;
        let j: MatroidJson = serde_json::from_str(&text)?;
        Ok(Matroid::from_json(&j)?)
    };
    let needs_elements = || {
        if labels.is_empty() {
            Err(CliError::usage("--elements is required for delete and contract"))
        } else {
            Ok(())
        }
    };
    let (value, summary) = match op {
        MatroidOp::Dual => {
            let d = load()?.dual();
            (matroid_value(&d)?, format!("dual has rank {}", d.rank()))
        }
        MatroidOp::Delete => {
            needs_elements()?;
            let d = load()?.delete_labels(labels)?;
            (matroid_value(&d)?, format!("deleted {}", labels.join(", ")))
        }
        MatroidOp::Contract => {
            needs_elements()?;
            let c = load()?.contract_labels(labels)?;
            (matroid_value(&c)?, format!("contracted {}", labels.join(", ")))
        }
        MatroidOp::Circuits => {
            let m = load()?;
            let circuits: Vec<Vec<String>> = m.circuits().iter().map(|&c| m.ground().labels_of(c)).collect();
            let n = circuits.len();
            (json!({ "elements": m.ground().labels(), "circuits": circuits }), format!("{n} circuits"))
        }
        MatroidOp::Connected => {
            let m = load()?;
            match m.is_connected() {
                Connectivity::Connected(pairs) => {
                    let witnesses: Vec<Value> = pairs
                        .iter()
                        .map(|w| {
                            json!({
                                "a": m.ground().label(w.a),
                                "b": m.ground().label(w.b),
                                "kind": match w.kind {
                                    CircuitKind::Circuit => "circuit",
                                    CircuitKind::Cocircuit => "cocircuit",
                                },
                                "set": m.ground().labels_of(w.set),
                            })
                        })
                        .collect();
                    (json!({ "connected": true, "witnesses": witnesses }), "connected".to_string())
                }
                Connectivity::Disconnected { part, rest } => (
                    json!({
                        "connected": false,
                        "part": m.ground().labels_of(part),
                        "rest": m.ground().labels_of(rest),
                    }),
                    format!("disconnected: {} + {} elements", part.count_ones(), rest.count_ones()),
                ),
            }
        }
        MatroidOp::Uniform => match (matroid, rank, size) {
            (None, Some(r), Some(s)) => {
                let u = Matroid::uniform(r, s)?;
                (matroid_value(&u)?, format!("U_{{{r},{s}}}"))
            }
            (Some(_), None, None) => {
                let m = load()?;
                let u = m.is_uniform();
                let summary = match u {
                    Some((r, s)) => format!("uniform U_{{{r},{s}}}"),
                    None => "not uniform".to_string(),
                };
                (
                    json!({ "uniform": u.is_some(), "rank": m.rank(), "size": m.len() }),
                    summary,
                )
            }
            _ => {
                return Err(CliError::usage(
                    "uniform takes either --matroid, or --rank together with --size",
                ))
            }
        },
    };
    Ok(Report {
        body: pretty(&value),
        summary,
    })
}

pub fn laurent(seed: &str, cap: usize, f: Format) -> Result<Report, CliError> {
    require(f, &[Format::Json, Format::Text], "laurent-check")?;
    let s = load_seed(seed)?;
    let r = enumeration::enumerate(&s, cap)?;
    let report = laurent_check(&r)?;
    let value = serde_json::to_value(&report)?;
    if !report.passed() {
        return Err(CliError::domain(
            "laurent_violation",
            format!("{} violations", report.violations().count()),
            Some(value),
        ));
    }
    let summary = format!("{} pairs checked, no violations", report.pairs_checked());
    let body = match f {
        Format::Text => report.to_text(),
        _ => pretty(&json!({
            "pairs_checked": report.pairs_checked(),
            "passed": true,
            "report": value,
        })),
    };
    Ok(Report { body, summary })
}

pub fn monomials(seed: &str, max_degree: u32, cap: usize, f: Format) -> Result<Report, CliError> {
    require(f, &[Format::Json, Format::Text], "monomials")?;
    let s = load_seed(seed)?;
    let r = monomial_independence(&s, max_degree, cap)?;
    let summary = format!("{} monomials, rank {}", r.monomials.len(), r.rank);
    let matrix: Vec<Vec<String>> = r.matrix.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect();
    let value = json!({
        "summary": serde_json::to_value(r.summary())?,
        "monomials": r.monomials,
        "columns": r.columns,
        "matrix": matrix,
    });
    if !r.full_rank() {
        return Err(CliError::domain("monomials_dependent", summary, Some(value)));
    }
    let body = match f {
        Format::Text => r.to_text(),
        _ => pretty(&value),
    };
    Ok(Report { body, summary })
}

fn parse_triangulation(p: u32, text: Option<&str>) -> Result<Triangulation, CliError> {
    let diagonals = match text {
        None => (3..p).map(|j| Diagonal::new(p, 1, j)).collect::<Result<Vec<_>, _>>()?,
        Some(t) => t
            .split(',')
            .map(|d| {
                let (a, b) = d
                    .trim()
                    .split_once('-')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or_else(|| CliError::usage(format!("--triangulation: `{d}` is not of the form i-j")))?;
                Ok(Diagonal::new(p, a, b)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?,
    };
    Ok(Triangulation::new(p, diagonals)?)
}

pub fn polygon(op: PolygonOp, p: u32, triangulation: Option<&str>, f: Format) -> Result<Report, CliError> {
    match op {
        PolygonOp::Triangulations => {
            require(f, &[Format::Json, Format::Text], "polygon triangulations")?;
            let ts = enumerate_triangulations(p)?;
            let lists: Vec<Vec<String>> = ts.iter().map(Triangulation::to_strings).collect();
            let body = match f {
                Format::Text => lists.iter().map(|l| l.join(" ") + "\n").collect(),
                _ => pretty(&json!(lists)),
            };
            Ok(Report {
                body,
                summary: format!("{} triangulations of the {p}-gon", ts.len()),
            })
        }
        PolygonOp::Flips => {
            require(f, &[Format::Json], "polygon flips")?;
            let t = parse_triangulation(p, triangulation)?;
            let flips = t
                .diagonals()
                .iter()
                .map(|&d| {
                    let (u, added) = t.flip(d)?;
                    Ok(json!({
                        "removed": d.label(),
                        "added": added.label(),
                        "result": u.to_strings(),
                    }))
                })
                .collect::<Result<Vec<Value>, CliError>>()?;
            Ok(Report {
                body: pretty(&json!({ "triangulation": t.to_strings(), "flips": flips })),
                summary: format!("{} flips", flips.len()),
            })
        }
        PolygonOp::FlipGraph => {
            require(f, &[Format::Json, Format::Dot], "polygon flip-graph")?;
            let g = flip_graph(p)?;
            let body = match f {
                Format::Dot => g.to_dot("flip_graph"),
                _ => {
                    let v: Value = serde_json::from_str(&g.to_json())?;
                    pretty(&v)
                }
            };
            Ok(Report {
                body,
                summary: format!("{} vertices, {} edges", g.vertex_count(), g.edge_count()),
            })
        }
        PolygonOp::Counterexample => {
            require(f, &[Format::Json], "polygon counterexample")?;
            let family = naive_basis_family(p)?;
            let count = family.members().len();
            let (value, summary) = match check_basis_axioms(&family) {
                Ok(_) => (
                    json!({ "p": p, "triangulations": count, "is_matroid": true }),
                    format!("the {count} triangulations form the bases of a matroid"),
                ),
                Err(w) => (
                    json!({
                        "p": p,
                        "triangulations": count,
                        "is_matroid": false,
                        "witness": serde_json::to_value(w.to_json(family.ground()))?,
                    }),
                    format!("not a matroid: {}", describe_witness(&family, &w)),
                ),
            };
            Ok(Report {
                body: pretty(&value),
                summary,
            })
        }
    }
}

fn describe_witness(family: &seedmat::matroid::SetFamily, w: &seedmat::matroid::Witness) -> String {
    use seedmat::matroid::Witness;
    let g = family.ground();
    match *w {
        Witness::NoExchange { b1, b2, x } => format!(
            "removing {} from {{{}}} admits no replacement from {{{}}}",
            g.label(x),
            g.labels_of(b1).join(", "),
            elements(b2 & !b1).map(|i| g.label(i)).collect::<Vec<_>>().join(", ")
        ),
        ref other => other.to_string(),
    }
}

pub fn compare_graphs(n: usize, f: Format) -> Result<Report, CliError> {
    require(f, &[Format::Json, Format::Text], "compare-graphs")?;
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let p = u32::try_from(n + 3).map_err(|_| CliError::usage("--n is too large"))?;
    let same = compare_with_exchange_graph(n)?;
    let triangulations = enumerate_triangulations(p)?.len();
    let summary = format!(
        "flip graph of the {p}-gon and A{n} exchange graph are {}",
        if same { "isomorphic" } else { "NOT isomorphic" }
    );
    let body = match f {
        Format::Text => format!("{summary}\n"),
        _ => pretty(&json!({ "n": n, "polygon": p, "triangulations": triangulations, "isomorphic": same })),
    };
    Ok(Report { body, summary })
}
