//! Implementations of the subcommands. Each returns the text to print.

use std::fmt::Write as _;
use std::path::Path;

use hsheaf::demazure::{correspondence_product, hom_membership};
use hsheaf::moment_graph::{
    build_double_graph, build_parabolic_graph, closedness_sweep, is_closed_brute, is_closed_classified, wq_closure,
    SweepRow,
};
use hsheaf::sections::graded::gamma_basis_graded;
use hsheaf::sections::{
    first_violation, membership_qap, perturb, sample_qap_member, structure_sheaf_double, SectionTuple,
    SectionTupleJson,
};
use hsheaf::{Cofunction, Error, Fga, MomentGraph, SimpleSubset, WeylGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::CliError;

fn graph_text(g: &WeylGroup, title: &str, graph: &MomentGraph) -> String {
    let rs = g.root_system();
    let mut s = format!("{title}: {} vertices, {} edges\n", graph.vertices.len(), graph.edges.len());
    for e in &graph.edges {
        let _ = writeln!(
            s,
            "  {} -> {} [{}]",
            g.word_string(graph.vertices[e.src]),
            g.word_string(graph.vertices[e.dst]),
            rs.root_label(e.label)
        );
    }
    s
}

/// Parabolic graph, double graph and W_Q-closure.
pub fn graph(cfg: &RunConfig) -> Result<String, CliError> {
    let g = &cfg.group;
    let parabolic = build_parabolic_graph(g, cfg.p);
    let double = build_double_graph(g, cfg.q, cfg.p, cfg.labels);
    let closure = wq_closure(g, &double);
    let equal = closure.vertices == parabolic.vertices && closure.edge_triples() == parabolic.edge_triples();
    let missing = parabolic.edge_triples().difference(&closure.edge_triples()).count();
    let verdict = if equal {
        "closure equals G^P".to_string()
    } else {
        format!("closure strictly smaller than G^P ({missing} edges missing)")
    };
    Ok(match cfg.format.unwrap_or(Format::Text) {
        Format::Dot => {
            let mut s = parabolic.to_dot(g, "parabolic");
            s.push_str(&double.to_dot(g, "double"));
            s.push_str(&closure.to_dot(g, "closure"));
            s
        }
        Format::Json => {
            let v = json!({
                "parabolic": parabolic.to_json(g),
                "double": double.to_json(g),
                "closure": closure.to_json(g),
                "closure_equals_parabolic": equal,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = graph_text(g, "parabolic graph", &parabolic);
            s.push_str(&graph_text(g, "double graph", &double));
            s.push_str(&graph_text(g, "closure", &closure));
            s.push_str(&verdict);
            s.push('\n');
            s
        }
    })
}

fn verdict(b: bool) -> &'static str {
    if b {
        "closed"
    } else {
        "not closed"
    }
}

fn row_text(r: &SweepRow) -> String {
    let fmt = |ix: &[usize]| format!("{{{}}}", ix.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
    let classified = r.classified.map_or("unclassified", verdict);
    format!(
        "q={} p={} brute={} classified={} agree={}",
        fmt(&r.q),
        fmt(&r.p),
        verdict(r.brute),
        classified,
        if r.agrees() { "yes" } else { "no" }
    )
}

/// Closedness of one pair or of every pair.
pub fn closed(cfg: &RunConfig, sweep: bool) -> Result<String, CliError> {
    let g = &cfg.group;
    let rows = if sweep {
        closedness_sweep(g)
    } else {
        vec![SweepRow {
            q: cfg.q.one_based(),
            p: cfg.p.one_based(),
            brute: is_closed_brute(g, cfg.q, cfg.p),
            classified: is_closed_classified(cfg.kind, cfg.rank, cfg.q, cfg.p).ok(),
        }]
    };
    Ok(match cfg.format.unwrap_or(Format::Text) {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows).expect("serializable")),
        _ => {
            let mut s: String = rows.iter().map(|r| row_text(r) + "\n").collect();
            if sweep {
                let closed = rows.iter().filter(|r| r.brute).count();
                let mismatches = rows.iter().filter(|r| !r.agrees()).count();
                let _ = writeln!(s, "{} pairs, {closed} closed, {mismatches} mismatches", rows.len());
            }
            s
        }
    })
}

fn tuple_text(fga: &Fga, t: &SectionTuple) -> String {
    let vals: Vec<String> = t.values.iter().map(|v| fga.render(v)).collect();
    format!("({})", vals.join(", "))
}

/// Graded generators of the global sections up to `max_deg`.
pub fn basis(cfg: &RunConfig, max_deg: u32) -> Result<String, CliError> {
    let fga = cfg.fga()?;
    let g = &cfg.group;
    let sheaf = structure_sheaf_double(g, cfg.q, cfg.p, cfg.labels);
    let b = gamma_basis_graded(&fga, &sheaf, max_deg)?;
    Ok(match cfg.format.unwrap_or(Format::Text) {
        Format::Json => {
            let gens: Vec<Vec<SectionTupleJson>> =
                b.generators.iter().map(|d| d.iter().map(|t| t.to_json(&fga)).collect()).collect();
            let v = json!({ "ranks": b.ranks, "dims": b.dims, "generators": gens });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        _ => {
            let words: Vec<String> = sheaf.graph.vertices.iter().map(|&v| g.word_string(v)).collect();
            let mut s = format!("vertices ({})\n", words.join(", "));
            for (d, gens) in b.generators.iter().enumerate() {
                for t in gens {
                    let _ = writeln!(s, "degree {d}: {}", tuple_text(&fga, t));
                }
            }
            let _ = writeln!(s, "ranks {:?}, total {}", b.ranks, b.total_rank());
            s
        }
    })
}

/// A file holding one tuple or a list of tuples.
#[derive(Deserialize)]
#[serde(untagged)]
enum TupleFile {
    One(SectionTupleJson),
    Many(Vec<SectionTupleJson>),
}

fn read_tuples(path: &Path) -> Result<Vec<SectionTupleJson>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let parsed: TupleFile =
        serde_json::from_str(&text).map_err(|e| CliError::Math(Error::Parse(format!("{}: {e}", path.display()))))?;
    Ok(match parsed {
        TupleFile::One(t) => vec![t],
        TupleFile::Many(ts) => ts,
    })
}

/// Section and `^QA^P` verdicts for the tuples of a file.
pub fn check(cfg: &RunConfig, path: &Path) -> Result<String, CliError> {
    let fga = cfg.fga()?;
    let g = &cfg.group;
    let rs = g.root_system();
    let mut s = String::new();
    for (k, j) in read_tuples(path)?.iter().enumerate() {
        let t = SectionTuple::from_json(j, &fga)?;
        let sheaf = structure_sheaf_double(g, t.theta_q, t.theta_p, cfg.labels);
        let section = match first_violation(&fga, &t, &sheaf, None) {
            Ok(None) => "section".to_string(),
            Ok(Some(v)) => format!(
                "not a section: edge {} -> {} labelled {}",
                g.word_string(sheaf.graph.vertices[v.src]),
                g.word_string(sheaf.graph.vertices[v.dst]),
                rs.root_label(v.label)
            ),
            Err(Error::VertexModuleViolation(at)) => format!("not a section: value at {at} is not invariant"),
            Err(e) => return Err(e.into()),
        };
        let member = if membership_qap(&fga, &t) { "in ^QA^P" } else { "not in ^QA^P" };
        let _ = writeln!(s, "tuple {}: {section}; {member}", k + 1);
    }
    Ok(s)
}

/// Random tuples over `^QW^P` as JSON: members of `^QA^P`, or perturbed ones.
pub fn sample(cfg: &RunConfig, count: usize, non_member: bool) -> Result<String, CliError> {
    let fga = cfg.fga()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let tuples: Vec<SectionTupleJson> = (0..count)
        .map(|_| {
            let t = sample_qap_member(&fga, &mut rng, cfg.q, cfg.p, 2, 1);
            let t = if non_member { perturb(&fga, &mut rng, &t, 1) } else { t };
            t.to_json(&fga)
        })
        .collect();
    Ok(format!("{}\n", serde_json::to_string_pretty(&tuples).expect("serializable")))
}

fn cofunction(fga: &Fga, j: &SectionTupleJson) -> Result<Cofunction, CliError> {
    let t = SectionTuple::from_json(j, fga)?;
    Ok(Cofunction::from_s(t.theta_p, t.values))
}

/// The correspondence product of `b` (over `W^P`) and `c` (over `W^H`),
/// with the morphism test for `b·c` taken relative to the configured Θ_Q.
pub fn product(cfg: &RunConfig, file_b: &Path, file_c: &Path) -> Result<String, CliError> {
    let fga = cfg.fga()?;
    let one = |p: &Path| -> Result<SectionTupleJson, CliError> {
        let mut ts = read_tuples(p)?;
        if ts.len() != 1 {
            return Err(CliError::Usage(format!("{}: expected exactly one tuple", p.display())));
        }
        Ok(ts.remove(0))
    };
    let (jb, jc) = (one(file_b)?, one(file_c)?);
    let b = cofunction(&fga, &jb)?;
    let c = cofunction(&fga, &jc)?;
    let a = correspondence_product(&fga, &c, &b)?;
    let values = a.to_s(&fga).expect("products of polynomial tuples are polynomial");
    let out = SectionTuple::new(SimpleSubset::empty(), a.theta_p, values);
    Ok(match cfg.format.unwrap_or(Format::Text) {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.to_json(&fga)).expect("serializable")),
        _ => format!(
            "{}\nmorphism from Q={}: {}\n",
            tuple_text(&fga, &out),
            cfg.q,
            if hom_membership(&fga, &a, cfg.q) { "yes" } else { "no" }
        ),
    })
}
