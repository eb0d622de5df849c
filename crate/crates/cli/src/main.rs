//! Command-line surface for the event-algebra analyses, with stable text and
//! JSON reports and the bundled scenario catalog.
//!
//! Exit codes: 0 success, 1 property failure (a checked law fails or an
//! expectation is missed), 2 input error, 3 resource cap hit.

mod input;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use input::{as_lattice, rays_as_blocks, resolve, CliError, Parsed, Resolved};
use oml_core::adjunction::{adjunction_check, reconstruct};
use oml_core::boolean::BooleanAlgebra;
use oml_core::frames::{enumerate_blocks, enumerate_boolean_subalgebras, enumerate_frames};
use oml_core::gluing::{
    check_intersection, pullback, verify_cocycles, verify_pullback_universality,
};
use oml_core::ks::{ks_search, parity_certificate, KsInstance, KsOptions, KsOutcome};
use oml_core::lattice::{validate_ortholattice, FiniteOml};
use oml_core::paste::{blocks_diagram, paste_colimit, representable_diagram};
use oml_core::pasting::{scenario_orthoposet, PastedScenario};
use oml_core::{catalog, BoolHom};
use report::Report;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "oml",
    version,
    about = "Finite quantum event algebras: validation, \
Boolean frames, gluing, pasting, and Kochen-Specker search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node budget for searches.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Sat,
    Unsat,
}

#[derive(Subcommand)]
enum Command {
    /// Check the ortholattice axioms and the orthomodular law.
    Validate { input: String },
    /// Enumerate the maximal Boolean subalgebras.
    Blocks { input: String },
    /// Enumerate Boolean frames into the lattice.
    Frames {
        input: String,
        /// Probe algebra: an atom count, or a one-block block file.
        #[arg(long)]
        probe: Option<String>,
    },
    /// Pullbacks, gluing isomorphisms and cocycle laws over the injective
    /// block frames.
    Glue { input: String },
    /// Two-valued colorability search.
    Ks {
        input: String,
        /// Enumerate all solutions.
        #[arg(long)]
        all: bool,
        /// Solution cap for enumeration.
        #[arg(long)]
        cap: Option<usize>,
        /// Fail (exit 1) unless the outcome matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Paste the colimit of the blocks diagram.
    Paste { input: String },
    /// Paste the blocks diagram and search for an isomorphism back.
    Reconstruct { input: String },
    /// Check the bijection between natural transformations and quantum
    /// morphisms for a diagram over the input lattice.
    Adjoint {
        input: String,
        /// Use the representable diagram at this probe (atom count or
        /// one-block block file) instead of the blocks diagram.
        #[arg(long)]
        probe: Option<String>,
    },
    /// List or show bundled scenarios.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

struct Outcome {
    results: Value,
    stats: Value,
    /// Set when a checked property failed; the report still prints.
    failure: Option<String>,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome {
            results,
            stats: json!({}),
            failure: None,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let (command_name, spec) = match &cli.command {
        Command::Validate { input } => ("validate", Some(input.clone())),
        Command::Blocks { input } => ("blocks", Some(input.clone())),
        Command::Frames { input, .. } => ("frames", Some(input.clone())),
        Command::Glue { input } => ("glue", Some(input.clone())),
        Command::Ks { input, .. } => ("ks", Some(input.clone())),
        Command::Paste { input } => ("paste", Some(input.clone())),
        Command::Reconstruct { input } => ("reconstruct", Some(input.clone())),
        Command::Adjoint { input, .. } => ("adjoint", Some(input.clone())),
        Command::Catalog { action } => match action {
            CatalogAction::List => ("catalog", None),
            CatalogAction::Show { .. } => ("catalog", None),
        },
    };

    let mut inputs = Vec::new();
    let resolved = match &spec {
        Some(s) => match resolve(s) {
            Ok(r) => {
                inputs.push((r.name.clone(), r.sha256.clone()));
                Some(r)
            }
            Err(e) => {
                eprintln!("error: {}", e.message());
                return e.exit_code();
            }
        },
        None => None,
    };

    let outcome = match dispatch(&cli, resolved.as_ref()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };

    // catalog show prints raw contents in text mode, byte-exact
    if let (
        Command::Catalog {
            action: CatalogAction::Show { name },
        },
        Format::Text,
    ) = (&cli.command, cli.format)
    {
        let e = catalog::entry(name).expect("checked in dispatch");
        print!("{}", e.contents);
        return 0;
    }

    let report = Report {
        command: command_name.to_string(),
        inputs,
        results: outcome.results,
        stats: outcome.stats,
    };
    match cli.format {
        Format::Json => print!("{}", report.render_json()),
        Format::Text => print!("{}", report.render_text()),
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("property failure: {msg}");
            1
        }
        None => 0,
    }
}

fn dispatch(cli: &Cli, resolved: Option<&Resolved>) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { .. } => cmd_validate(resolved.unwrap()),
        Command::Blocks { .. } => cmd_blocks(resolved.unwrap()),
        Command::Frames { probe, .. } => cmd_frames(resolved.unwrap(), probe.as_deref()),
        Command::Glue { .. } => cmd_glue(resolved.unwrap()),
        Command::Ks {
            all, cap, expect, ..
        } => cmd_ks(resolved.unwrap(), *all, *cap, *expect, cli.max_nodes),
        Command::Paste { .. } => cmd_paste(resolved.unwrap()),
        Command::Reconstruct { .. } => cmd_reconstruct(resolved.unwrap()),
        Command::Adjoint { probe, .. } => cmd_adjoint(resolved.unwrap(), probe.as_deref()),
        Command::Catalog { action } => cmd_catalog(action),
    }
}

fn label_pair(l: &FiniteOml, pair: Option<(usize, usize)>) -> Value {
    match pair {
        None => Value::Null,
        Some((a, b)) => json!([l.label(a), l.label(b)]),
    }
}

/// Paste a block scenario for validation. The outer error is a pasting
/// collapse; the inner Err is an early orthoposet report.
fn pasted_table_for_validation(
    name: &str,
    s: &oml_core::BlockScenario,
) -> Result<Result<oml_core::LatticeTable, Outcome>, CliError> {
    match scenario_orthoposet(s) {
        Ok(PastedScenario::Lattice { oml, .. }) => Ok(Ok(oml.table())),
        Ok(PastedScenario::OrthoposetOnly {
            table,
            missing_bounds,
            ..
        }) => {
            let results = json!({
                "ortholattice": false,
                "pasting": "orthoposet",
                "classes": table.n(),
                "missing_bounds": missing_bounds.len(),
            });
            Ok(Err(Outcome {
                results,
                stats: json!({}),
                failure: Some("pasting is not a lattice".to_string()),
            }))
        }
        Err(e) => Err(CliError::Property(format!("{name}: {e}"))),
    }
}

fn cmd_validate(r: &Resolved) -> Result<Outcome, CliError> {
    let (table, pasting_note) = match &r.parsed {
        Parsed::Table(t) => (t.clone(), Value::Null),
        Parsed::Blocks(s) => match pasted_table_for_validation(&r.name, s)? {
            Ok(t) => (t, json!("lattice")),
            Err(early) => return Ok(early),
        },
        Parsed::Rays(s) => {
            let blocks = rays_as_blocks(&r.name, s)?;
            match pasted_table_for_validation(&r.name, &blocks)? {
                Ok(t) => (t, json!("lattice")),
                Err(early) => return Ok(early),
            }
        }
    };

    let rep = validate_ortholattice(&table);
    if !rep.is_valid() {
        let violations: Vec<String> = rep.render(&table).lines().map(String::from).collect();
        return Ok(Outcome {
            results: json!({
                "ortholattice": false,
                "violations": violations,
                "pasting": pasting_note,
            }),
            stats: json!({}),
            failure: Some("ortholattice axioms fail".to_string()),
        });
    }
    let l = FiniteOml::from_table(table).expect("just validated");
    let witness = l.orthomodularity_witness();
    let results = json!({
        "ortholattice": true,
        "violations": [],
        "elements": l.n(),
        "orthomodular": witness.is_none(),
        "om_witness": label_pair(&l, witness),
        "pasting": pasting_note,
    });
    Ok(Outcome {
        results,
        stats: json!({}),
        failure: witness
            .map(|(a, b)| format!("orthomodular law fails at ({}, {})", l.label(a), l.label(b))),
    })
}

fn cmd_blocks(r: &Resolved) -> Result<Outcome, CliError> {
    match &r.parsed {
        Parsed::Rays(s) => {
            let names = s.context_names();
            Ok(Outcome::ok(json!({
                "source": "scenario",
                "count": names.len(),
                "blocks": names,
                "warnings": s.warnings,
            })))
        }
        _ => {
            let l = as_lattice(r)?;
            let blocks = enumerate_blocks(&l);
            let names: Vec<Vec<String>> = blocks
                .iter()
                .map(|b| b.atoms.iter().map(|&a| l.label(a).to_string()).collect())
                .collect();
            Ok(Outcome::ok(json!({
                "source": "lattice",
                "count": names.len(),
                "blocks": names,
            })))
        }
    }
}

fn probe_algebra(spec: &str) -> Result<BooleanAlgebra, CliError> {
    if let Ok(k) = spec.parse::<usize>() {
        return BooleanAlgebra::with_atom_count(k)
            .map_err(|e| CliError::Input(format!("bad probe size: {e}")));
    }
    let r = resolve(spec)?;
    match &r.parsed {
        Parsed::Blocks(s) if s.blocks.len() == 1 => BooleanAlgebra::new(s.atoms.clone())
            .map_err(|e| CliError::Input(format!("bad probe: {e}"))),
        Parsed::Blocks(_) => Err(CliError::Input(
            "probe block file must contain exactly one block".to_string(),
        )),
        _ => Err(CliError::Input(
            "probe must be an atom count or a one-block block file".to_string(),
        )),
    }
}

fn cmd_frames(r: &Resolved, probe: Option<&str>) -> Result<Outcome, CliError> {
    let l = as_lattice(r)?;
    match probe {
        Some(spec) => {
            let b = probe_algebra(spec)?;
            let frames = enumerate_frames(&b, &l);
            let rendered: Vec<Vec<String>> = frames
                .iter()
                .map(|f| {
                    f.atom_images()
                        .iter()
                        .map(|&x| l.label(x).to_string())
                        .collect()
                })
                .collect();
            Ok(Outcome::ok(json!({
                "probe": b.to_string(),
                "count": frames.len(),
                "injective": frames.iter().filter(|f| f.is_injective()).count(),
                "frames": rendered,
            })))
        }
        None => {
            let subs = enumerate_boolean_subalgebras(&l);
            let sections: Vec<Value> = subs
                .iter()
                .map(|s| {
                    let frames = enumerate_frames(&s.algebra, &l);
                    json!({
                        "algebra": s.algebra.to_string(),
                        "carrier_size": s.elements.len(),
                        "frames": frames.len(),
                        "injective": frames.iter().filter(|f| f.is_injective()).count(),
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({
                "subalgebras": subs.len(),
                "sections": sections,
            })))
        }
    }
}

fn cmd_glue(r: &Resolved) -> Result<Outcome, CliError> {
    let l = as_lattice(r)?;
    let frames: Vec<_> = enumerate_blocks(&l)
        .into_iter()
        .map(|b| b.injection)
        .collect();
    let mut intersection_ok = true;
    let mut universality_ok = true;
    let mut pairs_checked = 0usize;
    let b2 = BooleanAlgebra::with_atom_count(1).expect("one atom is within bounds");
    for f in &frames {
        for g in &frames {
            pairs_checked += 1;
            let ok = check_intersection(f, g).map_err(|e| CliError::Property(e.to_string()))?;
            intersection_ok &= ok;
            let pb = pullback(f, g).map_err(|e| CliError::Property(e.to_string()))?;
            if !pb.verify_boolean() {
                intersection_ok = false;
            }
            let h = BoolHom::enumerate(&b2, f.source()).remove(0);
            let k = BoolHom::enumerate(&b2, g.source()).remove(0);
            let u = verify_pullback_universality(&pb, &h, &k)
                .map_err(|e| CliError::Property(e.to_string()))?;
            universality_ok &= u;
        }
    }
    let cocycles = verify_cocycles(&frames).map_err(|e| CliError::Property(e.to_string()))?;
    let all_ok = intersection_ok && universality_ok && cocycles.holds();
    let results = json!({
        "block_frames": frames.len(),
        "pairs_checked": pairs_checked,
        "pullback_equals_intersection": intersection_ok,
        "universality": universality_ok,
        "cocycles": {
            "identity_law": cocycles.identity_law,
            "symmetry_law": cocycles.symmetry_law,
            "triangle_law": cocycles.triangle_law,
            "pairs_examined": cocycles.pairs_examined,
            "triples_examined": cocycles.triples_examined,
            "witnesses": cocycles.witnesses,
        },
    });
    Ok(Outcome {
        results,
        stats: json!({}),
        failure: (!all_ok).then(|| "a gluing law failed".to_string()),
    })
}

fn cmd_ks(
    r: &Resolved,
    all: bool,
    cap: Option<usize>,
    expect: Option<Expect>,
    max_nodes: Option<u64>,
) -> Result<Outcome, CliError> {
    let inst = match &r.parsed {
        Parsed::Rays(s) => KsInstance::from(s),
        Parsed::Blocks(s) => KsInstance::from(s),
        Parsed::Table(_) => {
            let l = as_lattice(r)?;
            KsInstance::from_lattice(&l).map_err(|e| CliError::Input(format!("{}: {e}", r.name)))?
        }
    };
    let opts = KsOptions {
        enumerate_all: all,
        cap,
        max_nodes,
        branch_order: None,
    };
    let res = ks_search(&inst, &opts).map_err(|e| match e {
        oml_core::ks::KsError::NodeBudget(n) => {
            CliError::Resource(format!("node budget exhausted after {n} nodes"))
        }
        other => CliError::Input(format!("{}: {other}", r.name)),
    })?;
    let (outcome_str, true_atoms) = match &res.outcome {
        KsOutcome::Sat(v) => (
            "SAT",
            Some(
                v.true_atoms(&inst.atom_names)
                    .into_iter()
                    .map(String::from)
                    .collect::<Vec<_>>(),
            ),
        ),
        KsOutcome::Unsat => ("UNSAT", None),
    };
    let solutions = res.all_solutions.as_ref().map(|s| {
        json!({
            "count": s.solutions.len(),
            "truncated": s.truncated,
            "solutions": s
                .solutions
                .iter()
                .map(|v| v.true_atoms(&inst.atom_names))
                .collect::<Vec<_>>(),
        })
    });
    let results = json!({
        "atoms": inst.atom_names.len(),
        "contexts": inst.contexts.len(),
        "orthogonal_pairs": inst.orthogonal_pairs.len(),
        "outcome": outcome_str,
        "certificate": true_atoms,
        "enumeration": solutions,
        "parity_certificate": parity_certificate(&inst),
    });
    let failure = match expect {
        Some(Expect::Sat) if outcome_str != "SAT" => {
            Some("expected SAT, search returned UNSAT".to_string())
        }
        Some(Expect::Unsat) if outcome_str != "UNSAT" => {
            Some("expected UNSAT, search returned SAT".to_string())
        }
        _ => None,
    };
    Ok(Outcome {
        results,
        stats: json!({
            "nodes": res.stats.nodes,
            "propagations": res.stats.propagations,
        }),
        failure,
    })
}

fn cmd_paste(r: &Resolved) -> Result<Outcome, CliError> {
    let l = as_lattice(r)?;
    let p = blocks_diagram(&l);
    let pasted = paste_colimit(&p).map_err(|e| CliError::Property(e.to_string()))?;
    let om = pasted
        .lattice
        .as_ref()
        .map(|k| label_pair(k, pasted.om_witness))
        .unwrap_or(Value::Null);
    Ok(Outcome::ok(json!({
        "diagram_objects": p.base.objects.len(),
        "diagram_arrows": p.base.arrows.len(),
        "classes": pasted.class_count(),
        "labels": pasted.labels,
        "lattice": pasted.is_lattice(),
        "missing_bounds": pasted.missing_bounds.len(),
        "orthomodular": pasted.lattice.as_ref().map(|_| pasted.om_witness.is_none()),
        "om_witness": om,
    })))
}

fn cmd_reconstruct(r: &Resolved) -> Result<Outcome, CliError> {
    let l = as_lattice(r)?;
    let rep = reconstruct(&l).map_err(|e| CliError::Property(e.to_string()))?;
    let results = json!({
        "classes": rep.pasted_classes,
        "lattice": rep.lattice,
        "isomorphic": rep.isomorphic,
        "mapping": rep.mapping,
        "distinguishing": rep.distinguishing,
    });
    Ok(Outcome {
        results,
        stats: json!({}),
        failure: (!rep.isomorphic).then(|| "reconstruction is not isomorphic".to_string()),
    })
}

const ADJOINT_ENUMERATION_BUDGET: u64 = 5_000_000;

fn cmd_adjoint(r: &Resolved, probe: Option<&str>) -> Result<Outcome, CliError> {
    let l = as_lattice(r)?;
    let (p, diagram_desc) = match probe {
        Some(spec) => {
            let b = probe_algebra(spec)?;
            (representable_diagram(&b), format!("representable at {b}"))
        }
        None => (blocks_diagram(&l), "blocks diagram".to_string()),
    };
    // frame enumeration visits |L|^atoms candidates per base object; refuse
    // inputs beyond desk scale instead of running for hours
    let cost: u64 = p
        .base
        .objects
        .iter()
        .map(|b| (l.n() as u64).saturating_pow(b.atom_count() as u32))
        .sum();
    if cost > ADJOINT_ENUMERATION_BUDGET {
        return Err(CliError::Resource(format!(
            "enumerating the frame presheaf over this base needs about {cost} \
             candidates (budget {ADJOINT_ENUMERATION_BUDGET}); use --probe or a \
             smaller input"
        )));
    }
    let rep = adjunction_check(&p, &l).map_err(|e| CliError::Property(e.to_string()))?;
    let results = json!({
        "diagram": diagram_desc,
        "left_count": rep.left_count,
        "right_count": rep.right_count,
        "bijection": rep.bijection,
        "pairing": rep.pairing,
        "naturality_in_l": rep.naturality_in_l,
        "naturality_in_p": rep.naturality_in_p,
        "notes": rep.notes,
    });
    let holds = rep.holds();
    Ok(Outcome {
        results,
        stats: json!({}),
        failure: (!holds).then(|| "adjunction bijection failed".to_string()),
    })
}

fn cmd_catalog(action: &CatalogAction) -> Result<Outcome, CliError> {
    match action {
        CatalogAction::List => {
            let entries: Vec<Value> = catalog::ENTRIES
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "file": e.filename,
                        "summary": e.summary,
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({ "entries": entries })))
        }
        CatalogAction::Show { name } => {
            let e = catalog::entry(name).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown catalog entry {name:?}; available: {}",
                    catalog::names().join(", ")
                ))
            })?;
            Ok(Outcome::ok(json!({
                "name": e.name,
                "file": e.filename,
                "summary": e.summary,
                "contents": e.contents,
            })))
        }
    }
}
