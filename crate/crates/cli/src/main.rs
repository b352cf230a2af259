use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use pgroup_lab::claims::{self, ClaimId, Verdict};
use pgroup_lab::endo::{
    actual_basic_multiplicities, endo_ring_ulm_invariants, predicted_basic_multiplicities,
};
use pgroup_lab::export;
use pgroup_lab::galois;
use pgroup_lab::ideal::{classify_ideal, enumerate_ideals};
use pgroup_lab::indicator::enumerate_admissible;
use pgroup_lab::invariant::{enumerate_fully_invariant, min_height_indicator};
use pgroup_lab::ranked::{self, RankedIndicator};
use pgroup_lab::{CardinalModel, EndoRing, Error, Group, GroupSpec, Limits};

/// Exact computations in finite abelian p-groups: indicators, fully
/// invariant subgroups, endomorphism rings, ideal lattices and the image
/// Galois connection.
#[derive(Parser)]
#[command(name = "pgroup-lab", version, about)]
struct Cli {
    /// Cap on the group order for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 4096)]
    max_group_order: u64,

    /// Cap on the endomorphism count for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 65536)]
    max_endo_count: u64,

    /// Cardinal comparison model for ranked indicators.
    #[arg(long, global = true, default_value = "gch")]
    cardinal_model: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Group spec: a JSON file path or inline JSON like
    /// '{"p":2,"blocks":[{"exp":1,"mult":1},{"exp":3,"mult":1}]}'.
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants of a group: order, exponent, rank, Ulm invariants.
    Info(SpecArg),
    /// The canonical admissible indicators of a group.
    Indicators {
        #[command(flatten)]
        spec: SpecArg,
        /// Write the indicator lattice as a DOT digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The fully invariant subgroups and their canonical indicators.
    Subgroups {
        #[command(flatten)]
        spec: SpecArg,
        /// Write the subgroup Hasse diagram as a DOT digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The endomorphism ring: size, Ulm invariants, predicted vs counted
    /// basic multiplicities.
    Endo(SpecArg),
    /// Every two-sided ideal of the endomorphism ring, classified.
    Ideals {
        #[command(flatten)]
        spec: SpecArg,
        /// Write the ideal Hasse diagram as a DOT digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the full ideal lattice as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Class labels, class maxima and closure verdicts for every ideal.
    Galois(SpecArg),
    /// Order, meet and join of two ranked indicators, e.g.
    /// '((0,2,inf) | aleph0)'.
    RankedLattice { left: String, right: String },
    /// Run the claims harness over the corpus (or one group).
    Verify {
        /// Restrict to one group instead of the whole corpus.
        #[arg(long)]
        spec: Option<String>,
        /// Comma-separated claim ids (C1..C8; C3 expands to C3a,C3b,C3c).
        #[arg(long)]
        claims: Option<String>,
        /// Write the reports as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<Error>()
                .map(|e| match e {
                    Error::GroupOrderCap { .. } | Error::EndoCountCap { .. } => 3u8,
                    _ => 2u8,
                })
                .unwrap_or(2);
            ExitCode::from(code)
        }
    }
}

fn load_group(spec: &str, limits: &Limits) -> anyhow::Result<Group> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec).with_context(|| format!("reading spec file {spec}"))?
    };
    let parsed: GroupSpec = text.parse::<GroupSpec>()?;
    Ok(Group::new(parsed, limits)?)
}

fn write_output(path: &PathBuf, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let limits = Limits {
        max_group_order: cli.max_group_order,
        max_endo_count: cli.max_endo_count,
    };
    let model: CardinalModel = cli.cardinal_model.parse()?;
    match cli.command {
        Command::Info(spec) => {
            let g = load_group(&spec.spec, &limits)?;
            println!("group: {}", g.name());
            println!("p: {}", g.p());
            println!("order: {}", g.order());
            println!("exponent: {}", g.exponent());
            println!("rank: {}", g.rank());
            println!("endomorphisms: {}", EndoRing::count(&g));
            let u = g.ulm_invariants();
            let brute = g.ulm_invariants_brute();
            println!("ulm invariants: {u:?}");
            println!(
                "ulm brute force: {brute:?} ({})",
                if u == brute { "agree" } else { "DISAGREE" }
            );
        }
        Command::Indicators { spec, dot } => {
            let g = load_group(&spec.spec, &limits)?;
            let sigmas = enumerate_admissible(&g);
            println!(
                "{} canonical admissible indicators of {}:",
                sigmas.len(),
                g.name()
            );
            for s in &sigmas {
                println!("  {s}");
            }
            if let Some(path) = dot {
                write_output(&path, &export::indicator_lattice_dot(&sigmas))?;
            }
        }
        Command::Subgroups { spec, dot } => {
            let g = load_group(&spec.spec, &limits)?;
            let fi = enumerate_fully_invariant(&g, &limits)?;
            println!(
                "{} fully invariant subgroups of {}{}:",
                fi.subgroups.len(),
                g.name(),
                if fi.exhaustive {
                    ""
                } else {
                    " (from indicator subgroups; completeness rests on the correspondence)"
                }
            );
            for h in &fi.subgroups {
                let gens: Vec<String> = h.generators().iter().map(|e| e.to_string()).collect();
                println!(
                    "  order {:>4}  indicator {}  generators [{}]",
                    h.order(),
                    min_height_indicator(h),
                    gens.join(",")
                );
            }
            if let Some(path) = dot {
                write_output(&path, &export::subgroup_lattice_dot(&fi.subgroups))?;
            }
        }
        Command::Endo(spec) => {
            let g = load_group(&spec.spec, &limits)?;
            let ring = EndoRing::new(&g, &limits)?;
            println!("group: {}", g.name());
            println!("|E| = {}", ring.size());
            println!(
                "ulm invariants of (E,+): {:?}",
                endo_ring_ulm_invariants(&ring)
            );
            let predicted = predicted_basic_multiplicities(&g);
            let actual = actual_basic_multiplicities(&ring);
            let pred_str: Vec<String> = predicted
                .iter()
                .map(|(e, k)| format!("exp {e} -> {k}"))
                .collect();
            let act_str: Vec<String> = actual
                .iter()
                .map(|(e, k)| format!("exp {e} -> {k}"))
                .collect();
            println!("predicted basic multiplicities: {}", pred_str.join(", "));
            println!("counted basic multiplicities:   {}", act_str.join(", "));
            let matches = pred_str == act_str;
            println!("verdict: {}", if matches { "match" } else { "mismatch" });
            println!("additive generators (matrix view):");
            for gen in ring.additive_generators() {
                println!("  {} = {}", gen, gen.matrix_string());
            }
        }
        Command::Ideals { spec, dot, json } => {
            let g = load_group(&spec.spec, &limits)?;
            let ring = EndoRing::new(&g, &limits)?;
            let ideals = enumerate_ideals(&ring);
            println!("{} ideals of E({}):", ideals.len(), g.name());
            for (i, ideal) in ideals.iter().enumerate() {
                println!(
                    "  #{i:<3} size {:>6}  label ({})",
                    ideal.size(),
                    classify_ideal(ideal)
                );
            }
            if let Some(path) = dot {
                write_output(&path, &export::ideal_lattice_dot(&ideals))?;
            }
            if let Some(path) = json {
                let doc = export::ideal_lattice_json(&ideals);
                write_output(&path, &serde_json::to_string_pretty(&doc)?)?;
            }
        }
        Command::Galois(spec) => {
            let g = load_group(&spec.spec, &limits)?;
            let ring = EndoRing::new(&g, &limits)?;
            let ideals = enumerate_ideals(&ring);
            println!("galois connection over {}:", g.name());
            for (i, ideal) in ideals.iter().enumerate() {
                let label = galois::class_label(ideal);
                let max = galois::class_maximum(&ring, &label);
                println!(
                    "  ideal #{i:<3} size {:>6}  class {label}  class-max size {:>6}  \
                     im-closed {}",
                    ideal.size(),
                    max.size(),
                    galois::is_closed_ideal(ideal),
                );
            }
            let fi = enumerate_fully_invariant(&g, &limits)?;
            for h in &fi.subgroups {
                println!(
                    "  subgroup order {:>4}  indicator {}  im-closed {}",
                    h.order(),
                    min_height_indicator(h),
                    galois::is_closed_subgroup(&ring, h),
                );
            }
        }
        Command::RankedLattice { left, right } => {
            let x = RankedIndicator::parse(&left, model)?;
            let y = RankedIndicator::parse(&right, model)?;
            println!("x = {x}");
            println!("y = {y}");
            println!("x <= y (ideal order): {}", ranked::leq(&x, &y, model)?);
            println!("y <= x (ideal order): {}", ranked::leq(&y, &x, model)?);
            println!(
                "x <= y (pointwise):   {}",
                ranked::pointwise_leq(&x, &y, model)?
            );
            println!("meet: {}", ranked::meet(&x, &y, model)?);
            println!("join: {}", ranked::join(&x, &y, model)?);
        }
        Command::Verify {
            spec,
            claims: ids,
            json,
        } => {
            let ids = match ids {
                Some(s) => ClaimId::parse_list(&s)?,
                None => ClaimId::all(),
            };
            let groups = match spec {
                Some(s) => vec![load_group(&s, &limits)?],
                None => pgroup_lab::corpus::corpus(&limits)?,
            };
            let mut reports = Vec::new();
            for g in &groups {
                let report = claims::run_claims(g, &ids, &limits)?;
                for claim in &report.claims {
                    let verdict = match claim.verdict {
                        Verdict::Holds => "holds",
                        Verdict::Fails => "fails",
                        Verdict::Vacuous => "vacuous",
                    };
                    println!(
                        "{:<24} {:<4} {:<8} witnesses: {}",
                        report.group.name,
                        claim.id,
                        verdict,
                        claim.witnesses.len()
                    );
                    for w in &claim.witnesses {
                        if !w.revalidate(g, &limits) {
                            return Err(anyhow!(
                                "witness failed to re-validate for {} on {}",
                                claim.id,
                                report.group.name
                            ));
                        }
                    }
                }
                reports.push(report);
            }
            if let Some(path) = json {
                write_output(&path, &claims::reports_to_json(&reports))?;
            }
        }
    }
    Ok(())
}
