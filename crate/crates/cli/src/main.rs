use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use k3fs::arith::fmt_rat;
use k3fs::lattice::{hyperbolic_u, DiscriminantForm, DynkinLabel, GramLattice};
use k3fs::mordell_weil::torsion_search;
use k3fs::realizability::{d_lattice_quotient, realize, reduced_binary_forms, Realization};
use k3fs::report::table1;
use k3fs::{config, Case, Configuration};

/// Extremal elliptic K3 surfaces without semi-stable-only fibrations:
/// fiber configurations, torsion sections and realizability.
#[derive(Parser)]
#[command(name = "k3fs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::A => Case::A,
            CaseArg::B => Case::B,
            CaseArg::C => Case::C,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the extremal configurations with 3 (A), 4 (B) or 5 (C) singular fibers.
    Enumerate {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Search for torsion sections of a configuration.
    Torsion {
        /// Comma-separated fiber symbols, e.g. "III*,I2*,I1*".
        #[arg(long)]
        config: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide the Mordell-Weil group of a Case A type (1..=13).
    Realize {
        #[arg(long = "type", value_name = "M")]
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// The classification table for all Case A types.
    Table1 {
        #[arg(long)]
        json: bool,
    },
    /// Invariants of a direct sum of U and ADE lattices, e.g. `lattice U E7 D6 D5`.
    Lattice {
        #[arg(required = true)]
        labels: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// The quotient of D_m by a block sum of D_n's, e.g. `dquot 5 5 8`.
    Dquot {
        #[arg(required = true)]
        parts: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Reduced positive-definite even binary forms of a determinant.
    Binforms {
        #[arg(long)]
        det: i64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                // a closed pipe (e.g. `| head`) is not an error
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Enumerate { case, json, csv } => Ok(enumerate(case.into(), json, csv)),
        Command::Torsion { config, json } => torsion(&config, json),
        Command::Realize { m, json } => {
            let r = realize(m)?;
            Ok(if json { to_json(&r)? } else { realization_text(&r) })
        }
        Command::Table1 { json } => {
            let report = table1()?;
            Ok(if json { to_json(&report)? } else { report.to_text() })
        }
        Command::Lattice { labels, json } => lattice(&labels, json),
        Command::Dquot { parts, json } => {
            let g = d_lattice_quotient(&parts)?;
            Ok(if json {
                to_json(&json!({ "parts": parts, "group": g, "order": g.order() }))?
            } else {
                format!("{g}\n")
            })
        }
        Command::Binforms { det, json } => {
            let forms = reduced_binary_forms(det);
            Ok(if json {
                to_json(&forms)?
            } else {
                forms.iter().map(|f| format!("{f}\n")).collect()
            })
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn symbols(c: &Configuration) -> Vec<String> {
    c.fibers().iter().map(ToString::to_string).collect()
}

fn enumerate(case: Case, json: bool, csv: bool) -> String {
    let configs = config::enumerate_case(case);
    if json {
        let rows: Vec<Value> = configs
            .iter()
            .map(|c| {
                json!({
                    "fibers": symbols(c),
                    "euler_sum": c.euler_sum(),
                    "rank_sum": c.rank_sum(),
                    "deg_j": c.deg_j(),
                    "m": c.len(),
                })
            })
            .collect();
        return serde_json::to_string_pretty(&rows).expect("plain values serialize") + "\n";
    }
    let mut out = String::new();
    if csv {
        out.push_str("fibers,euler_sum,rank_sum,deg_j,m\n");
        for c in &configs {
            out += &format!("\"{}\",{},{},{},{}\n", symbols(c).join(","), c.euler_sum(), c.rank_sum(), c.deg_j(), c.len());
        }
    } else {
        for c in &configs {
            out += &format!("{c}  deg J = {}\n", c.deg_j());
        }
    }
    out
}

fn torsion(config: &str, json: bool) -> Result<String> {
    let c: Configuration = config.parse()?;
    let r = torsion_search(&c)?;
    if json {
        return to_json(&json!({
            "config": symbols(&c),
            "maximal_group": r.maximal_group,
            "witnesses": r.witnesses,
        }));
    }
    let tuple = |x: &Vec<usize>| format!("({})", x.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    let reducible: Vec<String> = c.reducible_fibers().iter().map(ToString::to_string).collect();
    let mut out = format!("configuration: {c}\n");
    out += &format!("components on: ({})\n", reducible.join(", "));
    out += &format!("maximal torsion group: {}\n", r.maximal_group);
    if r.by_bound {
        out += "settled by the height lower bound\n";
    }
    let zero: Vec<String> = r.zero_height_elements.iter().map(tuple).collect();
    out += &format!("zero-height sections: {}\n", if zero.is_empty() { "none".into() } else { zero.join(" ") });
    let wit: Vec<String> = r.witnesses.iter().map(tuple).collect();
    out += &format!("witnesses: {}\n", if wit.is_empty() { "none".into() } else { wit.join(" ") });
    if !r.diagnostics.is_empty() {
        out += &format!("not closed under addition: {} pairs\n", r.diagnostics.len());
    }
    Ok(out)
}

fn form_text(q: &DiscriminantForm) -> String {
    if q.is_trivial() {
        return "trivial".into();
    }
    let qs: Vec<String> = q.q_generators().iter().map(fmt_rat).collect();
    format!("{} with q = ({})", q.group(), qs.join(", "))
}

fn realization_text(r: &Realization) -> String {
    let groups = |gs: &[k3fs::AbelianGroup]| gs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut out = format!("type {}: {}\n", r.m, r.configuration);
    out += &format!("maximal torsion: {}\n", r.maximal_torsion);
    out += &format!("candidate groups: {}\n", groups(&r.candidate_groups));
    out += &format!("excluded groups: {}\n", if r.excluded_groups.is_empty() { "none".into() } else { groups(&r.excluded_groups) });
    match &r.final_mw {
        Some(g) => out += &format!("MW: {g} ({})\n", r.provenance),
        None => out += "MW: none, the type does not exist\n",
    }
    if let Some(w) = &r.witness {
        out += &format!("T = {}, |det S| = {}\n", w.t, w.s_abs_det);
        out += &format!("q_T: {}\n", form_text(&w.q_t));
        out += &format!("q_S: {}\n", form_text(&w.q_s));
        let rows: Vec<String> = w.b.iter().map(|row| format!("{row:?}")).collect();
        out += &format!("B = [{}]\n", rows.join(", "));
    }
    out
}

fn lattice(labels: &[String], json: bool) -> Result<String> {
    let mut parts = Vec::new();
    for l in labels {
        parts.push(if l == "U" { hyperbolic_u() } else { l.parse::<DynkinLabel>()?.gram() });
    }
    let sum = GramLattice::direct_sum(&parts);
    let q = sum.discriminant_form()?;
    let (pos, neg) = sum.signature();
    if json {
        return to_json(&json!({
            "labels": labels,
            "rank": sum.rank(),
            "signature": [pos, neg],
            "determinant": sum.determinant().to_string(),
            "discriminant": q,
        }));
    }
    Ok(format!(
        "rank {}, signature ({pos},{neg}), det {}\ndiscriminant: {}\n",
        sum.rank(),
        sum.determinant(),
        form_text(&q)
    ))
}
