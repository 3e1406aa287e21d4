//! `innerscope`: checks inner endomorphisms, derivations and co-inner maps of finite structures
//! given as JSON files.

mod algebra;
mod embed;
mod group;
mod gset;
mod report;
mod rewrite;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use innerscope::io::render_json;
use report::{CmdResult, Inputs};

#[derive(Parser, Debug)]
#[command(name = "innerscope", version, about = "Exact checks of extended inner maps on finite structures")]
struct Cli {
    /// Also write the report as JSON to this file.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Search budget for enumerations.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Degree cap for polynomial searches.
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    /// Characteristic of the ground field, 0 for the rationals.
    #[arg(long, global = true)]
    field: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite groups and words in `G ∗ ⟨x⟩`.
    #[command(subcommand)]
    Group(group::GroupCmd),
    /// Structure-constant algebras, inner endomorphisms and derivations.
    #[command(subcommand)]
    Algebra(algebra::AlgebraCmd),
    /// Rewriting systems, Leavitt and enveloping algebras.
    #[command(subcommand)]
    Rewrite(rewrite::RewriteCmd),
    /// Right G-sets and co-inner automorphisms.
    #[command(subcommand)]
    Gset(gset::GSetCmd),
    /// The twisted truncated extension used for injectivity.
    #[command(subcommand)]
    Embed(embed::EmbedCmd),
    /// Runs the acceptance criteria.
    Selftest {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

/// Flags shared by every command.
pub struct Global {
    pub budget: Option<u64>,
    pub degree_cap: Option<usize>,
    pub field: Option<u64>,
}

fn selftest(criterion: Option<usize>) -> CmdResult {
    let results = match criterion {
        Some(id) => vec![innerscope::selftest::run_criterion(id)
            .ok_or_else(|| report::InputError(format!("no criterion {id}; criteria are numbered 1 to 10")))?],
        None => innerscope::selftest::run_all(),
    };
    let mut rep = report::Report::new("selftest");
    for r in &results {
        println!("{}", r.line());
        rep.checked_value(&format!("criterion {} {}", r.id, r.name), r.detail.as_str(), r.passed());
    }
    rep.cite("acceptance suite");
    Ok(rep)
}

fn dispatch(cmd: Command, global: &Global, inputs: &Inputs) -> CmdResult {
    match cmd {
        Command::Group(c) => group::run(c, inputs),
        Command::Algebra(c) => algebra::run(c, global, inputs),
        Command::Rewrite(c) => rewrite::run(c, global, inputs),
        Command::Gset(c) => gset::run(c, global, inputs),
        Command::Embed(c) => embed::run(c, inputs),
        Command::Selftest { criterion } => selftest(criterion),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = Global {
        budget: cli.budget,
        degree_cap: cli.degree_cap,
        field: cli.field,
    };
    let inputs = Inputs::default();
    let start = Instant::now();
    let result = dispatch(cli.command, &global, &inputs);
    let mut rep = match result {
        Ok(rep) => rep,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return ExitCode::from(2);
        }
    };
    rep.timing = start.elapsed();
    rep.inputs = inputs.into_vec();
    print!("{}", rep.to_text());
    if let Some(path) = cli.json {
        if let Err(e) = std::fs::write(&path, render_json(&rep.to_json())) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if rep.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
