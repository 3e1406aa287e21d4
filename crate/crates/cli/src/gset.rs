use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::Value;

use innerscope::freeprod::FiniteGroup;
use innerscope::gset::{coinner_group, naturality_oracle, orbit_data, GSet, ORACLE_BUDGET};
use innerscope::io::{parse_gset, GSetFile};

use crate::report::{CmdResult, InputError, Inputs, Report};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum GSetCmd {
    /// Orbits, stabilizers and their centralizers.
    Orbits {
        #[arg(long)]
        gset: PathBuf,
    },
    /// The group of extended co-inner automorphisms.
    Coinner {
        #[arg(long)]
        gset: PathBuf,
        /// Also run the brute-force naturality oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerates maps `g: A → G` with `g_{a·h} = h⁻¹ g_a h` and compares with the datums.
    Oracle {
        #[arg(long)]
        gset: PathBuf,
    },
}

const TAG: &str = "extended co-inner automorphisms of a G-set are choices in the centralizers of the orbit stabilizers";

fn load(path: &Path, inputs: &Inputs) -> Result<GSetFile, InputError> {
    parse_gset(&inputs.read(path)?, &inputs.beside(path)).map_err(|e| InputError::io(path, e))
}

fn names(g: &FiniteGroup, xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| Value::from(g.name(x))).collect())
}

fn oracle_verdicts(rep: &mut Report, a: &GSet<'_>, budget: usize) -> Result<(), InputError> {
    let o = naturality_oracle(a, budget)?;
    rep.info("oracle solutions", o.solutions.len())
        .check("oracle matches the datums", o.matches && o.solutions.len() == o.expected);
    Ok(())
}

pub fn run(cmd: GSetCmd, global: &Global, inputs: &Inputs) -> CmdResult {
    let budget = global.budget.map_or(ORACLE_BUDGET, |b| b as usize);
    match cmd {
        GSetCmd::Orbits { gset } => {
            let file = load(&gset, inputs)?;
            let a = file.gset().map_err(|e| InputError::io(&gset, e))?;
            let g = a.group();
            let od = orbit_data(&a);
            let mut rep = Report::new("gset orbits");
            rep.info("points", a.points()).info("orbits", od.orbits.len());
            for (k, o) in od.orbits.iter().enumerate() {
                rep.info(
                    &format!("orbit {k}"),
                    serde_json::json!({
                        "points": o,
                        "representative": od.reps[k],
                        "stabilizer": names(g, &od.stabilizers[k]),
                        "centralizer": names(g, &od.centralizers[k]),
                    }),
                );
            }
            rep.cite(TAG);
            Ok(rep)
        }
        GSetCmd::Coinner { gset, oracle } => {
            let file = load(&gset, inputs)?;
            let a = file.gset().map_err(|e| InputError::io(&gset, e))?;
            let od = orbit_data(&a);
            let product: usize = od.centralizers.iter().map(Vec::len).product();
            let cg = coinner_group(&a);
            let mut rep = Report::new("gset coinner");
            rep.info("orbits", od.orbits.len())
                .checked_value("order", cg.order, cg.order == product)
                .check("composition matches and datums act faithfully", cg.iso_check)
                .check("independent of orbit representatives", cg.rep_independent);
            if oracle {
                oracle_verdicts(&mut rep, &a, budget)?;
            }
            rep.cite(TAG);
            Ok(rep)
        }
        GSetCmd::Oracle { gset } => {
            let file = load(&gset, inputs)?;
            let a = file.gset().map_err(|e| InputError::io(&gset, e))?;
            let mut rep = Report::new("gset oracle");
            oracle_verdicts(&mut rep, &a, budget)?;
            rep.cite(TAG);
            Ok(rep)
        }
    }
}
