use std::path::PathBuf;

use clap::Subcommand;

use innerscope::embed::{build_embedding, central_witness, verify_injectivity_via_embedding};
use innerscope::io::{algebra_to_json, render_json};
use innerscope::tensoralg::{algebra_validate, enumerate_inner_endos, EndoCandidate, DEFAULT_BUDGET};

use crate::algebra::{load_algebra, load_candidate};
use crate::report::{CmdResult, InputError, Inputs, Report};

#[derive(Subcommand, Debug)]
pub enum EmbedCmd {
    /// Builds `S = R⊗1 ⊕ (R⊗R)t ⊕ (R⊗R)t²` and checks the central witnesses.
    Build {
        #[arg(long)]
        algebra: PathBuf,
        /// Write `S` as an algebra file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks that the induced map on `S` is injective; every inner endomorphism when no candidate is given.
    Verify {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
}

const TAG: &str = "extended inner endomorphisms are injective, via a central element of S in the ideal of f(r)";

pub fn run(cmd: EmbedCmd, inputs: &Inputs) -> CmdResult {
    match cmd {
        EmbedCmd::Build { algebra, out } => {
            let r = load_algebra(&algebra, inputs)?;
            let tt = build_embedding(&r)?;
            if let Some(p) = &out {
                std::fs::write(p, render_json(&algebra_to_json(tt.total())))
                    .map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))?;
            }
            let witnesses = (0..r.dim())
                .map(|i| central_witness(&tt, &r.basis(i)).map(|w| w.passed()))
                .collect::<Result<Vec<_>, _>>()?;
            let mut rep = Report::new("embed build");
            rep.info("dim R", r.dim())
                .info("dim S", tt.total().dim())
                .check("S associative and unital", algebra_validate(tt.total()).is_valid())
                .check("f injective", tt.embedding().is_injective())
                .checked_value(
                    "basis elements with a central witness",
                    witnesses.iter().filter(|&&w| w).count(),
                    witnesses.iter().all(|&w| w),
                )
                .cite(TAG);
            Ok(rep)
        }
        EmbedCmd::Verify { algebra, candidate } => {
            let r = load_algebra(&algebra, inputs)?;
            let tt = build_embedding(&r)?;
            let candidates = match candidate {
                Some(p) => vec![EndoCandidate::from_tensor(load_candidate(&p, &r, inputs)?, &r)?],
                None => enumerate_inner_endos(&r, DEFAULT_BUDGET)?.candidates,
            };
            let mut rep = Report::new("embed verify");
            rep.info("dim S", tt.total().dim()).info("candidates", candidates.len());
            let mut all = true;
            let mut centralizer_dim = None;
            for c in &candidates {
                let report = verify_injectivity_via_embedding(c, &tt)?;
                centralizer_dim = Some(report.centralizer_dim);
                if candidates.len() == 1 {
                    rep.check("candidate is an inner endomorphism", report.candidate_passes)
                        .check("fixes the centralizer of f(R)", report.fixes_centralizer)
                        .checked_value("kernel dimension", report.kernel_dim, report.kernel_dim == 0)
                        .check("restricts to the endomorphism of R", report.restriction_matches);
                }
                all &= report.passed();
            }
            if let Some(d) = centralizer_dim {
                rep.info("centralizer of f(R)", d);
            }
            rep.check("all injective", all).cite(TAG);
            Ok(rep)
        }
    }
}
