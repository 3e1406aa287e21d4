use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::Value;

use innerscope::io::{parse_algebra, parse_candidate};
use innerscope::tensoralg::{
    check_derivation_generic, check_endo_conditions, classify_inner_endo_algebra, enumerate_inner_endos,
    extract_derivation_element, AlgebraInnerClass, DerivationCandidate, EndoCandidate, EnumerationRoute,
    StructAlgebra, TensorElement, TensorError, DEFAULT_BUDGET,
};

use crate::report::{CmdResult, InputError, Inputs, Report};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Checks the unit and multiplicativity conditions for `w ∈ R⊗R`.
    CheckEndo {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Classifies `w` as conjugation by a unit or not inner.
    Classify {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Counts the extended inner endomorphisms of a finite algebra.
    Enumerate {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Checks the Leibniz identity for `w ∈ R⊗R`.
    CheckDeriv {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Recovers `b` with `w = 1⊗b − b⊗1`.
    ExtractDeriv {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
}

pub fn load_algebra(path: &Path, inputs: &Inputs) -> Result<StructAlgebra, InputError> {
    parse_algebra(&inputs.read(path)?).map_err(|e| InputError::io(path, e))
}

pub fn load_candidate(path: &Path, r: &StructAlgebra, inputs: &Inputs) -> Result<TensorElement, InputError> {
    parse_candidate(&inputs.read(path)?, r).map_err(|e| InputError::io(path, e))
}

const ENDO_TAG: &str = "extended inner endomorphisms of algebras are u(·)u⁻¹ for a unit u";
const DERIV_TAG: &str = "extended inner derivations of algebras are [·, b]";

pub fn run(cmd: AlgebraCmd, global: &Global, inputs: &Inputs) -> CmdResult {
    match cmd {
        AlgebraCmd::CheckEndo { algebra, candidate } => {
            let r = load_algebra(&algebra, inputs)?;
            let w = load_candidate(&candidate, &r, inputs)?;
            let mut rep = Report::new("algebra check-endo");
            rep.info("w", w.render(&r));
            let c = EndoCandidate::from_tensor(w, &r)?;
            let chk = check_endo_conditions(&c, &r)?;
            rep.info("minimal rank", c.pair.n())
                .check("Σ aᵢbᵢ = 1", chk.unit_ok)
                .check("generic multiplicativity", chk.generic_ok)
                .info("bⱼaₖ = δⱼₖ", chk.biorthogonal_ok)
                .cite(ENDO_TAG);
            if let Some(f) = chk.failure {
                rep.info("failure", f.to_string());
            }
            Ok(rep)
        }
        AlgebraCmd::Classify { algebra, candidate } => {
            let r = load_algebra(&algebra, inputs)?;
            let w = load_candidate(&candidate, &r, inputs)?;
            let c = EndoCandidate::from_tensor(w, &r)?;
            let cls = classify_inner_endo_algebra(&c, &r)?;
            let chk = check_endo_conditions(&c, &r)?;
            let mut rep = Report::new("algebra classify");
            match &cls {
                AlgebraInnerClass::ConjugationByUnit { u, u_inv } => {
                    rep.info("class", format!("ConjugationByUnit({})", r.render(u)))
                        .info("u⁻¹", r.render(u_inv));
                }
                AlgebraInnerClass::NotInner(f) => {
                    let why = f.as_ref().map(|f| format!("NotInner({f})")).unwrap_or_else(|| "NotInner".into());
                    rep.info("class", why);
                }
            }
            let inner = matches!(cls, AlgebraInnerClass::ConjugationByUnit { .. });
            rep.check("classification agrees with the direct check", inner == chk.passed()).cite(ENDO_TAG);
            Ok(rep)
        }
        AlgebraCmd::Enumerate { algebra } => {
            let r = load_algebra(&algebra, inputs)?;
            let budget = global.budget.unwrap_or(DEFAULT_BUDGET);
            let e = enumerate_inner_endos(&r, budget)?;
            let mut rep = Report::new("algebra enumerate");
            rep.info("count", e.count)
                .info("units", e.unit_count)
                .check("count = |U(R)| / |U(K)|", e.group_order_check)
                .info(
                    "route",
                    match e.route {
                        EnumerationRoute::BruteForce => "brute force over R⊗R",
                        EnumerationRoute::Units => "units only",
                    },
                )
                .info("scanned", e.scanned);
            if let Some(agree) = e.routes_agree {
                rep.check("brute force and unit routes agree", agree);
            }
            let listed: Vec<Value> = e.candidates.iter().map(|c| Value::from(c.w.render(&r))).collect();
            rep.info("candidates", listed).cite(ENDO_TAG);
            Ok(rep)
        }
        AlgebraCmd::CheckDeriv { algebra, candidate } => {
            let r = load_algebra(&algebra, inputs)?;
            let w = load_candidate(&candidate, &r, inputs)?;
            let mut rep = Report::new("algebra check-deriv");
            rep.info("w", w.render(&r));
            let chk = check_derivation_generic(&DerivationCandidate::new(w), &r)?;
            rep.check("generic Leibniz identity", chk.generic_ok)
                .info("dual-number oracle", chk.oracle_ok)
                .cite(DERIV_TAG);
            Ok(rep)
        }
        AlgebraCmd::ExtractDeriv { algebra, candidate } => {
            let r = load_algebra(&algebra, inputs)?;
            let w = load_candidate(&candidate, &r, inputs)?;
            let mut rep = Report::new("algebra extract-deriv");
            rep.info("w", w.render(&r));
            match extract_derivation_element(&DerivationCandidate::new(w), &r) {
                Ok(b) => {
                    rep.info("b", r.render(&b)).check("w = 1⊗b − b⊗1", true);
                }
                Err(TensorError::TheoremViolation) => {
                    rep.check("w = 1⊗b − b⊗1", false);
                }
                Err(e) => return Err(e.into()),
            }
            rep.cite(DERIV_TAG);
            Ok(rep)
        }
    }
}
