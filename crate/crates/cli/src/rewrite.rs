use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use serde_json::Value;

use innerscope::exactmath::{vector, Field};
use innerscope::io::{parse_lie, parse_system, render_json, system_to_json};
use innerscope::rewrite::{
    ad_power_check, check_endo_fp, confluence_check, fp_witness_checks, leavitt_pair, leavitt_system, normal_form,
    parse_polynomial, pbw_system, scalar_unit_search, AmbiguityKind, ConfluenceReport, LieData, NcPolynomial,
    RewriteSystem,
};

use crate::report::{CmdResult, InputError, Inputs, Report};
use crate::Global;

/// A rewriting system, either given directly or as the enveloping algebra of a Lie file.
#[derive(Args, Debug)]
pub struct SystemSource {
    #[arg(long, conflicts_with = "lie", required_unless_present = "lie")]
    system: Option<PathBuf>,
    #[arg(long)]
    lie: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum RewriteCmd {
    /// Normal form of a polynomial.
    Nf {
        #[command(flatten)]
        source: SystemSource,
        #[arg(long)]
        poly: String,
    },
    /// Checks every overlap and inclusion ambiguity.
    Confluence {
        #[command(flatten)]
        source: SystemSource,
    },
    /// The Leavitt algebra L(1, n) and its inner endomorphism `r ↦ Σ aᵢ r bⱼ`.
    Leavitt {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Write the rewriting system to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The enveloping algebra of a Lie algebra; confluent exactly when Jacobi holds.
    Pbw {
        #[arg(long)]
        lie: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks `Σ aᵢbᵢ = 1` and multiplicativity for polynomial lists `a`, `b`.
    CheckEndo {
        #[arg(long)]
        system: PathBuf,
        /// Polynomials separated by `;`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Sample elements for the witness checks.
        #[arg(long = "sample")]
        samples: Vec<String>,
    },
    /// Compares `ad_a^p` with `[aᵖ, ·]` in characteristic `p`.
    AdPower {
        #[arg(long)]
        lie: PathBuf,
        /// Linear combination of basis names; all basis pairs when omitted.
        #[arg(long, requires = "probe")]
        element: Option<String>,
        #[arg(long)]
        probe: Option<String>,
    },
    /// Searches for one-sided units of bounded degree.
    UnitSearch {
        #[command(flatten)]
        source: SystemSource,
    },
}

const PRESENTATION_TAG: &str = "normal forms decide equality in confluent presentations";
const INNER_TAG: &str = "inner endomorphisms given by Σ aᵢ(·)bᵢ with Σ aᵢbᵢ = 1 and bⱼaₖ = δⱼₖ";

fn load_system(source: &SystemSource, inputs: &Inputs) -> Result<RewriteSystem, InputError> {
    match (&source.system, &source.lie) {
        (Some(p), _) => parse_system(&inputs.read(p)?).map_err(|e| InputError::io(p, e)),
        (None, Some(p)) => Ok(pbw_system(&load_lie(p, inputs)?)),
        (None, None) => Err(InputError("one of --system or --lie is required".into())),
    }
}

fn load_lie(path: &Path, inputs: &Inputs) -> Result<LieData, InputError> {
    parse_lie(&inputs.read(path)?).map_err(|e| InputError::io(path, e))
}

fn poly(rs: &RewriteSystem, s: &str, flag: &str) -> Result<NcPolynomial, InputError> {
    rs.parse(s).map_err(|e| InputError(format!("--{flag} {s:?}: {e}")))
}

fn poly_list(rs: &RewriteSystem, s: &str, flag: &str) -> Result<Vec<NcPolynomial>, InputError> {
    s.split(';').map(|p| poly(rs, p.trim(), flag)).collect()
}

fn lie_element(l: &LieData, s: &str, flag: &str) -> Result<Vec<innerscope::exactmath::Scalar>, InputError> {
    let p = parse_polynomial(s, l.names(), l.field()).map_err(|e| InputError(format!("--{flag} {s:?}: {e}")))?;
    if !p.is_homogeneous_of_degree(1) && !p.is_zero() {
        return Err(InputError(format!("--{flag} {s:?}: not a linear combination of basis elements")));
    }
    Ok(p.linear_part(l.dim()))
}

fn write_out(path: &Option<PathBuf>, v: &Value) -> Result<(), InputError> {
    if let Some(p) = path {
        std::fs::write(p, render_json(v)).map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn confluence_verdicts(rep: &mut Report, rs: &RewriteSystem, conf: &ConfluenceReport) {
    rep.info("ambiguities", conf.checked).check("confluent", conf.confluent());
    let failures: Vec<Value> = conf
        .failures
        .iter()
        .map(|a| {
            let kind = match a.kind {
                AmbiguityKind::Overlap => "overlap",
                AmbiguityKind::Inclusion => "inclusion",
            };
            Value::from(format!(
                "rules {} and {} ({kind} at {}) on {}: {}",
                a.rule_a,
                a.rule_b,
                a.position,
                rs.render(&NcPolynomial::monomial(rs.field(), a.word.clone())),
                rs.render(&a.difference)
            ))
        })
        .collect();
    if !failures.is_empty() {
        rep.info("unresolved", failures);
    }
}

pub fn run(cmd: RewriteCmd, global: &Global, inputs: &Inputs) -> CmdResult {
    match cmd {
        RewriteCmd::Nf { source, poly: s } => {
            let rs = load_system(&source, inputs)?;
            let p = poly(&rs, &s, "poly")?;
            let nf = normal_form(&p, &rs);
            let conf = confluence_check(&rs);
            let mut rep = Report::new("rewrite nf");
            rep.info("input", rs.render(&p))
                .info("normal form", rs.render(&nf))
                .info("confluent", conf.confluent())
                .cite(PRESENTATION_TAG);
            Ok(rep)
        }
        RewriteCmd::Confluence { source } => {
            let rs = load_system(&source, inputs)?;
            let conf = confluence_check(&rs);
            let mut rep = Report::new("rewrite confluence");
            rep.info("rules", rs.rules().len());
            confluence_verdicts(&mut rep, &rs, &conf);
            rep.cite(PRESENTATION_TAG);
            Ok(rep)
        }
        RewriteCmd::Leavitt { n, out } => {
            let field = Field::from_characteristic(global.field.unwrap_or(0))?;
            let rs = leavitt_system(n, field)?;
            write_out(&out, &system_to_json(&rs))?;
            let conf = confluence_check(&rs);
            let (a, b) = leavitt_pair(&rs);
            let endo = check_endo_fp(&a, &b, &rs)?;
            let mut samples = vec![NcPolynomial::one(field)];
            samples.extend(rs.generators().iter().map(|g| rs.gen_poly(g)));
            samples.push(a[0].mul(&b[n - 1]));
            samples.push(b[0].add(&a[n - 1]));
            let wit = fp_witness_checks(&a, &b, &rs, &samples)?;
            let mut rep = Report::new("rewrite leavitt");
            rep.info("n", n).info("field", field.to_string());
            confluence_verdicts(&mut rep, &rs, &conf);
            rep.check("Σ aᵢbᵢ = 1", endo.unit_ok)
                .check("multiplicative", endo.multiplicative_ok)
                .check("bⱼ w(r) aⱼ = r on samples", wit.samples.iter().all(|s| s.left_inverse))
                .check("aᵢbⱼ centralizes w(r) on samples", wit.samples.iter().all(|s| s.centralizing))
                .checked_value("rank of {aᵢbⱼ}", wit.matrix_unit_rank, wit.matrix_unit_rank == n * n)
                .cite(INNER_TAG)
                .cite("a non-surjective inner endomorphism of L(1, n)");
            Ok(rep)
        }
        RewriteCmd::Pbw { lie, out } => {
            let l = load_lie(&lie, inputs)?;
            let rs = pbw_system(&l);
            write_out(&out, &system_to_json(&rs))?;
            let conf = confluence_check(&rs);
            let jacobi = l.jacobi_holds();
            let mut rep = Report::new("rewrite pbw");
            rep.info("dim", l.dim()).info("Jacobi", jacobi);
            rep.info("ambiguities", conf.checked).info("confluent", conf.confluent());
            if let Some((i, j, k)) = l.jacobi_violation() {
                let names = l.names();
                rep.info("Jacobi fails on", format!("{}, {}, {}", names[i], names[j], names[k]));
            }
            rep.check("confluent exactly when Jacobi holds", conf.confluent() == jacobi)
                .cite(PRESENTATION_TAG);
            Ok(rep)
        }
        RewriteCmd::CheckEndo { system, a, b, samples } => {
            let rs = parse_system(&inputs.read(&system)?).map_err(|e| InputError::io(&system, e))?;
            let a = poly_list(&rs, &a, "a")?;
            let b = poly_list(&rs, &b, "b")?;
            let endo = check_endo_fp(&a, &b, &rs)?;
            let mut rep = Report::new("rewrite check-endo");
            rep.info("n", a.len())
                .info("confluent", endo.confluent)
                .check("Σ aᵢbᵢ = 1", endo.unit_ok)
                .check("multiplicative", endo.multiplicative_ok);
            if !endo.unit_ok {
                rep.info("unit residue", rs.render(&endo.unit_residue));
            }
            if !endo.multiplicative_ok {
                rep.info("multiplicative residue", rs.render(&endo.multiplicative_residue));
            }
            if !samples.is_empty() {
                let samples = samples.iter().map(|s| poly(&rs, s, "sample")).collect::<Result<Vec<_>, _>>()?;
                let wit = fp_witness_checks(&a, &b, &rs, &samples)?;
                rep.check("bⱼ w(r) aⱼ = r on samples", wit.samples.iter().all(|s| s.left_inverse))
                    .check("aᵢbⱼ centralizes w(r) on samples", wit.samples.iter().all(|s| s.centralizing))
                    .info("rank of {aᵢbⱼ}", wit.matrix_unit_rank);
            }
            rep.cite(INNER_TAG);
            Ok(rep)
        }
        RewriteCmd::AdPower { lie, element, probe } => {
            let l = load_lie(&lie, inputs)?;
            let pairs = match (element, probe) {
                (Some(a), Some(u)) => vec![(a.clone(), lie_element(&l, &a, "element")?, u.clone(), lie_element(&l, &u, "probe")?)],
                _ => {
                    let names = l.names();
                    let mut v = Vec::new();
                    for a in 0..l.dim() {
                        for u in 0..l.dim() {
                            v.push((names[a].clone(), l.basis(a), names[u].clone(), l.basis(u)));
                        }
                    }
                    v
                }
            };
            let mut rep = Report::new("rewrite ad-power");
            let mut all = true;
            let mut rows = Vec::new();
            for (an, a, un, u) in &pairs {
                let r = ad_power_check(&l, a, u)?;
                let ok = r.equal && r.in_lie_algebra && r.leibniz;
                all &= ok;
                rows.push(Value::from(format!(
                    "ad_{an}^{}({un}) = {}: {}",
                    r.p,
                    NcPolynomial::linear(&r.iterated, l.field()).render(l.names()),
                    if ok { "matches [aᵖ, ·]" } else { "MISMATCH" }
                )));
            }
            rep.info("field", l.field().to_string())
                .info("pairs", pairs.len())
                .info("results", rows)
                .check("ad_a^p = [aᵖ, ·] as a derivation of L", all)
                .cite("in characteristic p, [aᵖ, ·] is an extended inner derivation of Lie algebras");
            Ok(rep)
        }
        RewriteCmd::UnitSearch { source } => {
            let rs = load_system(&source, inputs)?;
            let field = rs.field();
            let coeffs = field.elements().unwrap_or_else(|| vector::from_i64(field, &[-1, 0, 1]));
            let cap = global.degree_cap.unwrap_or(1);
            let budget = global.budget.unwrap_or(1 << 20);
            let r = scalar_unit_search(&rs, cap, &coeffs, budget)?;
            let nonscalar: Vec<Value> = r
                .nonscalar
                .iter()
                .map(|s| Value::from(format!("({}) · ({}) = 1", rs.render(&s.b), rs.render(&s.a))))
                .collect();
            let mut rep = Report::new("rewrite unit-search");
            rep.info("degree cap", cap)
                .info("basis words", r.basis_size)
                .info("scanned", r.scanned)
                .info("solutions", r.solutions.len())
                .checked_value("non-scalar left-invertible elements", r.nonscalar.len(), r.nonscalar.is_empty());
            if !nonscalar.is_empty() {
                rep.info("witnesses", nonscalar);
            }
            rep.cite("bounded search only: finding no non-scalar unit proves nothing beyond the cap");
            Ok(rep)
        }
    }
}
