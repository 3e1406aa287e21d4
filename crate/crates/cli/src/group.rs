use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::Value;

use innerscope::freeprod::{
    apply_extended, check_generic_multiplicative, classify_inner_endo_group, extendibility_search, inner_endo_monoid,
    parse_word, FiniteGroup, GroupInnerClass, ReducedWord, VarNames,
};
use innerscope::io::{parse_group, parse_group_hom};

use crate::report::{CmdResult, InputError, Inputs, Report};

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Validates a group file, and optionally a word or a homomorphism file.
    Check {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        word: Option<String>,
        /// Homomorphism file `{"from", "to", "map"}`.
        #[arg(long)]
        hom: Option<PathBuf>,
    },
    /// Classifies a one-variable word as trivial, a conjugation, or not inner.
    Classify {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// The monoid of extended inner endomorphisms.
    Monoid {
        #[arg(long)]
        group: PathBuf,
    },
    /// Endomorphisms that extend along every map into the given targets without being inner.
    ExtendSearch {
        #[arg(long)]
        group: PathBuf,
        /// Target groups; defaults to the group itself.
        #[arg(long = "target")]
        targets: Vec<PathBuf>,
    },
}

pub fn load_group(path: &Path, inputs: &Inputs) -> Result<FiniteGroup, InputError> {
    parse_group(&inputs.read(path)?).map_err(|e| InputError::io(path, e))
}

fn word(s: &str, g: &FiniteGroup) -> Result<ReducedWord, InputError> {
    parse_word(s, g, &mut VarNames::standard()).map_err(|e| InputError(format!("--word {s:?}: {e}")))
}

pub fn run(cmd: GroupCmd, inputs: &Inputs) -> CmdResult {
    match cmd {
        GroupCmd::Check { group, word: w, hom } => {
            let g = load_group(&group, inputs)?;
            let mut rep = Report::new("group check");
            rep.check("valid group", true).info("order", g.order());
            if let Some(w) = w {
                let w = word(&w, &g)?;
                let mult = check_generic_multiplicative(&w, &g)?;
                rep.check("w(x₀x₁) = w(x₀)w(x₁)", mult)
                    .cite("generic multiplicativity decides extended inner endomorphisms of groups");
            }
            if let Some(path) = hom {
                let file = parse_group_hom(&inputs.read(&path)?, &inputs.beside(&path)).map_err(|e| InputError::io(&path, e))?;
                let f = file.hom().map_err(|e| InputError::io(&path, e))?;
                rep.check("homomorphism", true);
                // β_f for every inner class of the source, applied to every element of the target
                let monoid = inner_endo_monoid(f.source());
                let mut images = Vec::new();
                for &cls in &monoid.elements {
                    let row: Vec<Value> = f
                        .target()
                        .elements()
                        .map(|t| Value::from(f.target().name(apply_extended(cls, &f, t).expect("inner"))))
                        .collect();
                    images.push(Value::Array(vec![Value::from(cls.render(f.source())), Value::Array(row)]));
                }
                rep.info("extended maps on the target", images)
                    .cite("extended inner endomorphisms act on the target by conjugation with f(s)");
            }
            Ok(rep)
        }
        GroupCmd::Classify { group, word: w } => {
            let g = load_group(&group, inputs)?;
            let parsed = word(&w, &g)?;
            let cls = classify_inner_endo_group(&parsed, &g)?;
            let mult = check_generic_multiplicative(&parsed, &g)?;
            let mut rep = Report::new("group classify");
            rep.info("word", w.as_str())
                .info("class", cls.render(&g))
                .info("generic multiplicative", mult)
                .check("classification agrees with the generic check", (cls != GroupInnerClass::NotInner) == mult)
                .cite("extended inner endomorphisms of groups are conjugations or trivial");
            Ok(rep)
        }
        GroupCmd::Monoid { group } => {
            let g = load_group(&group, inputs)?;
            let m = inner_endo_monoid(&g);
            let units = m.units();
            let mut rep = Report::new("group monoid");
            rep.info("order of G", g.order())
                .checked_value("monoid size", m.elements.len(), m.elements.len() == g.order() + 1)
                .checked_value("units", units.len(), units.len() == g.order())
                .check("isomorphic to G with a zero adjoined", m.iso_check)
                .cite("extended inner endomorphisms of groups are conjugations or trivial");
            Ok(rep)
        }
        GroupCmd::ExtendSearch { group, targets } => {
            let g = load_group(&group, inputs)?;
            let hs: Vec<FiniteGroup> = if targets.is_empty() {
                vec![g.clone()]
            } else {
                targets.iter().map(|p| load_group(p, inputs)).collect::<Result<_, _>>()?
            };
            let found = extendibility_search(&g, &hs);
            let rendered: Vec<Value> = found
                .iter()
                .map(|a| Value::Array(a.map().iter().map(|&x| Value::from(g.name(x))).collect()))
                .collect();
            let mut rep = Report::new("group extend-search");
            rep.info("targets", hs.len())
                .info("non-inner endomorphisms extending along every target", found.len())
                .info("candidates", rendered)
                .cite("square completion without naturality is an open question; the search decides nothing");
            Ok(rep)
        }
    }
}
