//! Dispatch from check names to library checks.

use crate::algebra::{Element, Family};
use crate::analysis::closure::{closure_report, derived_series_report, simplicity_sweep, ClosureMode};
use crate::analysis::ideal::ideal_check;
use crate::analysis::modules::{module_axiom_check, witt_module_check};
use crate::analysis::vandermonde::vandermonde_report;
use crate::analysis::weights::{natural_module_report, weight_report};
use crate::analysis::WindowSubspace;
use crate::brackets::{center_window, check_anticommutativity, check_constructor_agreement, check_fundamental_identity, TriBracketSpec};
use crate::error::Error;
use crate::nambu::{check_injectivity, check_nambu_axioms, check_realization, RealizationMap};
use crate::operators::fk::verify_fk_structure;
use crate::operators::loop_algebra::verify_sl2_laurent;
use crate::operators::tables::{verify_basis_independence, verify_generator_table};
use crate::operators::AlgebraKind;
use crate::report::{Status, VerdictReport};
use crate::sampling::ElementSampler;

use super::config::{BracketChoice, Format, RunConfig};

/// Names accepted by `verify`, in suite order.
pub const CHECKS: [&str; 16] = [
    "fundamental-identity",
    "anticommutativity",
    "constructor-agreement",
    "nambu-realization",
    "structure-maps",
    "basis-independence",
    "table-5-1",
    "section3-structure",
    "sl2-laurent",
    "ideal-closure",
    "vandermonde",
    "weight-decomposition",
    "natural-module",
    "module-axioms",
    "witt-module",
    "center",
];

/// Extra names accepted by `analyze`.
pub const PROCEDURES: [&str; 3] = ["derived-series", "lower-central", "hypo-nilpotent"];

/// Names accepted by `table`.
pub const TABLES: [&str; 4] = ["table-5-1", "sl2-laurent", "section3-structure", "basis-independence"];

pub const VANDERMONDE_TRIALS: usize = 20;
pub const VANDERMONDE_TERMS: usize = 4;

pub fn is_known(name: &str) -> bool {
    CHECKS.contains(&name) || PROCEDURES.contains(&name)
}

fn bracket_dependent(name: &str) -> bool {
    matches!(
        name,
        "fundamental-identity"
            | "anticommutativity"
            | "nambu-realization"
            | "basis-independence"
            | "ideal-closure"
            | "weight-decomposition"
            | "module-axioms"
            | "derived-series"
            | "lower-central"
            | "hypo-nilpotent"
    )
}

/// Runs one named check; bracket-dependent checks run once per configured bracket.
pub fn run_check(name: &str, cfg: &RunConfig) -> Result<Vec<VerdictReport>, Error> {
    if !is_known(name) {
        return Err(Error::Config(format!("unknown check '{name}'")));
    }
    if bracket_dependent(name) {
        cfg.bracket_choices().into_iter().map(|b| run_with_bracket(name, cfg, b)).collect()
    } else {
        Ok(vec![run_independent(name, cfg)?])
    }
}

fn run_with_bracket(name: &str, cfg: &RunConfig, choice: BracketChoice) -> Result<VerdictReport, Error> {
    let spec = cfg.tri_spec(choice)?;
    let w = &cfg.window;
    match name {
        "fundamental-identity" => check_fundamental_identity(&spec, w, cfg.samples, cfg.seed),
        "anticommutativity" => check_anticommutativity(&spec, w),
        "nambu-realization" => nambu(cfg, &spec),
        "basis-independence" => {
            let algebra = match spec {
                TriBracketSpec::Omega => AlgebraKind::Omega,
                TriBracketSpec::Fk { k, f } => AlgebraKind::Fk { k, f },
                other => return Err(Error::Unsupported(format!("basis-independence for the {other} bracket"))),
            };
            verify_basis_independence(&algebra, w, Some(cfg.s0()))
        }
        "ideal-closure" => ideal_closure(cfg, &spec),
        "weight-decomposition" => weight_report(&spec, w),
        "module-axioms" => module_axiom_check(&spec, w, cfg.samples, cfg.seed),
        "derived-series" => derived_series_report(&spec, w, cfg.depth),
        "lower-central" => {
            let seed = seed_or_window(cfg);
            closure_report(&spec, &seed, w, ClosureMode::LowerCentral, cfg.depth)
        }
        "hypo-nilpotent" => hypo_nilpotent(cfg, &spec),
        _ => unreachable!("bracket-dependent names are listed"),
    }
}

fn run_independent(name: &str, cfg: &RunConfig) -> Result<VerdictReport, Error> {
    let w = &cfg.window;
    match name {
        "constructor-agreement" => check_constructor_agreement(w, cfg.k, &cfg.beta),
        "structure-maps" => Ok(crate::algebra::check_structure_maps(w, cfg.k)),
        "table-5-1" => verify_generator_table(w),
        "section3-structure" => verify_fk_structure(cfg.k, &cfg.beta, cfg.s0(), w),
        "sl2-laurent" => verify_sl2_laurent(w),
        "vandermonde" => vandermonde(cfg),
        "natural-module" => natural_module_report(w),
        "witt-module" => match cfg.module {
            Some(i) => witt_module_check(i, w),
            None => {
                let mut report = VerdictReport::new("witt-module").param("window", w).param("module", "1,2,3");
                for i in 1..=3 {
                    let mut sub = witt_module_check(i, w)?;
                    sub.check = format!("V{i}");
                    report.absorb(sub);
                }
                Ok(report)
            }
        },
        "center" => Ok(center_window(cfg.lie, w).report),
        _ => unreachable!("bracket-independent names are listed"),
    }
}

fn nambu(cfg: &RunConfig, spec: &TriBracketSpec) -> Result<VerdictReport, Error> {
    let map = match spec {
        TriBracketSpec::Omega => RealizationMap::Omega,
        TriBracketSpec::Fk { k, f } if cfg.printed_map => RealizationMap::FkPrinted { k: *k, f: f.clone() },
        TriBracketSpec::Fk { k, f } => RealizationMap::Fk { k: *k, f: f.clone() },
        other => return Err(Error::Unsupported(format!("no Nambu realization is defined for the {other} bracket"))),
    };
    let w = &cfg.window;
    let mut report = VerdictReport::new("nambu-realization").param("bracket", spec).param("map", map.name()).param("window", w);
    report.absorb(check_realization(&map, spec, w)?);
    report.absorb(check_injectivity(&map, w));
    report.absorb(check_nambu_axioms(&map, w, cfg.samples, cfg.seed));
    Ok(report)
}

fn seed_or_window(cfg: &RunConfig) -> Vec<Element> {
    if cfg.seed_elements.is_empty() {
        cfg.window.basis().into_iter().map(Element::basis).collect()
    } else {
        cfg.seed_elements.clone()
    }
}

fn ideal_closure(cfg: &RunConfig, spec: &TriBracketSpec) -> Result<VerdictReport, Error> {
    if !cfg.seed_elements.is_empty() {
        return closure_report(spec, &cfg.seed_elements, &cfg.window, ClosureMode::IdealClosure, cfg.depth);
    }
    match spec {
        TriBracketSpec::Fk { .. } => hypo_nilpotent(cfg, spec),
        _ => simplicity_sweep(&cfg.window, cfg.depth),
    }
}

/// The ideal check on the span of the seed elements, or on `span{L}` by default.
fn hypo_nilpotent(cfg: &RunConfig, spec: &TriBracketSpec) -> Result<VerdictReport, Error> {
    let w = cfg.window;
    let (candidate, expect) = if cfg.seed_elements.is_empty() {
        (WindowSubspace::coordinate_span(w, |b| b.family == Family::L), matches!(spec, TriBracketSpec::Fk { .. }))
    } else {
        (WindowSubspace::from_elements(w, &cfg.seed_elements)?, false)
    };
    let (verdict, mut report) = ideal_check(spec, &candidate, &w, cfg.depth, cfg.seed)?;
    if expect {
        if !verdict.is_ideal {
            report.fail("span of L is not an ideal");
        }
        if !verdict.nilpotent_as_algebra {
            report.fail("span of L is not nilpotent as an algebra");
        }
        if verdict.nilpotent_as_ideal {
            report.fail("span of L is nilpotent as an ideal");
        }
        if !verdict.minimal_on_window {
            report.fail("span of L is not minimal on the window");
        }
    }
    Ok(report)
}

fn vandermonde(cfg: &RunConfig) -> Result<VerdictReport, Error> {
    if cfg.seed_elements.len() == 1 {
        return vandermonde_report(&cfg.seed_elements[0], &cfg.window);
    }
    let elements = if cfg.seed_elements.is_empty() {
        let mut sampler = ElementSampler::new(cfg.seed, cfg.window);
        let n = VANDERMONDE_TERMS.min(cfg.window.dim());
        (0..VANDERMONDE_TRIALS).map(|_| sampler.element_exact(n)).collect()
    } else {
        cfg.seed_elements.clone()
    };
    let mut report = VerdictReport::new("vandermonde").param("window", cfg.window).param("seed", cfg.seed).param("trials", elements.len());
    for (i, u) in elements.iter().enumerate() {
        let mut sub = vandermonde_report(u, &cfg.window)?;
        sub.check = format!("trial {i}");
        sub.stats.insert("element".into(), u.to_string());
        report.absorb(sub);
    }
    Ok(report)
}

/// The suite run by `report`: the configured check list, or every check.
pub fn run_suite(cfg: &RunConfig) -> Result<Vec<VerdictReport>, Error> {
    let names: Vec<String> = if cfg.checks.is_empty() { CHECKS.iter().map(|s| s.to_string()).collect() } else { cfg.checks.clone() };
    let mut out = Vec::new();
    for name in &names {
        out.extend(run_check(name, cfg)?);
    }
    Ok(out)
}

pub fn render(reports: &[VerdictReport], format: Format) -> String {
    match format {
        Format::Text => reports.iter().map(VerdictReport::to_text).collect::<Vec<_>>().join(""),
        Format::Json => {
            let mut s = if reports.len() == 1 { serde_json::to_string_pretty(&reports[0]) } else { serde_json::to_string_pretty(reports) }
                .expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

pub fn overall(reports: &[VerdictReport]) -> Status {
    reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
}
