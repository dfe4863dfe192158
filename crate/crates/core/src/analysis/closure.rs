//! Derived series, lower central series and ideal closure on a window.
//!
//! Every bracket slot ranges over window basis vectors. A bracket whose
//! value leaves the window is kept out of the closure (so each computed
//! subspace is contained in the true one) and recorded as an escape.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{Basis, Element};
use crate::brackets::{tri_bracket, TriBracketSpec};
use crate::error::Error;
use crate::report::VerdictReport;
use crate::window::Window;

use super::WindowSubspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureMode {
    /// `I^(s+1) = [I^(s), I^(s), A]`
    DerivedSeries,
    /// `I^(s+1) = [I^s, I, A]`
    LowerCentral,
    /// `J_(n+1) = J_n + [J_n, A, A]`
    IdealClosure,
}

impl fmt::Display for ClosureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureMode::DerivedSeries => "derived-series",
            ClosureMode::LowerCentral => "lower-central",
            ClosureMode::IdealClosure => "ideal-closure",
        })
    }
}

pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Debug)]
pub struct ClosureChain {
    pub mode: ClosureMode,
    /// `steps[0]` is the span of the seed.
    pub steps: Vec<WindowSubspace>,
    /// Distinct bracket values that left the window, per step.
    pub escapes: Vec<Vec<Element>>,
    /// First index `i` with `steps[i] == steps[i - 1]`.
    pub stabilized_at: Option<usize>,
}

impl ClosureChain {
    pub fn last(&self) -> &WindowSubspace {
        self.steps.last().expect("chain has the seed step")
    }

    pub fn escape_count(&self) -> usize {
        self.escapes.iter().map(Vec::len).sum()
    }

    /// `steps[i]` restricted to basis vectors never touched by an escaped value.
    pub fn boundary_discounted(&self, i: usize) -> WindowSubspace {
        let step = &self.steps[i];
        let window = step.window();
        let touched: BTreeSet<Basis> = self.escapes[..=i].iter().flatten().flat_map(|e| e.support().collect::<Vec<_>>()).collect();
        step.intersection(&WindowSubspace::coordinate_span(window, |b| !touched.contains(&b)))
    }
}

/// Brackets `[a, b, c]` for all listed triples, split into in-window values
/// and escapes, in input order.
fn bracket_all(
    spec: &TriBracketSpec,
    triples: Vec<(Element, Element, Element)>,
    window: &Window,
) -> Result<(Vec<Element>, Vec<Element>), Error> {
    let values: Vec<Element> = triples.par_iter().map(|(a, b, c)| tri_bracket(spec, a, b, c)).collect::<Result<_, _>>()?;
    let mut inside = Vec::new();
    let mut escaped = BTreeSet::new();
    for v in values {
        if v.is_zero() {
            continue;
        }
        if v.is_supported_in(window) {
            inside.push(v);
        } else {
            escaped.insert(v);
        }
    }
    Ok((inside, escaped.into_iter().collect()))
}

fn span_of(window: &Window, elems: &[Element]) -> Result<WindowSubspace, Error> {
    let mut s = WindowSubspace::zero(*window);
    for e in elems {
        s.insert(e)?;
    }
    Ok(s)
}

pub fn span_close(
    spec: &TriBracketSpec,
    seed: &[Element],
    window: &Window,
    mode: ClosureMode,
    depth: usize,
) -> Result<ClosureChain, Error> {
    let basis: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let first = span_of(window, seed)?;
    let mut chain = ClosureChain { mode, steps: vec![first.clone()], escapes: vec![Vec::new()], stabilized_at: None };
    // Generators of the ideal not yet bracketed against A x A.
    let mut pending: Vec<Element> = first.basis_elements();
    for step in 1..=depth {
        let prev = chain.last().clone();
        let (next, escaped) = match mode {
            ClosureMode::DerivedSeries | ClosureMode::LowerCentral => {
                let left = prev.basis_elements();
                let right = if mode == ClosureMode::DerivedSeries { left.clone() } else { first.basis_elements() };
                let mut triples = Vec::new();
                for (i, u) in left.iter().enumerate() {
                    for (j, v) in right.iter().enumerate() {
                        if mode == ClosureMode::DerivedSeries && j <= i {
                            continue;
                        }
                        for c in &basis {
                            triples.push((u.clone(), v.clone(), c.clone()));
                        }
                    }
                }
                let (inside, escaped) = bracket_all(spec, triples, window)?;
                (span_of(window, &inside)?, escaped)
            }
            ClosureMode::IdealClosure => {
                let mut triples = Vec::new();
                for u in &pending {
                    for (i, a) in basis.iter().enumerate() {
                        for b in &basis[i + 1..] {
                            triples.push((u.clone(), a.clone(), b.clone()));
                        }
                    }
                }
                let (inside, escaped) = bracket_all(spec, triples, window)?;
                let mut next = prev.clone();
                pending.clear();
                for v in inside {
                    if next.insert(&v)? {
                        pending.push(v);
                    }
                }
                (next, escaped)
            }
        };
        let stable = next == prev;
        chain.steps.push(next);
        chain.escapes.push(escaped);
        if stable {
            chain.stabilized_at = Some(step);
            break;
        }
    }
    Ok(chain)
}

/// Closure of `seed` as a report. Under the Omega bracket an ideal closure
/// that stops short of the full window fails, since the algebra is simple.
pub fn closure_report(
    spec: &TriBracketSpec,
    seed: &[Element],
    window: &Window,
    mode: ClosureMode,
    depth: usize,
) -> Result<VerdictReport, Error> {
    let chain = span_close(spec, seed, window, mode, depth)?;
    Ok(chain_report(spec, seed, window, depth, &chain))
}

fn chain_report(spec: &TriBracketSpec, seed: &[Element], window: &Window, depth: usize, chain: &ClosureChain) -> VerdictReport {
    let mode = chain.mode;
    let seeds: Vec<String> = seed.iter().map(ToString::to_string).collect();
    let mut report = VerdictReport::new(mode.to_string())
        .param("bracket", spec)
        .param(
            "seed",
            if seeds.len() > 4 {
                format!("{} elements", seeds.len())
            } else if seeds.is_empty() {
                "-".into()
            } else {
                seeds.join("; ")
            },
        )
        .param("window", window)
        .param("depth", depth);
    report.stat("dims", chain.steps.iter().map(|s| s.dim().to_string()).collect::<Vec<_>>().join(","));
    report.stat(
        "boundary_discounted_dims",
        (0..chain.steps.len()).map(|i| chain.boundary_discounted(i).dim().to_string()).collect::<Vec<_>>().join(","),
    );
    report.stat("escapes", chain.escape_count());
    report.stat("stabilized_at", chain.stabilized_at.map_or("no".into(), |s| s.to_string()));
    let last = chain.last();
    report.stat("final_dim", last.dim());
    report.stat("final", if *last == WindowSubspace::full(*window) { "full".to_string() } else { last.to_string() });
    if mode == ClosureMode::IdealClosure
        && *spec == TriBracketSpec::Omega
        && !chain.last().is_zero()
        && chain.last() != &WindowSubspace::full(*window)
    {
        report.fail(format!("ideal closure has dimension {} < {}", chain.last().dim(), window.dim()));
    }
    if chain.stabilized_at.is_none() {
        report.note(format!("not stable after {depth} steps"));
    }
    report
}

/// Ideal closure of every single window basis vector under the Omega bracket.
pub fn simplicity_sweep(window: &Window, depth: usize) -> Result<VerdictReport, Error> {
    let mut report =
        VerdictReport::new("ideal-closure").param("bracket", TriBracketSpec::Omega).param("window", window).param("depth", depth);
    let full = WindowSubspace::full(*window);
    let results: Vec<Result<(Basis, usize), Error>> = window
        .basis()
        .into_par_iter()
        .map(|b| Ok((b, span_close(&TriBracketSpec::Omega, &[Element::basis(b)], window, ClosureMode::IdealClosure, depth)?.last().dim())))
        .collect();
    for r in results {
        let (b, dim) = r?;
        if dim != full.dim() {
            report.fail(format!("ideal generated by {b} has dimension {dim} < {}", full.dim()));
        }
    }
    report.stat("seeds", window.dim());
    Ok(report)
}

/// Derived series from the whole window, with `A^1` compared to `span{L}`
/// under the FK bracket.
pub fn derived_series_report(spec: &TriBracketSpec, window: &Window, depth: usize) -> Result<VerdictReport, Error> {
    let all: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let chain = span_close(spec, &all, window, ClosureMode::DerivedSeries, depth)?;
    let mut report = chain_report(spec, &all, window, depth, &chain);
    if let TriBracketSpec::Fk { .. } = spec {
        let ls = WindowSubspace::coordinate_span(*window, |b| b.family == crate::algebra::Family::L);
        for (i, step) in chain.steps.iter().enumerate().skip(1) {
            if *step != ls {
                report.fail(format!("derived step {i} is {step}, expected the span of L"));
            }
        }
        report.stat("solvable_on_window", if chain.last().is_zero() { "yes" } else { "no" });
    }
    Ok(report)
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::FunctionalSpec;
    use crate::testing::element;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn ideal_closure_is_monotone_and_bracket_stable(seed in element(2, 3), fk in any::<bool>()) {
            let w = Window::symmetric(2);
            let spec = if fk { TriBracketSpec::fk(0, FunctionalSpec::default()) } else { TriBracketSpec::Omega };
            let chain = span_close(&spec, std::slice::from_ref(&seed), &w, ClosureMode::IdealClosure, 16).unwrap();
            for pair in chain.steps.windows(2) {
                prop_assert!(pair[0].is_subspace_of(&pair[1]));
            }
            prop_assert!(chain.stabilized_at.is_some());
            let last = chain.last();
            let basis: Vec<Element> = w.basis().into_iter().map(Element::basis).collect();
            for u in last.basis_elements() {
                for a in &basis {
                    for b in &basis {
                        let v = tri_bracket(&spec, &u, a, b).unwrap();
                        if v.is_supported_in(&w) {
                            prop_assert!(last.contains(&v));
                        }
                    }
                }
            }
        }

        #[test]
        fn lower_central_steps_shrink(fk in any::<bool>()) {
            let w = Window::symmetric(2);
            let spec = if fk { TriBracketSpec::fk(1, FunctionalSpec::default()) } else { TriBracketSpec::Omega };
            let all: Vec<Element> = w.basis().into_iter().map(Element::basis).collect();
            let chain = span_close(&spec, &all, &w, ClosureMode::LowerCentral, 8).unwrap();
            for pair in chain.steps.windows(2) {
                prop_assert!(pair[1].is_subspace_of(&pair[0]));
            }
        }
    }
}
