//! Ideal, subalgebra and nilpotency checks for a candidate subspace.

use rayon::prelude::*;

use crate::algebra::Element;
use crate::brackets::{tri_bracket, TriBracketSpec};
use crate::error::Error;
use crate::report::VerdictReport;
use crate::sampling::ElementSampler;
use crate::window::Window;

use super::closure::{span_close, ClosureMode};
use super::WindowSubspace;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdealVerdict {
    pub is_ideal: bool,
    pub is_subalgebra: bool,
    pub is_abelian: bool,
    pub nilpotent_as_algebra: bool,
    pub nilpotent_as_ideal: bool,
    pub minimal_on_window: bool,
    pub hypo_nilpotent: bool,
    /// Bracket values leaving the window, whose membership is undecided.
    pub boundary_undecided: usize,
}

/// `[C, C, C]` chain inside the candidate: `C^(s+1) = [C^s, C, C]`.
fn own_lower_central(spec: &TriBracketSpec, candidate: &WindowSubspace, depth: usize) -> Result<Vec<WindowSubspace>, Error> {
    let window = candidate.window();
    let gens = candidate.basis_elements();
    let mut chain = vec![candidate.clone()];
    for _ in 0..depth {
        let prev = chain.last().expect("nonempty").basis_elements();
        let values: Vec<Element> = prev
            .par_iter()
            .map(|u| {
                let mut out = Vec::new();
                for (i, a) in gens.iter().enumerate() {
                    for b in &gens[i + 1..] {
                        out.push(tri_bracket(spec, u, a, b)?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<Vec<Element>>, Error>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut next = WindowSubspace::zero(window);
        for v in values.iter().filter(|v| v.is_supported_in(&window)) {
            next.insert(v)?;
        }
        let done = next.is_zero() || &next == chain.last().expect("nonempty");
        chain.push(next);
        if done {
            break;
        }
    }
    Ok(chain)
}

pub fn ideal_check(
    spec: &TriBracketSpec,
    candidate: &WindowSubspace,
    window: &Window,
    depth: usize,
    seed: u64,
) -> Result<(IdealVerdict, VerdictReport), Error> {
    let mut report = VerdictReport::new("ideal-closure").param("bracket", spec).param("candidate", candidate).param("window", window);
    let mut verdict = IdealVerdict::default();
    let gens = candidate.basis_elements();
    let basis: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();

    // [C, A, A] within C
    let mut ideal_violations = Vec::new();
    for u in &gens {
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                let v = tri_bracket(spec, u, a, b)?;
                if v.is_zero() {
                    continue;
                }
                if !v.is_supported_in(window) {
                    verdict.boundary_undecided += 1;
                } else if !candidate.contains(&v) {
                    ideal_violations.push(format!("[{u}, {a}, {b}] = {v} is not in the candidate"));
                }
            }
        }
    }
    verdict.is_ideal = ideal_violations.is_empty();
    report.stat("ideal_violations", ideal_violations.len());
    for v in ideal_violations.iter().take(5) {
        report.note(v.clone());
    }
    report.stat("boundary_undecided", verdict.boundary_undecided);

    // [C, C, C]
    let own = own_lower_central(spec, candidate, depth)?;
    let own_bracket = own.get(1).cloned().unwrap_or_else(|| WindowSubspace::zero(*window));
    verdict.is_subalgebra = own_bracket.is_subspace_of(candidate);
    verdict.is_abelian = own_bracket.is_zero();
    verdict.nilpotent_as_algebra = own.last().is_some_and(WindowSubspace::is_zero);
    report.stat("own_chain_dims", own.iter().map(|s| s.dim().to_string()).collect::<Vec<_>>().join(","));

    if verdict.is_ideal {
        let lower = span_close(spec, &gens, window, ClosureMode::LowerCentral, depth)?;
        verdict.nilpotent_as_ideal = lower.last().is_zero();
        report.stat("ideal_chain_dims", lower.steps.iter().map(|s| s.dim().to_string()).collect::<Vec<_>>().join(","));

        // Minimality evidence: the ideal generated by any single candidate vector is the candidate.
        // Random probes combine candidate vectors supported in the middle half of the window,
        // so that some brackets of every probe stay inside it.
        let mut probes = gens.clone();
        let mut sampler = ElementSampler::new(seed, *window);
        let inner = Window::new(window.lo() / 2, window.hi() / 2).unwrap_or_else(|_| Window::empty());
        let inner_gens: Vec<&Element> = gens.iter().filter(|g| g.is_supported_in(&inner)).collect();
        for _ in 0..if inner_gens.len() > 1 { 5 } else { 0 } {
            let coords: Vec<Element> = inner_gens.iter().map(|g| g.scale(&sampler.coefficient())).collect();
            let combo = coords.iter().fold(Element::zero(), |acc, e| &acc + e);
            if !combo.is_zero() {
                probes.push(combo);
            }
        }
        let mut minimal = !candidate.is_zero();
        for p in &probes {
            let closure = span_close(spec, std::slice::from_ref(p), window, ClosureMode::IdealClosure, depth)?;
            if closure.last() != candidate {
                minimal = false;
                report.note(format!("ideal generated by {p} has dimension {}", closure.last().dim()));
            }
        }
        verdict.minimal_on_window = minimal;
        report.stat("minimality_probes", probes.len());
    }
    verdict.hypo_nilpotent = verdict.is_ideal && verdict.nilpotent_as_algebra && !verdict.nilpotent_as_ideal;
    for (key, value) in [
        ("is_ideal", verdict.is_ideal),
        ("is_subalgebra", verdict.is_subalgebra),
        ("is_abelian", verdict.is_abelian),
        ("nilpotent_as_algebra", verdict.nilpotent_as_algebra),
        ("nilpotent_as_ideal", verdict.nilpotent_as_ideal),
        ("minimal_on_window", verdict.minimal_on_window),
        ("hypo_nilpotent", verdict.hypo_nilpotent),
    ] {
        report.stat(key, if value { "yes" } else { "no" });
    }
    if verdict.boundary_undecided > 0 {
        report.note(format!("{} bracket values left the window and were not tested", verdict.boundary_undecided));
    }
    Ok((verdict, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Family, FunctionalSpec};

    #[test]
    fn fk_l_span_is_hypo_nilpotent() {
        let w = Window::symmetric(3);
        let spec = TriBracketSpec::fk(0, FunctionalSpec::default());
        let ls = WindowSubspace::coordinate_span(w, |b| b.family == Family::L);
        let (v, _) = ideal_check(&spec, &ls, &w, 8, 1).unwrap();
        assert!(v.is_ideal && v.nilpotent_as_algebra && !v.nilpotent_as_ideal && v.minimal_on_window && v.hypo_nilpotent);
        let ms = WindowSubspace::coordinate_span(w, |b| b.family == Family::M);
        let (v, _) = ideal_check(&spec, &ms, &w, 8, 1).unwrap();
        assert!(v.is_subalgebra && v.is_abelian);
    }

    #[test]
    fn omega_l0_is_not_an_ideal() {
        let w = Window::symmetric(3);
        let c = WindowSubspace::from_elements(w, &[Element::l(0)]).unwrap();
        let (v, _) = ideal_check(&TriBracketSpec::Omega, &c, &w, 8, 1).unwrap();
        assert!(!v.is_ideal);
    }
}
