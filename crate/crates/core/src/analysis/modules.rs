//! Module identities for the adjoint representation and the Witt-module
//! structure of the `q`, `x` and `z` families.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::Element;
use crate::brackets::{tri_bracket, TriBracketSpec};
use crate::error::Error;
use crate::operators::{make_generator, op_commutator, Decision, GeneratorId, GeneratorTag, Operator};
use crate::rational::int;
use crate::report::VerdictReport;
use crate::sampling::ElementSampler;
use crate::window::Window;

use super::invariant::{adjoint_module_action, invariant_subspace_search, Irreducibility};

/// `rho(x1,x2,x3; y) v` residual of
/// `rho([x1,x2,x3], y) = rho(x3,x1)rho(x2,y) + rho(x2,x3)rho(x1,y) + rho(x1,x2)rho(x3,y)`
/// with `rho = ad`.
pub fn first_identity_residual(spec: &TriBracketSpec, x: [&Element; 3], y: &Element, v: &Element) -> Result<Element, Error> {
    let br = |a: &Element, b: &Element, c: &Element| tri_bracket(spec, a, b, c);
    let [x1, x2, x3] = x;
    let mut residual = br(&br(x1, x2, x3)?, y, v)?;
    for (a, b, c) in [(x3, x1, x2), (x2, x3, x1), (x1, x2, x3)] {
        residual.add_scaled(&br(a, b, &br(c, y, v)?)?, &int(-1));
    }
    Ok(residual)
}

/// Residual of `[rho(x1,x2), rho(y1,y)] = rho([x1,x2,y1], y) + rho(y1, [x1,x2,y])` applied to `v`.
pub fn second_identity_residual(spec: &TriBracketSpec, x: [&Element; 2], y: [&Element; 2], v: &Element) -> Result<Element, Error> {
    let br = |a: &Element, b: &Element, c: &Element| tri_bracket(spec, a, b, c);
    let ([x1, x2], [y1, y2]) = (x, y);
    let mut residual = br(x1, x2, &br(y1, y2, v)?)?;
    residual.add_scaled(&br(y1, y2, &br(x1, x2, v)?)?, &int(-1));
    residual.add_scaled(&br(&br(x1, x2, y1)?, y2, v)?, &int(-1));
    residual.add_scaled(&br(y1, &br(x1, x2, y2)?, v)?, &int(-1));
    Ok(residual)
}

/// Both module identities for `(A, ad)` on basis tuples of the window (up
/// to the alternating symmetries of each identity) and on `samples` seeded
/// random tuples. The second identity is read in the standard commutator
/// form.
pub fn module_axiom_check(spec: &TriBracketSpec, window: &Window, samples: usize, seed: u64) -> Result<VerdictReport, Error> {
    let mut report = VerdictReport::new("module-axioms")
        .param("bracket", spec.name())
        .param("window", window)
        .param("samples", samples)
        .param("seed", seed);
    report.note("second identity read as [rho(x1,x2), rho(y1,y)] = rho([x1,x2,y1], y) + rho(y1, [x1,x2,y])");
    let basis: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let n = basis.len();

    let first: Vec<Result<Vec<String>, Error>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for j in i + 1..n {
                for l in j + 1..n {
                    for y in &basis {
                        for v in &basis {
                            let r = first_identity_residual(spec, [&basis[i], &basis[j], &basis[l]], y, v)?;
                            if !r.is_zero() {
                                bad.push(format!("first identity ({}, {}, {}; {y}) on {v}: residual {r}", basis[i], basis[j], basis[l]));
                            }
                        }
                    }
                }
            }
            Ok(bad)
        })
        .collect();
    let second: Vec<Result<Vec<String>, Error>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut bad = Vec::new();
            for j in i + 1..n {
                for a in 0..n {
                    for b in a + 1..n {
                        for v in &basis {
                            let r = second_identity_residual(spec, [&basis[i], &basis[j]], [&basis[a], &basis[b]], v)?;
                            if !r.is_zero() {
                                bad.push(format!(
                                    "second identity ({}, {}; {}, {}) on {v}: residual {r}",
                                    basis[i], basis[j], basis[a], basis[b]
                                ));
                            }
                        }
                    }
                }
            }
            Ok(bad)
        })
        .collect();
    let mut tuples = 0usize;
    for (name, results) in [("first", first), ("second", second)] {
        let mut failures = 0usize;
        for bad in results {
            let bad = bad?;
            failures += bad.len();
            for cex in bad {
                report.fail(cex);
            }
        }
        report.stat(&format!("{name}_identity_failures"), failures);
    }
    if n >= 3 {
        tuples += n * (n - 1) * (n - 2) / 6 * n * n;
    }
    if n >= 2 {
        tuples += (n * (n - 1) / 2).pow(2) * n;
    }
    report.stat("basis_tuples", tuples);

    let mut sampler = ElementSampler::new(seed, *window);
    for _ in 0..if window.is_empty() { 0 } else { samples } {
        let e: Vec<Element> = (0..5).map(|_| sampler.element()).collect();
        let r1 = first_identity_residual(spec, [&e[0], &e[1], &e[2]], &e[3], &e[4])?;
        if !r1.is_zero() {
            report.fail(format!("first identity on random tuple ({}, {}, {}; {}) on {}: residual {r1}", e[0], e[1], e[2], e[3], e[4]));
        }
        let r2 = second_identity_residual(spec, [&e[0], &e[1]], [&e[2], &e[3]], &e[4])?;
        if !r2.is_zero() {
            report.fail(format!("second identity on random tuple ({}, {}; {}, {}) on {}: residual {r2}", e[0], e[1], e[2], e[3], e[4]));
        }
    }
    report.stat("random_tuples", samples);
    Ok(report)
}

pub fn witt_family(i: u8) -> Result<fn(i64) -> GeneratorTag, Error> {
    match i {
        1 => Ok(GeneratorTag::Q),
        2 => Ok(GeneratorTag::SmallX),
        3 => Ok(GeneratorTag::Z),
        _ => Err(Error::Argument(format!("module index must be 1, 2 or 3, got {i}"))),
    }
}

/// Witt-module structure of `V_i` (spanned by `q`, `x` or `z` for
/// `i = 1, 2, 3`) under the `p` family, for indices in `[-n, n]` where `n`
/// is the window bound.
pub fn witt_module_check(i: u8, window: &Window) -> Result<VerdictReport, Error> {
    let family = witt_family(i)?;
    let n = window.bound();
    let mut report = VerdictReport::new("witt-module").param("module", i).param("window", window).param("bound", n);
    let gen = |tag| make_generator(&GeneratorId::omega(tag));
    let p: Vec<(i64, Operator)> = (-n..=n).map(|r| Ok((r, gen(GeneratorTag::P(r))?))).collect::<Result<_, Error>>()?;
    let g_ext: Vec<(GeneratorTag, Operator)> = (-2 * n..=2 * n).map(|s| Ok((family(s), gen(family(s))?))).collect::<Result<_, Error>>()?;
    let g_of = |s: i64| &g_ext[(s + 2 * n) as usize].1;

    let mut action_failures = 0usize;
    let mut regular_mismatches = 0usize;
    for (r, pr) in &p {
        for s in -n..=n {
            let lhs = op_commutator(pr, g_of(s))?;
            let rhs = g_of(r + s).scale(&int(-s));
            let (equal, decision) = lhs.equals(&rhs, window)?;
            if decision == Decision::WindowDecided {
                report.bump("window_decided");
            }
            if !equal {
                action_failures += 1;
                report.fail(format!("[p_{r}, {}]: expected {rhs}, got {lhs}", family(s)));
            }
            if lhs != g_of(r + s).scale(&int(r - s)) {
                regular_mismatches += 1;
            }
        }
    }
    report.stat("action_pairs", (2 * n + 1).pow(2));
    report.stat("action_failures", action_failures);

    let mut weights = std::collections::BTreeMap::new();
    for s in -n..=n {
        let image = op_commutator(&p[n as usize].1, g_of(s))?;
        if image != g_of(s).scale(&int(-s)) {
            report.fail(format!("{} is not a p_0 eigenvector", family(s)));
        }
        if let Some(prev) = weights.insert(-s, family(s)) {
            report.fail(format!("weight {} shared by {prev} and {}", -s, family(s)));
        }
    }
    report.stat("weight_spaces", weights.len());
    report.stat("max_weight_dim", if weights.is_empty() { 0 } else { 1 });

    let acting: Vec<(String, Operator)> = p.iter().map(|(r, op)| (format!("p_{r}"), op.clone())).collect();
    let inner = &g_ext[n as usize..=(3 * n) as usize];
    let action = adjoint_module_action(&acting, inner, &g_ext, window)?;
    for nc in &action.not_closed {
        report.fail(format!("not closed: {nc}"));
    }
    let search = invariant_subspace_search(&action);
    report.stat("invariant_search_method", &search.method);
    match &search.verdict {
        Irreducibility::Irreducible => report.stat("irreducible_on_window", "yes"),
        Irreducibility::Inconclusive => report.stat("irreducible_on_window", "inconclusive"),
        Irreducibility::Reducible(rows) => {
            report.stat("irreducible_on_window", "no");
            let span: Vec<String> = rows
                .iter()
                .map(|row| {
                    let terms: Vec<String> = row
                        .iter()
                        .zip(&action.basis_labels)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
                        .collect();
                    terms.join(" + ")
                })
                .collect();
            report.fail(format!("proper invariant subspace span{{{}}}", span.join(", ")));
        }
    }
    if regular_mismatches > 0 {
        let g = ["q", "x", "z"][i as usize - 1];
        report.flag(format!(
            "p_r -> {g}_r does not intertwine the adjoint action with this one: [p_r, p_s] = (r-s) p_(r+s) but [p_r, {g}_s] = -s {g}_(r+s); {regular_mismatches} pairs differ"
        ));
    }
    Ok(report)
}
