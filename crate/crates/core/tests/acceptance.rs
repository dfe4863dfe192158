//! Acceptance suite: one line per criterion, exact tolerances throughout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_traits::One;
use trilie::algebra::{check_structure_maps, Basis, Element, Family, FunctionalSpec};
use trilie::analysis::closure::{simplicity_sweep, span_close, ClosureMode, DEFAULT_DEPTH};
use trilie::analysis::ideal::ideal_check;
use trilie::analysis::modules::witt_module_check;
use trilie::analysis::vandermonde::{dominating_index, vandermonde_extract};
use trilie::analysis::weights::{natural_module_report, weight_report};
use trilie::analysis::WindowSubspace;
use trilie::brackets::{check_anticommutativity, check_constructor_agreement, check_fundamental_identity, tri_bracket, LieBracketSpec};
use trilie::cli::{execute, Cli};
use trilie::nambu::{check_injectivity, check_realization, nambu_bracket, RealizationMap, SymFunction};
use trilie::operators::fk::verify_fk_structure;
use trilie::operators::loop_algebra::verify_sl2_laurent;
use trilie::operators::tables::{verify_basis_independence, verify_generator_table};
use trilie::operators::AlgebraKind;
use trilie::rational::{int, rat};
use trilie::sampling::ElementSampler;
use trilie::{Rational, TriBracketSpec, VerdictReport, Window};

use clap::Parser;

type Outcome = Result<String, String>;

fn w(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn require(report: &VerdictReport) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(format!("{} failed: {}", report.check, report.counterexamples.first().cloned().unwrap_or_default()))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: trilie::Error) -> String {
    e.to_string()
}

fn betas() -> Vec<FunctionalSpec> {
    vec![FunctionalSpec::default(), "poly:t".parse().unwrap(), "support:0=1,2=-1/3,-1=5".parse().unwrap()]
}

fn fundamental_identity() -> Outcome {
    let window = w(-3, 3);
    let mut tuples = 0;
    for spec in [TriBracketSpec::Omega, TriBracketSpec::fk(1, FunctionalSpec::default()), TriBracketSpec::fk(0, "poly:t".parse().unwrap())]
    {
        let r = check_fundamental_identity(&spec, &window, 100, 2024).map_err(err)?;
        require(&r)?;
        tuples += r.stats["basis_tuples"].parse::<usize>().unwrap() + 100;
    }
    Ok(format!("zero residual on {tuples} basis and random 5-tuples (omega, fk k=1 const, fk k=0 poly)"))
}

fn anticommutativity() -> Outcome {
    let window = w(-4, 4);
    for spec in [TriBracketSpec::Omega, TriBracketSpec::fk(1, FunctionalSpec::default())] {
        require(&check_anticommutativity(&spec, &window).map_err(err)?)?;
    }
    Ok(format!("6 permutations x {} basis triples, both brackets", window.dim().pow(3)))
}

/// `[L_r, L_s, M_t] = beta_t (r-s) L_{r+s+k}`, zero on other family patterns.
fn fk_oracle(k: i64, f: &FunctionalSpec, a: Basis, b: Basis, c: Basis) -> Element {
    let args = [a, b, c];
    let ls: Vec<usize> = (0..3).filter(|i| args[*i].family == Family::L).collect();
    if ls.len() != 2 {
        return Element::zero();
    }
    let m = (0..3).find(|i| !ls.contains(i)).unwrap();
    let sign = if m == 1 { -1 } else { 1 };
    let (r, s, t) = (args[ls[0]].index, args[ls[1]].index, args[m].index);
    Element::term(Basis::l(r + s + k), f.beta(t) * int(sign * (r - s)))
}

/// `[L_r, L_s, M_t] = (s-r) L_{r+s-t}`, `[L_r, M_s, M_t] = (t-s) M_{s+t-r}`.
fn omega_oracle(a: Basis, b: Basis, c: Basis) -> Element {
    let args = [a, b, c];
    let ls: Vec<usize> = (0..3).filter(|i| args[*i].family == Family::L).collect();
    match ls.len() {
        2 => {
            let m = (0..3).find(|i| !ls.contains(i)).unwrap();
            let sign = if m == 1 { -1 } else { 1 };
            let (r, s, t) = (args[ls[0]].index, args[ls[1]].index, args[m].index);
            Element::term(Basis::l(r + s - t), int(sign * (s - r)))
        }
        1 => {
            let l = ls[0];
            let ms: Vec<usize> = (0..3).filter(|i| *i != l).collect();
            let sign = if l == 1 { -1 } else { 1 };
            let (r, s, t) = (args[l].index, args[ms[0]].index, args[ms[1]].index);
            Element::term(Basis::m(s + t - r), int(sign * (t - s)))
        }
        _ => Element::zero(),
    }
}

fn constructor_agreement() -> Outcome {
    let window = w(-4, 4);
    let basis = window.basis();
    let mut compared = 0;
    for k in [-1, 0, 1, 2] {
        for f in betas() {
            require(&check_constructor_agreement(&window, k, &f).map_err(err)?)?;
            let functional = TriBracketSpec::from_functional(LieBracketSpec::DkInduced(k), f.clone(), &window).map_err(err)?;
            for &a in &basis {
                for &b in &basis {
                    for &c in &basis {
                        let got = tri_bracket(&functional, &a.into(), &b.into(), &c.into()).map_err(err)?;
                        let want = fk_oracle(k, &f, a, b, c);
                        ensure(got == want, || format!("functional route k={k} beta={f} ({a}, {b}, {c}): {got} vs oracle {want}"))?;
                        compared += 1;
                    }
                }
            }
        }
    }
    for &a in &basis {
        for &b in &basis {
            for &c in &basis {
                let got = tri_bracket(&TriBracketSpec::Determinant, &a.into(), &b.into(), &c.into()).map_err(err)?;
                let want = omega_oracle(a, b, c);
                ensure(got == want, || format!("determinant ({a}, {b}, {c}): {got} vs oracle {want}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} triples coefficient-exact against closed-form oracles, k in -1..2, three beta shapes"))
}

fn nambu_realization() -> Outcome {
    let window = w(-3, 3);
    let f = FunctionalSpec::default();
    let k = 1;
    require(&check_realization(&RealizationMap::Omega, &TriBracketSpec::Omega, &window).map_err(err)?)?;
    require(&check_realization(&RealizationMap::Fk { k, f: f.clone() }, &TriBracketSpec::fk(k, f.clone()), &window).map_err(err)?)?;

    let omega = RealizationMap::Omega;
    let fk = RealizationMap::Fk { k, f: f.clone() };
    let mono = |c: i64, y: u32, z: u32, freq: i64| SymFunction::monomial(int(c), y, z, freq);
    let mut classes = 0;
    for r in window.indices() {
        for s in window.indices() {
            for t in window.indices() {
                let (lr, ls, lt) = (omega.action(Basis::l(r)), omega.action(Basis::l(s)), omega.action(Basis::l(t)));
                let (ms, mt, mr) = (omega.action(Basis::m(s)), omega.action(Basis::m(t)), omega.action(Basis::m(r)));
                ensure(nambu_bracket(&lr, &ls, &lt).is_zero(), || format!("LLL ({r},{s},{t}) nonzero"))?;
                ensure(nambu_bracket(&mr, &ms, &mt).is_zero(), || format!("MMM ({r},{s},{t}) nonzero"))?;
                let llm = nambu_bracket(&lr, &ls, &mt);
                ensure(llm == mono(s - r, 0, 1, r + s - t), || format!("LLM ({r},{s},{t}): {llm}"))?;
                let lmm = nambu_bracket(&lr, &ms, &mt);
                ensure(lmm == mono(t - s, 1, 0, r - s - t), || format!("LMM ({r},{s},{t}): {lmm}"))?;
                let fk_llm = nambu_bracket(&fk.action(Basis::l(r)), &fk.action(Basis::l(s)), &fk.action(Basis::m(t)));
                let want = SymFunction::monomial(f.beta(t) * int(r - s), 0, 1, r + s + k);
                ensure(fk_llm == want, || format!("FK LLM ({r},{s},{t}): {fk_llm}"))?;
                classes += 5;
            }
        }
    }
    let inj_omega = check_injectivity(&omega, &window);
    let inj_fk = check_injectivity(&fk, &window);
    let m_count = window.len();
    ensure(inj_omega.stats["kernel_dim"] == "0", || format!("omega kernel {}", inj_omega.stats["kernel_dim"]))?;
    ensure(inj_fk.stats["kernel_dim"] == (m_count - 1).to_string(), || {
        format!("fk kernel {} != {}", inj_fk.stats["kernel_dim"], m_count - 1)
    })?;
    Ok(format!(
        "both maps exact homomorphisms on {} triples; {classes} determinant instances term-for-term; kernels 0 and {}",
        window.dim().pow(3),
        m_count - 1
    ))
}

fn structure_maps() -> Outcome {
    let window = w(-5, 5);
    for k in [-1, 0, 1, 2] {
        let r = check_structure_maps(&window, k);
        require(&r)?;
        ensure(r.status == trilie::Status::Flagged, || "omega^2 = omega statement not flagged".into())?;
        ensure(r.notes.iter().any(|n| n.contains("omega^2 = omega")), || "flag note missing".into())?;
    }
    Ok("Leibniz for d_k (k in -1..2) and delta, omega multiplicative, delta omega + omega delta = 0, omega^2 = id; omega^2 = omega flagged"
        .into())
}

type Gen = Box<dyn Fn(Basis) -> Element>;

fn pgen(r: i64) -> Gen {
    Box::new(move |b| match b.family {
        Family::L => Element::term(Basis::l(b.index + r), rat(r - 2 * b.index, 2)),
        Family::M => Element::term(Basis::m(b.index - r), rat(2 * b.index + r, 2)),
    })
}

fn qgen(r: i64) -> Gen {
    Box::new(move |b| match b.family {
        Family::L => Element::term(Basis::l(b.index + r), int(-1)),
        Family::M => Element::term(Basis::m(b.index - r), int(1)),
    })
}

fn xgen(r: i64) -> Gen {
    Box::new(move |b| match b.family {
        Family::L => Element::zero(),
        Family::M => Element::term(Basis::l(r - b.index), int(-1)),
    })
}

fn zgen(r: i64) -> Gen {
    Box::new(move |b| match b.family {
        Family::L => Element::term(Basis::m(-r - b.index), int(-1)),
        Family::M => Element::zero(),
    })
}

fn commutator_on(a: &Gen, b: &Gen, v: Basis) -> Element {
    &b(v).map_linear(a) - &a(v).map_linear(b)
}

fn table_relations() -> Outcome {
    let window = w(-5, 5);
    let report = verify_generator_table(&window).map_err(err)?;
    require(&report)?;
    ensure(report.stats.keys().filter(|k| k.starts_with("relation ")).count() == 10, || "expected 10 relations".into())?;
    // Independent oracle: composition of the closed-form generator actions on basis vectors.
    let n = 5;
    let probe = w(-12, 12).basis();
    let mut checked = 0;
    for r in -n..=n {
        for s in -n..=n {
            let cases: [(Gen, Gen, Gen, Rational); 4] = [
                (pgen(r), pgen(s), pgen(r + s), int(r - s)),
                (zgen(r), xgen(s), qgen(r + s), Rational::one()),
                (qgen(r), xgen(s), xgen(r + s), int(-2)),
                (qgen(r), zgen(s), zgen(r + s), int(2)),
            ];
            for (i, (a, b, rhs, c)) in cases.iter().enumerate() {
                for &v in &probe {
                    let lhs = commutator_on(a, b, v);
                    let want = rhs(v).scale(c);
                    ensure(lhs == want, || format!("relation {i} at r={r}, s={s} on {v}: {lhs} vs {want}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("10 relations exact for |r|,|s| <= 5; {checked} highlighted instances re-derived from generator actions"))
}

fn w_oracle(k: i64, f: &FunctionalSpec, s0: i64, r: i64) -> Gen {
    let f = f.clone();
    Box::new(move |b| match b.family {
        Family::L => Element::term(Basis::l(b.index + r + k), f.beta(s0) * int(b.index - r)),
        Family::M => Element::zero(),
    })
}

fn fk_structure() -> Outcome {
    let window = w(-5, 5);
    let f = FunctionalSpec::default();
    let mut detail = Vec::new();
    for k in [0, 1] {
        let report = verify_fk_structure(k, &f, 0, &window).map_err(err)?;
        require(&report)?;
        let irreducible = report.stats.get("x_irreducible_on_window").cloned().unwrap_or_default();
        ensure(irreducible == "yes", || format!("k={k}: invariant-subspace search verdict {irreducible}"))?;
        for r in -5..=5 {
            for s in -5..=5 {
                let (a, b, c) = (w_oracle(k, &f, 0, r), w_oracle(k, &f, 0, s), w_oracle(k, &f, 0, r + s + k));
                for v in w(-20, 20).basis() {
                    let lhs = commutator_on(&a, &b, v);
                    let want = c(v).scale(&(f.beta(0) * int(s - r)));
                    ensure(lhs == want, || format!("Witt relation k={k} r={r} s={s} on {v}"))?;
                }
            }
        }
        detail.push(format!("k={k}: X dim {} on window, irreducible", report.stats["x_window_dim"]));
    }
    Ok(format!("Witt relation, [X,X]=0 and W-on-X branches exact; {}", detail.join("; ")))
}

fn simplicity() -> Outcome {
    let window = w(-6, 6);
    require(&simplicity_sweep(&window, DEFAULT_DEPTH).map_err(err)?)?;
    let mut sampler = ElementSampler::new(20, window);
    for trial in 0..20 {
        let u = sampler.element_exact(4);
        let pure = vandermonde_extract(&TriBracketSpec::Omega, &u, dominating_index(&u), 3).map_err(err)?;
        let want: Vec<Element> = u.support().map(Element::basis).collect();
        ensure(pure == want, || format!("trial {trial}: {u} gave {pure:?}"))?;
    }
    Ok(format!("all {} single-basis seeds close to the full window; 20/20 Vandermonde extractions pure", window.dim()))
}

fn hypo_nilpotency() -> Outcome {
    let window = w(-5, 5);
    let spec = TriBracketSpec::fk(1, FunctionalSpec::default());
    let ls = WindowSubspace::coordinate_span(window, |b| b.family == Family::L);
    let all: Vec<Element> = window.basis().into_iter().map(Element::basis).collect();
    let chain = span_close(&spec, &all, &window, ClosureMode::DerivedSeries, 1).map_err(err)?;
    ensure(chain.steps[1] == ls, || format!("A^1 = {}", chain.steps[1]))?;
    let mut current = ls.clone();
    for s in 1..=8 {
        let next = span_close(&spec, &current.basis_elements(), &window, ClosureMode::DerivedSeries, 1).map_err(err)?;
        current = next.steps[1].clone();
        ensure(current == ls, || format!("A^({}) = {current}", s + 1))?;
    }
    let (v, report) = ideal_check(&spec, &ls, &window, DEFAULT_DEPTH, 9).map_err(err)?;
    require(&report)?;
    ensure(v.is_ideal && v.nilpotent_as_algebra && !v.nilpotent_as_ideal && v.minimal_on_window, || format!("{v:?}"))?;
    Ok("A^1 = span{L} = A^(s+1) for s = 1..8; span{L} ideal, nilpotent as algebra, not as ideal, minimal on window".into())
}

fn representations() -> Outcome {
    let omega = weight_report(&TriBracketSpec::Omega, &w(-6, 6)).map_err(err)?;
    require(&omega)?;
    ensure(omega.stats["max_dim"] == "2" && omega.stats["spaces"] == "13", || "omega weight spaces".into())?;
    let natural = natural_module_report(&w(-6, 6)).map_err(err)?;
    require(&natural)?;
    ensure(natural.stats["max_dim"] == "1" && natural.stats["spaces"] == "26", || "natural module spaces".into())?;
    let fk = weight_report(&TriBracketSpec::fk(1, FunctionalSpec::default()), &w(-5, 5)).map_err(err)?;
    require(&fk)?;
    Ok(format!(
        "omega: 13 spaces span{{L_t, M_-t}} of dim 2; natural: 26 spaces of dim 1; fk zero-weight dims {}",
        fk.stats["zero_weight_growth"]
    ))
}

fn toroidal() -> Outcome {
    require(&verify_sl2_laurent(&w(-5, 5)).map_err(err)?)?;
    let basis = verify_basis_independence(&AlgebraKind::Omega, &w(-4, 4), None).map_err(err)?;
    require(&basis)?;
    ensure(basis.stats["wxy_basis.rank"] == "36", || format!("rank {}", basis.stats["wxy_basis.rank"]))?;
    let mut failures = Vec::new();
    for i in 1..=3 {
        let r = witt_module_check(i, &w(-5, 5)).map_err(err)?;
        ensure(r.stats["action_failures"] == "0", || format!("V{i} action"))?;
        ensure(r.stats["max_weight_dim"] == "1", || format!("V{i} weight spaces"))?;
        if !r.passed() {
            failures.push(format!("V{i}: {}", r.counterexamples.join("; ")));
        }
    }
    ensure(failures.is_empty(), || {
        format!("sl2 convention and rank 36 pass, weight spaces one-dimensional, but window irreducibility fails: {}", failures.join(" | "))
    })?;
    Ok("sl2 convention resolved, rank 36, V1..V3 intermediate series and irreducible on window".into())
}

fn run_cli(args: &[&str]) -> (String, i32) {
    let cli = Cli::try_parse_from(std::iter::once("trilie").chain(args.iter().copied())).unwrap();
    execute(&cli)
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["verify", "fundamental-identity", "--window", "-2..2", "--samples", "30", "--seed", "11", "--format", "json"],
        &["verify", "vandermonde", "--window", "-4..4", "--seed", "5", "--format", "json"],
        &["verify", "module-axioms", "--window", "-1..1", "--samples", "10", "--seed", "3"],
        &["report", "--checks", "nambu-realization,ideal-closure,witt-module", "--window", "-2..2", "--samples", "5", "--format", "json"],
    ];
    let mut bytes = 0;
    for args in runs {
        let (a, code_a) = run_cli(args);
        let (b, code_b) = run_cli(args);
        ensure(a == b && code_a == code_b, || format!("output differs for {}", args.join(" ")))?;
        bytes += a.len();
    }
    Ok(format!("4 configurations rerun byte-identical ({bytes} bytes)"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("fundamental identity", "exact equality", fundamental_identity),
        ("anticommutativity", "exact equality", anticommutativity),
        ("constructor agreement", "exact equality", constructor_agreement),
        ("Nambu realization", "exact equality", nambu_realization),
        ("structure maps", "exact equality", structure_maps),
        ("p/q/x/z multiplication table", "exact operator equality", table_relations),
        ("FK inner derivations", "exact operator equality", fk_structure),
        ("simplicity evidence", "exact rank", simplicity),
        ("non-solvability and hypo-nilpotency", "exact rank", hypo_nilpotency),
        ("representations", "exact rank", representations),
        ("toroidal structure and W-modules", "exact rank", toroidal),
        ("determinism", "byte-identical", determinism),
    ];
    let mut failed = 0;
    for (i, (name, tolerance, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} [tolerance: {tolerance}] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [tolerance: {tolerance}] {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
