//! Derived series, ideal closure and the hypo-nilpotent ideal.

use trilie::analysis::closure::{closure_report, derived_series_report, simplicity_sweep, ClosureMode};
use trilie::analysis::ideal::ideal_check;
use trilie::analysis::WindowSubspace;
use trilie::{Element, Family, FunctionalSpec, TriBracketSpec, Window};

fn main() -> Result<(), trilie::Error> {
    let window = Window::symmetric(3);
    let fk = TriBracketSpec::fk(0, FunctionalSpec::default());

    print!("{}", derived_series_report(&fk, &window, 8)?.to_text());
    print!(
        "{}",
        closure_report(&TriBracketSpec::Omega, &[&Element::l(2) - &Element::m(-1)], &window, ClosureMode::IdealClosure, 8)?.to_text()
    );
    print!("{}", simplicity_sweep(&Window::symmetric(2), 8)?.to_text());

    let ls = WindowSubspace::coordinate_span(window, |b| b.family == Family::L);
    let (verdict, report) = ideal_check(&fk, &ls, &window, 8, 3)?;
    print!("{}", report.to_text());
    println!("hypo-nilpotent: {}", verdict.hypo_nilpotent);
    Ok(())
}
