//! Module axioms for the adjoint action and the Witt modules built from `q`, `x`, `z`.

use trilie::analysis::modules::{module_axiom_check, witt_module_check};
use trilie::{FunctionalSpec, TriBracketSpec, Window};

fn main() -> Result<(), trilie::Error> {
    let window = Window::symmetric(2);
    print!("{}", module_axiom_check(&TriBracketSpec::Omega, &window, 20, 1)?.to_text());
    print!("{}", module_axiom_check(&TriBracketSpec::fk(2, FunctionalSpec::default()), &window, 20, 1)?.to_text());
    for i in 1..=3 {
        print!("{}", witt_module_check(i, &Window::symmetric(3))?.to_text());
    }
    Ok(())
}
