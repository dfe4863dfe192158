//! The W/X operator relations of the FK bracket and their independence from the chosen basis.

use trilie::operators::fk::verify_fk_structure;
use trilie::operators::generators::AlgebraKind;
use trilie::operators::tables::verify_basis_independence;
use trilie::{FunctionalSpec, Window};

fn main() -> Result<(), trilie::Error> {
    let window = Window::symmetric(3);
    let f: FunctionalSpec = "poly:t+3".parse()?;
    print!("{}", verify_fk_structure(1, &f, -2, &window)?.to_text());
    print!("{}", verify_basis_independence(&AlgebraKind::Fk { k: 1, f }, &window, Some(-2))?.to_text());
    Ok(())
}
