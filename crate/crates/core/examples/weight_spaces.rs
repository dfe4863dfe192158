//! Weight decompositions of the regular and natural modules.

use trilie::analysis::weights::{default_cartan, natural_module_report, weight_decompose, weight_report, zero_weight_growth};
use trilie::{FunctionalSpec, TriBracketSpec, Window};

fn main() -> Result<(), trilie::Error> {
    let window = Window::symmetric(3);
    let omega = TriBracketSpec::Omega;
    let d = weight_decompose(&omega, &default_cartan(&omega, &window), &window)?;
    println!("omega: {} weight spaces, max dim {}", d.spaces.len(), d.max_dim());

    let fk = TriBracketSpec::fk(1, FunctionalSpec::default());
    println!("fk zero-weight growth: {:?}", zero_weight_growth(&fk, &default_cartan(&fk, &window), &[2, 3, 4])?);

    print!("{}", weight_report(&omega, &window)?.to_text());
    print!("{}", natural_module_report(&window)?.to_text());
    Ok(())
}
