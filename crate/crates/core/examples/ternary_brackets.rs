//! The two 3-Lie brackets, alternation and the fundamental identity.

use trilie::brackets::{check_fundamental_identity, fundamental_residual, tri_bracket};
use trilie::{Element, FunctionalSpec, TriBracketSpec, Window};

fn main() -> Result<(), trilie::Error> {
    let omega = TriBracketSpec::Omega;
    let fk = TriBracketSpec::fk(1, "poly:t^2+1".parse::<FunctionalSpec>()?);
    let (a, b, c) = (Element::l(1), Element::l(3), Element::m(-2));

    for spec in [&omega, &fk] {
        println!("{spec}");
        println!("  [L1, L3, M-2] = {}", tri_bracket(spec, &a, &b, &c)?);
        println!("  [L3, L1, M-2] = {}", tri_bracket(spec, &b, &a, &c)?);
        println!("  [L1, M-2, L3] = {}", tri_bracket(spec, &a, &c, &b)?);
        let u = [&a, &b, &c];
        let residual = fundamental_residual(spec, u, &Element::m(0), &Element::l(-1))?;
        println!("  fundamental identity residual = {residual}");
    }

    let report = check_fundamental_identity(&fk, &Window::symmetric(2), 50, 7)?;
    print!("{}", report.to_text());
    Ok(())
}
