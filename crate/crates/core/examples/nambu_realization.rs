//! Realizing the brackets as Nambu brackets of functions of `(x, y, z)`.

use trilie::nambu::{check_injectivity, check_realization, nambu_bracket, RealizationMap};
use trilie::{Element, FunctionalSpec, TriBracketSpec, Window};

fn main() -> Result<(), trilie::Error> {
    let window = Window::symmetric(2);
    let omega = RealizationMap::Omega;
    let (a, b, c) = (Element::l(1), Element::l(2), Element::m(0));
    let image = nambu_bracket(&omega.apply(&a), &omega.apply(&b), &omega.apply(&c));
    println!("{{phi(L1), phi(L2), phi(M0)}} = {image}");

    let f = FunctionalSpec::default();
    let fk = RealizationMap::Fk { k: 1, f: f.clone() };
    let printed = RealizationMap::FkPrinted { k: 1, f: f.clone() };
    for (map, spec) in [(&omega, TriBracketSpec::Omega), (&fk, TriBracketSpec::fk(1, f.clone())), (&printed, TriBracketSpec::fk(1, f))] {
        let report = check_realization(map, &spec, &window)?;
        println!("{map}: {:?}", report.status);
    }
    print!("{}", check_injectivity(&omega, &window).to_text());
    Ok(())
}
