//! Inner derivations as operators: generators, commutators and the tables.

use trilie::operators::generators::{make_generator, GeneratorId, GeneratorTag};
use trilie::operators::tables::verify_generator_table;
use trilie::operators::{op_apply, op_commutator};
use trilie::{Element, Window};

fn main() -> Result<(), trilie::Error> {
    let p2 = make_generator(&GeneratorId::omega(GeneratorTag::P(2)))?;
    let q1 = make_generator(&GeneratorId::omega(GeneratorTag::Q(1)))?;
    let z0 = make_generator(&GeneratorId::omega(GeneratorTag::Z(0)))?;
    println!("p(2) = {p2}");
    println!("p(2) L3 = {}", op_apply(&p2, &Element::l(3))?);
    println!("z(0) L1 = {}", op_apply(&z0, &Element::l(1))?);

    let bracket = op_commutator(&p2, &q1)?;
    let q3 = make_generator(&GeneratorId::omega(GeneratorTag::Q(3)))?;
    println!("[p(2), q(1)] = {bracket}");
    println!("equals -q(3): {:?}", bracket.equals(&q3.scale(&(-trilie::rational::one())), &Window::symmetric(6))?);

    print!("{}", verify_generator_table(&Window::symmetric(3))?.to_text());
    Ok(())
}
