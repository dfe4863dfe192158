//! Products, derivations and the involution on `A`.

use trilie::algebra::{check_structure_maps, deriv_delta, deriv_dk, elem_mul, involution_omega};
use trilie::cli::parse::parse_element;
use trilie::Window;

fn main() -> Result<(), trilie::Error> {
    let u = parse_element("L[2] - 3*M[1]")?;
    let v = parse_element("1/2*L[-1] + M[4]")?;
    println!("u = {u}");
    println!("v = {v}");
    println!("uv = {}", elem_mul(&u, &v));
    println!("d_1(u) = {}", deriv_dk(1, &u));
    println!("delta(u) = {}", deriv_delta(&u));
    println!("omega(u) = {}", involution_omega(&u));

    let report = check_structure_maps(&Window::symmetric(4), 1);
    print!("{}", report.to_text());
    Ok(())
}
