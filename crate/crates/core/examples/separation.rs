//! Pulling single basis vectors out of an element with `ad(L_r, M_r)`.

use trilie::analysis::vandermonde::{dominating_index, vandermonde_extract, vandermonde_report};
use trilie::cli::parse::parse_element;
use trilie::{TriBracketSpec, Window};

fn main() -> Result<(), trilie::Error> {
    let u = parse_element("2*L[1] - M[2] + 5*L[-3]")?;
    let r = dominating_index(&u);
    for b in vandermonde_extract(&TriBracketSpec::Omega, &u, r, u.len() - 1)? {
        println!("extracted {b}");
    }
    print!("{}", vandermonde_report(&u, &Window::symmetric(4))?.to_text());
    Ok(())
}
