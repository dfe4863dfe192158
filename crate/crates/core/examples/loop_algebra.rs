//! The inner derivation algebra of the Omega bracket against `sl2` over Laurent polynomials.

use trilie::operators::loop_algebra::verify_sl2_laurent;
use trilie::Window;

fn main() -> Result<(), trilie::Error> {
    print!("{}", verify_sl2_laurent(&Window::symmetric(3))?.to_text());
    Ok(())
}
