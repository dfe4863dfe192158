//! Centers of the binary brackets on a window.

use trilie::brackets::center_window;
use trilie::{LieBracketSpec, Window};

fn main() {
    let window = Window::symmetric(3);
    for spec in [LieBracketSpec::DkInduced(0), LieBracketSpec::DkInduced(1), LieBracketSpec::FixedThirdL(0)] {
        let c = center_window(spec, &window);
        println!("{spec}: center {} (stable {})", c.center, c.stable);
    }
}
