//! Driving the command line front end in process.

use trilie::cli::main_with_args;

fn main() {
    for args in [
        vec!["trilie", "list"],
        vec!["trilie", "verify", "fundamental-identity", "--bracket", "omega", "--window", "-2..2", "--samples", "10"],
        vec!["trilie", "analyze", "derived-series", "--bracket", "fk", "--window", "-2..2", "--format", "json"],
    ] {
        println!("$ {}", args.join(" "));
        let code = main_with_args(args);
        println!("exit {code}");
    }
}
