fn main() {
    std::process::exit(trilie::cli::main_with_args(std::env::args_os()));
}
