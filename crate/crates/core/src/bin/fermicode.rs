fn main() {
    std::process::exit(fermicode::cli::main_with_args(std::env::args_os()));
}
