fn main() {
    std::process::exit(ecbasis::cli::main_with_args(std::env::args_os()));
}
