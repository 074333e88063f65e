fn main() {
    std::process::exit(kleinian::cli::main_with_args(std::env::args_os()));
}
