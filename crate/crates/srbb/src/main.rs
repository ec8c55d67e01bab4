fn main() {
    std::process::exit(srbb::cli::run_from_args(std::env::args_os()));
}
