fn main() {
    std::process::exit(triangular::cli::run_from(std::env::args_os()));
}
