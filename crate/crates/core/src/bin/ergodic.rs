fn main() {
    std::process::exit(ergodic_cert::cli::run(std::env::args_os()));
}
