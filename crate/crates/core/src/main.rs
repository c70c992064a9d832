fn main() {
    std::process::exit(wsat::cli::run(std::env::args_os()));
}
