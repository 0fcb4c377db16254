fn main() {
    std::process::exit(gjacobi::cli::run(std::env::args_os()));
}
