fn main() {
    std::process::exit(reduction_rigidity::cli::run(std::env::args()));
}
