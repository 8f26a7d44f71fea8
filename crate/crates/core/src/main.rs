fn main() {
    std::process::exit(loewy::cli::run());
}
