fn main() {
    std::process::exit(wielandt::cli::run());
}
