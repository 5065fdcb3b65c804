fn main() {
    std::process::exit(hochschild_cli::run());
}
