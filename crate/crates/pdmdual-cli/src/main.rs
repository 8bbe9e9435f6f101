fn main() {
    std::process::exit(pdmdual_cli::run());
}
