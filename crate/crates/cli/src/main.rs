fn main() {
    std::process::exit(symvqc_cli::run());
}
