fn main() {
    std::process::exit(dsta::cli::main());
}
