fn main() {
    std::process::exit(distcat::cli::main());
}
