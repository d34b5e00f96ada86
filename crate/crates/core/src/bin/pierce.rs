fn main() {
    std::process::exit(pierce_esum::cli::main());
}
