fn main() {
    std::process::exit(polycyclic::cli::main());
}
