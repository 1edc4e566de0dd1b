fn main() {
    std::process::exit(gcat_duality::cli::main());
}
