fn main() {
    std::process::exit(latpoly::cli::main())
}
