fn main() {
    std::process::exit(coxdeform::cli::main());
}
