fn main() {
    std::process::exit(wakimoto::cli::main_with_args());
}
