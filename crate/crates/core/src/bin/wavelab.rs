fn main() {
    std::process::exit(wavelab::cli::run(std::env::args_os()));
}
