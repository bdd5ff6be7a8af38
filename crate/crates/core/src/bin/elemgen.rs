fn main() {
    std::process::exit(elemgen::cli::run(std::env::args_os()));
}
