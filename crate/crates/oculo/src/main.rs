fn main() {
    std::process::exit(oculo::cli::run(std::env::args_os()));
}
