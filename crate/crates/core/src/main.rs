fn main() {
    std::process::exit(schurrep::cli::run(std::env::args_os()));
}
