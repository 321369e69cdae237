fn main() {
    std::process::exit(stringfaces::cli::run(std::env::args_os()));
}
