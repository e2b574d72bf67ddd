fn main() {
    std::process::exit(persort::cli::run(std::env::args_os()));
}
