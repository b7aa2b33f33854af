fn main() {
    std::process::exit(exotic_walks::cli::run(std::env::args_os()));
}
