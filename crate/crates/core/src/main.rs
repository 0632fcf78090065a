fn main() {
    std::process::exit(floer_gamma::cli::run(std::env::args_os()));
}
