fn main() {
    std::process::exit(ccc_core::cli::run(std::env::args_os()));
}
