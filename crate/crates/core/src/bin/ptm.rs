fn main() {
    std::process::exit(ptm_weights::cli::run(std::env::args_os()));
}
