fn main() {
    std::process::exit(carter::cli::run(std::env::args_os()));
}
