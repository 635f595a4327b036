fn main() {
    std::process::exit(deltakit_cli::run(std::env::args_os()));
}
