fn main() {
    std::process::exit(brjuno_cli::run(std::env::args_os()));
}
