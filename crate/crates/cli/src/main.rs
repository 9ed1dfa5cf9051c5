fn main() {
    std::process::exit(iet_cli::run(std::env::args_os()));
}
