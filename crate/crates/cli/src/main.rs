fn main() {
    std::process::exit(tirs_cli::run(std::env::args_os()));
}
