fn main() {
    std::process::exit(nadosc_cli::run(std::env::args_os()));
}
