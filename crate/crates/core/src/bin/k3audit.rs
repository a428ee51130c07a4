fn main() {
    std::process::exit(k3audit::cli::run(std::env::args_os()));
}
