fn main() {
    std::process::exit(contralg::cli::run(std::env::args_os()));
}
