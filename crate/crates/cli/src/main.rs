fn main() {
    std::process::exit(sasv_cli::run(std::env::args_os()));
}
