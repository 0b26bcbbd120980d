fn main() {
    std::process::exit(symloop::cli::run(std::env::args_os()));
}
