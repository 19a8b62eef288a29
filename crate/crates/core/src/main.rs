fn main() {
    std::process::exit(ftmcfe::cli::run(std::env::args_os()));
}
