fn main() {
    std::process::exit(polymut::cli::run(std::env::args_os()));
}
