fn main() {
    std::process::exit(tolink::cli::run(std::env::args_os()));
}
