fn main() {
    std::process::exit(alexiewicz::cli::run(std::env::args_os()));
}
