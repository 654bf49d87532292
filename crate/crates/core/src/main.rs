fn main() {
    std::process::exit(lehmerlab::cli::run(std::env::args_os()));
}
