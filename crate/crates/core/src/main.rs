fn main() {
    std::process::exit(heisenspec::cli::run(std::env::args_os()));
}
