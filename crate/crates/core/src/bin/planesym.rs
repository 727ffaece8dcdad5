fn main() {
    std::process::exit(planesym::cli::run(std::env::args_os()));
}
