fn main() {
    std::process::exit(opeq::cli::run(std::env::args_os()));
}
