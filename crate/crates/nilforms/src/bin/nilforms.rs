fn main() {
    std::process::exit(nilforms::cli::run(std::env::args().skip(1)));
}
