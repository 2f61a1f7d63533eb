fn main() {
    std::process::exit(nanoinv::cli::run(std::env::args()));
}
