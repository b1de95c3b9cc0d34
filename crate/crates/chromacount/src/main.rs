fn main() {
    std::process::exit(chromacount::cli::run());
}
