fn main() {
    std::process::exit(elicit::cli::run());
}
