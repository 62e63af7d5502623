fn main() {
    std::process::exit(weilsplit::cli::run());
}
