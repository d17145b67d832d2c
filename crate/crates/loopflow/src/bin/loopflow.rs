fn main() {
    std::process::exit(loopflow::cli::run());
}
