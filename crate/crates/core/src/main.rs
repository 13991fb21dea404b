fn main() {
    std::process::exit(sl2cremona::cli::run());
}
