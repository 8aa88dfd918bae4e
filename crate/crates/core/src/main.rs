fn main() {
    std::process::exit(locale_lab::cli::main());
}
