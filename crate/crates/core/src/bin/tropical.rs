fn main() {
    std::process::exit(tropical_core::cli::main_entry(std::env::args_os()));
}
