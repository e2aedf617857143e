fn main() {
    std::process::exit(capwave::cli::main_with(std::env::args_os()));
}
