fn main() {
    std::process::exit(petty::cli::main_with_args(std::env::args_os()));
}
