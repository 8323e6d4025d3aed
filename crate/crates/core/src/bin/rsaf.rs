fn main() {
    std::process::exit(rsaf_core::cli::main_with_args(std::env::args_os()));
}
