fn main() {
    std::process::exit(domcert::cli::main_with_args(std::env::args_os()));
}
