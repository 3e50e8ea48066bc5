fn main() {
    std::process::exit(qprojective::cli::main_with_args(std::env::args_os()));
}
