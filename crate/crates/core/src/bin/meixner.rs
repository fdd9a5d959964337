fn main() {
    std::process::exit(meixner::cli::main_with_args(std::env::args_os()));
}
