fn main() {
    std::process::exit(wrt_limits::cli::main_with_args(std::env::args_os()));
}
