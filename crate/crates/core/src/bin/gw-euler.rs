fn main() {
    std::process::exit(gw_euler::cli::main_with_args(std::env::args_os()));
}
