fn main() {
    std::process::exit(twistlab_cli::main_with_args(std::env::args_os()));
}
