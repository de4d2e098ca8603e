fn main() {
    std::process::exit(tailbound::cli::main_with_args(std::env::args_os()));
}
