fn main() {
    std::process::exit(troplim::cli::main_with_args(std::env::args_os()));
}
