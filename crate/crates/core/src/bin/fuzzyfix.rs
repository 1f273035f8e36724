fn main() {
    std::process::exit(fuzzy_fixpoint::cli::main_with_args(std::env::args_os()));
}
