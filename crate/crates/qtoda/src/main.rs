fn main() {
    std::process::exit(qtoda::cli::run(std::env::args_os()));
}
