fn main() {
    std::process::exit(fsc::cli::run(std::env::args_os()));
}
