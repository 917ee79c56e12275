fn main() {
    std::process::exit(rivulet::cli::run(std::env::args_os()));
}
