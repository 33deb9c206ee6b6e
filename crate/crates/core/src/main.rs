fn main() {
    env_logger::init();
    std::process::exit(stabforge::cli::run(std::env::args_os()));
}
