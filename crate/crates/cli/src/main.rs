fn main() {
    std::process::exit(anisoflow_cli::run(std::env::args_os()));
}
