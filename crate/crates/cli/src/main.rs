fn main() {
    std::process::exit(terarad_cli::run(std::env::args_os()));
}
