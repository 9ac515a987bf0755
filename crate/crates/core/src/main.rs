fn main() {
    std::process::exit(irs_radar::cli::run(std::env::args_os()));
}
