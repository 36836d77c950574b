fn main() {
    std::process::exit(sbe::cli::run_cli(std::env::args_os().skip(1)));
}
