fn main() {
    std::process::exit(littlewood_zp::cli::dispatch(std::env::args_os()));
}
