fn main() {
    std::process::exit(ck_tomo_cli::run(std::env::args_os()));
}
