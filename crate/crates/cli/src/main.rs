fn main() {
    std::process::exit(sio_cli::run(std::env::args_os()));
}
