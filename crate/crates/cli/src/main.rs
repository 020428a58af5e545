fn main() {
    let out = indeco_cli::run(std::env::args_os());
    std::process::exit(out.emit());
}
