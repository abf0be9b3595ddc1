fn main() {
    std::process::exit(qtangle::cli::run(std::env::args_os()));
}
