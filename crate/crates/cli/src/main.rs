fn main() {
    std::process::exit(symq::run(std::env::args_os()));
}
