fn main() {
    let code = paq::cli::run(std::env::args_os());
    std::process::exit(code);
}
