fn main() {
    let (code, out) = quadprice::cli::run(std::env::args_os());
    if code == quadprice::cli::EXIT_INPUT {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
