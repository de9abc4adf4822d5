fn main() {
    let outcome = vekua::cli::run(std::env::args_os());
    std::process::exit(outcome.exit_code);
}
