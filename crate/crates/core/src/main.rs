fn main() {
    std::process::exit(dimer_entanglement::cli::run(std::env::args_os()));
}
