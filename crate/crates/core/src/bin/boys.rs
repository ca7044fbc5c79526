fn main() {
    std::process::exit(boys_surface::cli::run(std::env::args_os()));
}
