fn main() {
    std::process::exit(deformd::run(std::env::args_os()));
}
