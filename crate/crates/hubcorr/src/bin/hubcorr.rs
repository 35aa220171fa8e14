fn main() {
    std::process::exit(hubcorr::cli::main_entry());
}
