fn main() {
    std::process::exit(wmds::cli::main_entry());
}
