fn main() -> std::process::ExitCode {
    ncgrass::cli::run()
}
