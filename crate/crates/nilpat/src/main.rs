fn main() {
    // Die quietly when the read end of a pipeline closes early
    // (`nilpat ... | head`), instead of panicking on the flush.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(nilpat::cli::run());
}
