fn main() {
    std::process::exit(arcgeom::cli::dispatch(std::env::args_os()));
}
