use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("MACFOCK_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool already built");
        }
    }
    let out = macfock::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
