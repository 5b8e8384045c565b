use std::io::Write;

fn main() {
    // worker-pool size for sweeps; rayon's default otherwise
    if let Ok(value) = std::env::var("DOMLAB_WORKERS") {
        if let Ok(n) = value.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let mut stdout = std::io::stdout();
    let code = domlab::cli::run(std::env::args_os(), &mut stdout);
    let _ = stdout.flush();
    std::process::exit(code);
}
