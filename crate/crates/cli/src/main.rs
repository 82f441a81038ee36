use std::io::{self, BufWriter};

fn main() {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut err = io::stderr().lock();
    let code = kpf_cli::run(std::env::args_os(), &mut input, &mut out, &mut err);
    drop(out);
    std::process::exit(code);
}
