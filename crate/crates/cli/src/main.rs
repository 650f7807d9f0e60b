use std::io::{self, BufWriter, Write};

use clap::Parser;
use nzflow_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let code = run(cli, &mut input, &mut out, &mut io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
