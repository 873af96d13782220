use clap::Parser;
use sawcantor::{run, Cli, Io};

fn main() {
    let cli = Cli::parse();
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let mut io = Io {
        out: &mut out,
        err: &mut err,
    };
    if let Err(f) = run(cli, &mut io) {
        let _ = std::io::Write::flush(io.out);
        eprintln!("error: {f}");
        std::process::exit(f.code());
    }
}
