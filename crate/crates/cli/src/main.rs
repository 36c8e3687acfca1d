use clap::Parser;

fn main() {
    let cli = match isog7::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = isog7::run(cli) {
        eprintln!("isog7: {e}");
        std::process::exit(e.exit_code());
    }
}
