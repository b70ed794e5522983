use std::io::{self, BufReader};

fn main() {
    let mut stdin = BufReader::new(io::stdin());
    let code = storyuml_cli::run(std::env::args_os(), &mut stdin, &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
